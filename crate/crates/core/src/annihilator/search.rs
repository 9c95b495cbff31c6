use std::collections::BTreeMap;

use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};
use crate::tower::{Derivation, Elem, Tower};

use super::ops::PPoly;

/// Largest total `size_hint` of an iterate `D^(p^j)(y)` (or of the images
/// defining `D^(p^j)`) before the search gives up with `BoundExceeded`.
pub const SIZE_BUDGET: usize = 20_000;

/// Largest operator order verified by naive iterated derivation; higher
/// orders are verified through the composed derivations `D^(p^j)`.
pub const NAIVE_ORDER_LIMIT: u64 = 81;

/// Default `j_max`: number of generators plus three.
pub fn default_j_max(t: &Tower) -> u32 {
    t.len() as u32 + 3
}

fn theoretical_bound(t: &Tower) -> u64 {
    (t.p() as u64).saturating_pow(t.len() as u32)
}

/// Lazily built derivations `D^(p^j)`, each obtained as the `p`-th power of
/// the previous one.
pub struct PowerDerivations<'a> {
    t: &'a Tower,
    ds: Vec<Derivation>,
    j_max: u32,
}

impl<'a> PowerDerivations<'a> {
    pub fn new(t: &'a Tower, j_max: u32) -> Self {
        PowerDerivations { t, ds: vec![t.derivation().clone()], j_max }
    }

    pub fn get(&mut self, j: u32) -> Result<&Derivation> {
        while self.ds.len() <= j as usize {
            let Some(next) = self.ds.last().unwrap().pth_power_within(SIZE_BUDGET) else {
                return Err(self.exceeded());
            };
            self.ds.push(next);
        }
        Ok(&self.ds[j as usize])
    }

    /// `D^n(y)` through the base-`p` digits of `n`: at most `p - 1`
    /// applications of each `D^(p^j)`.
    pub fn apply_n(&mut self, y: &Elem, mut n: u64) -> Result<Elem> {
        let p = self.t.p() as u64;
        let mut acc = y.clone();
        let mut j = 0;
        while n > 0 && !acc.is_zero() {
            for _ in 0..n % p {
                acc = self.get(j)?.apply(&acc);
                self.check(&acc)?;
            }
            n /= p;
            j += 1;
        }
        Ok(acc)
    }

    /// `BoundExceeded` when `e` is over [`SIZE_BUDGET`].
    pub fn check(&self, e: &Elem) -> Result<()> {
        if e.size_hint() > SIZE_BUDGET {
            return Err(self.exceeded());
        }
        Ok(())
    }

    fn exceeded(&self) -> Error {
        Error::BoundExceeded { j_max: self.j_max, bound: theoretical_bound(self.t) }
    }
}

/// First `K^p`-linear dependence among the columns; each column holds one
/// value per element of the family. Rows are the Frobenius coordinates of
/// every entry, so a kernel vector `b` over `K` yields constants `b^p`.
fn dependence(t: &Tower, columns: &[Vec<Elem>]) -> Option<Vec<Elem>> {
    let mut rows: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            for (m, g) in t.frobenius_decompose(v).terms {
                let n = rows.len();
                let r = *rows.entry((i, m)).or_insert(n);
                entries.push((r, c, g));
            }
        }
    }
    let mut m = Matrix::zeros(rows.len(), columns.len(), &t.one());
    for (r, c, g) in entries {
        m.set(r, c, g);
    }
    let b = m.kernel().into_iter().next()?;
    let last = b.last().unwrap().inv()?;
    Some(b.iter().map(|x| x.mul(&last).pow(t.p() as u64)).collect())
}

/// Search shared by all annihilator entry points: columns are `y` itself
/// (when `with_identity`) followed by `D^(p^j)(y)` for `j = 0, 1, ...`.
fn search(t: &Tower, ys: &[Elem], j_max: u32, with_identity: bool) -> Result<PPoly> {
    if j_max < 1 {
        return Err(Error::PreconditionViolated("j_max must be at least 1".into()));
    }
    if ys.iter().all(|y| y.is_zero()) {
        return if with_identity {
            PPoly::new(t.p(), t.one(), vec![])
        } else {
            PPoly::new(t.p(), t.zero(), vec![(0, t.one())])
        };
    }
    let mut pd = PowerDerivations::new(t, j_max);
    let mut columns: Vec<Vec<Elem>> = Vec::new();
    if with_identity {
        columns.push(ys.to_vec());
    }
    for j in 0..=j_max {
        let d = pd.get(j)?;
        let col: Vec<Elem> = ys.iter().map(|y| d.apply(y)).collect();
        if col.iter().map(|e| e.size_hint()).sum::<usize>() > SIZE_BUDGET {
            return Err(pd.exceeded());
        }
        columns.push(col);
        if let Some(c) = dependence(t, &columns) {
            let (identity, rest) = if with_identity { (c[0].clone(), &c[1..]) } else { (t.zero(), &c[..]) };
            let terms = rest.iter().enumerate().map(|(j, a)| (j as u32, a.clone())).collect();
            let op = PPoly::new(t.p(), identity, terms)?;
            verify(t, ys, &op, &mut pd)?;
            return Ok(op);
        }
    }
    Err(pd.exceeded())
}

/// Checks `P(D)(y) = 0` for every `y` and that all coefficients are constants.
fn verify(t: &Tower, ys: &[Elem], op: &PPoly, pd: &mut PowerDerivations) -> Result<()> {
    let cop = op.to_const_op();
    if !cop.has_constant_coeffs(t) {
        return Err(Error::Internal("annihilator with non-constant coefficient".into()));
    }
    for y in ys {
        let value = if cop.order() <= NAIVE_ORDER_LIMIT {
            cop.apply(t, y)
        } else {
            let mut acc = op.identity_coeff() * y;
            for (j, c) in op.terms() {
                acc = &acc + &(c * &pd.get(*j)?.apply(y));
            }
            acc
        };
        if !value.is_zero() {
            return Err(Error::VerificationFailed("annihilator does not vanish".into()));
        }
    }
    Ok(())
}

/// `P = c T^0 + sum a_j T^(p^j)` with constant coefficients and
/// `P(D)(y) = 0`, of minimal p-power order.
pub fn p_annihilator(t: &Tower, y: &Elem, j_max: u32) -> Result<PPoly> {
    search(t, std::slice::from_ref(y), j_max, true)
}

/// One operator annihilating every element of `ys`, from the stacked
/// dependence system.
pub fn joint_annihilator(t: &Tower, ys: &[Elem], j_max: u32) -> Result<PPoly> {
    search(t, ys, j_max, true)
}

/// Like [`joint_annihilator`] but without identity term, so `P(D)` is a
/// derivation commuting with `D` that vanishes on every element of `ys`.
pub fn derivation_annihilator(t: &Tower, ys: &[Elem], j_max: u32) -> Result<PPoly> {
    search(t, ys, j_max, false)
}

/// `A_r = sum_{i=0}^r (D^(p^i) u)^(p^(r-i))`, so that `D^(p^r) E = A_r E`
/// for a generator `E` with `DE = Du E`.
pub fn carlitz_coefficient(t: &Tower, u: &Elem, r: u32) -> Elem {
    let p = t.p() as u64;
    let mut d = t.derivation().clone();
    let mut acc = t.zero();
    for i in 0..=r {
        if i > 0 {
            d = d.pth_power();
        }
        acc = &acc + &d.apply(u).pow(p.pow(r - i));
    }
    acc
}

use std::collections::BTreeMap;

use crate::algebra::{Field, Poly};

use super::Elem;

/// `e = sum_m g_m^p * t^m` over multi-exponents `m` in `{0..p-1}^k`.
///
/// Every `g_m^p` is a constant, so the preimages `g_m` are the coordinates of
/// `e` over the subfield `K^p`, taken through the inverse Frobenius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobDecomp {
    pub terms: Vec<(Vec<u32>, Elem)>,
    p: u32,
}

impl FrobDecomp {
    pub(crate) fn of(e: &Elem, k: usize, p: u32) -> Self {
        let terms = decompose(e, k, p).into_iter().collect();
        FrobDecomp { terms, p }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Preimage for a given multi-exponent, if present.
    pub fn coordinate(&self, exps: &[u32]) -> Option<&Elem> {
        self.terms.iter().find(|(m, _)| m.as_slice() == exps).map(|(_, g)| g)
    }

    /// `sum g_m^p t^m`.
    pub fn reconstruct(&self) -> Elem {
        let p = self.p;
        let mut acc = Elem::zero(p);
        for (m, g) in &self.terms {
            let mut term = g.pow(p as u64);
            for (v, &k) in m.iter().enumerate() {
                if k > 0 {
                    term = &term * &Elem::generator(v, p).pow(k as u64);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// The `p`-th root, present only when the single exponent is zero.
    pub fn pth_root(&self) -> Option<Elem> {
        match self.terms.as_slice() {
            [] => Some(Elem::zero(self.p)),
            [(m, g)] if m.iter().all(|&k| k == 0) => Some(g.clone()),
            _ => None,
        }
    }
}

/// Level-by-level split: for `e = N/Q` in `t_v`, write `e = N Q^(p-1) / Q^p`,
/// split the numerator's `t_v`-exponents by residue mod `p`, and recurse into
/// its coefficients.
fn decompose(e: &Elem, k: usize, p: u32) -> BTreeMap<Vec<u32>, Elem> {
    let mut out = BTreeMap::new();
    let Some(level) = e.level() else {
        if !e.is_zero() {
            out.insert(vec![0; k], e.clone());
        }
        return out;
    };
    let v = level.var();
    let f = level.ratfunc();
    let num = if f.den().is_one() { f.num().clone() } else { f.num().mul(&f.den().pow(p as u64 - 1)) };
    let mut buckets: BTreeMap<Vec<u32>, Vec<Elem>> = BTreeMap::new();
    for (i, c) in num.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let r = (i % p as usize) as u32;
        let q = i / p as usize;
        for (mut m, g) in decompose(c, k, p) {
            m[v] = r;
            let slot = buckets.entry(m).or_default();
            if slot.len() <= q {
                slot.resize(q + 1, Elem::zero(p));
            }
            slot[q] = &slot[q] + &g;
        }
    }
    let den = Elem::from_poly(v, f.den().clone(), p);
    for (m, coeffs) in buckets {
        let g = Elem::from_poly(v, Poly::new(coeffs), p);
        let g = if den.is_one() { g } else { g.checked_div(&den).unwrap() };
        if !g.is_zero() {
            out.insert(m, g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use crate::algebra::Field;
    use crate::tower::{GenKind, Tower};

    #[test]
    fn inverse_of_x_plus_one() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let e = (&x + &t.one()).inv().unwrap();
        let d = t.frobenius_decompose(&e);
        assert_eq!(d.terms.len(), 3);
        assert_eq!(d.coordinate(&[0]), Some(&e));
        assert_eq!(d.coordinate(&[1]), Some(&(&t.scalar(2) * &e)));
        assert_eq!(d.coordinate(&[2]), Some(&e));
        assert_eq!(d.reconstruct(), e);
    }

    #[test]
    fn monomials() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let d = t.frobenius_decompose(&x.pow(3));
        assert_eq!(d.terms, vec![(vec![0], x.clone())]);
        let d = t.frobenius_decompose(&x);
        assert_eq!(d.terms, vec![(vec![1], t.one())]);
        assert!(t.frobenius_decompose(&t.zero()).is_empty());
    }

    #[test]
    fn pth_roots() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        assert_eq!(t.pth_root(&(&x.pow(3) + &t.one())), Some(&x + &t.one()));
        assert_eq!(t.pth_root(&x), None);
        assert_eq!(t.pth_root(&t.scalar(2)), Some(t.scalar(2)));
        let t = t.extend("E", GenKind::HyperExp(x.clone())).unwrap();
        let e = t.gen("E").unwrap();
        let a = &(&x + &e).checked_div(&(&e.pow(2) + &x)).unwrap() * &t.scalar(2);
        assert_eq!(t.pth_root(&a.pow(3)), Some(a));
    }
}

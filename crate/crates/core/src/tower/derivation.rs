use crate::algebra::{Field, Poly};

use super::Elem;

/// A derivation of a tower field, determined by its values on the generators.
///
/// Because every tower is purely transcendental over `F_p`, any choice of
/// images extends uniquely to a derivation; it is applied level by level with
/// `D(Q(t)) = D(t) Q'(t) + Q^D(t)` and the quotient rule.
#[derive(Clone, Debug)]
pub struct Derivation {
    p: u32,
    images: Vec<Elem>,
}

impl Derivation {
    pub fn new(p: u32, images: Vec<Elem>) -> Self {
        Derivation { p, images }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        let Some(level) = e.level() else {
            return Elem::zero(self.p);
        };
        let v = level.var();
        let f = level.ratfunc();
        let dn = self.apply_poly(v, f.num());
        if f.den().is_one() {
            return dn;
        }
        let dd = self.apply_poly(v, f.den());
        let den = Elem::from_poly(v, f.den().clone(), self.p);
        let top = &dn - &(e * &dd);
        top.checked_div(&den).expect("denominator is nonzero")
    }

    /// `D(Q(t_v)) = D(t_v) Q'(t_v) + Q^D(t_v)`.
    fn apply_poly(&self, v: usize, q: &Poly<Elem>) -> Elem {
        let dcoeffs: Vec<Elem> = q.coeffs().iter().map(|c| self.apply(c)).collect();
        let coeff_part = if dcoeffs.iter().all(|c| c.var().is_none_or(|w| w < v)) {
            Elem::from_poly(v, Poly::new(dcoeffs), self.p)
        } else {
            let t = Elem::generator(v, self.p);
            let mut acc = Elem::zero(self.p);
            for c in dcoeffs.iter().rev() {
                acc = &(&acc * &t) + c;
            }
            acc
        };
        let img = &self.images[v];
        if img.is_zero() {
            return coeff_part;
        }
        let dq = q.derivative();
        if dq.is_zero() {
            return coeff_part;
        }
        let chain = &Elem::from_poly(v, dq, self.p) * img;
        &coeff_part + &chain
    }

    /// `D^n(e)` by repeated application.
    pub fn apply_n(&self, e: &Elem, n: u64) -> Elem {
        let mut x = e.clone();
        for _ in 0..n {
            if x.is_zero() {
                break;
            }
            x = self.apply(&x);
        }
        x
    }

    /// `D^p`, again a derivation in characteristic `p`; its images are `D^p(t_i)`.
    pub fn pth_power(&self) -> Derivation {
        self.pth_power_within(usize::MAX).unwrap()
    }

    /// [`Self::pth_power`], giving up once an intermediate derivative has
    /// `size_hint` above `budget`.
    pub fn pth_power_within(&self, budget: usize) -> Option<Derivation> {
        let mut images = Vec::with_capacity(self.images.len());
        for i in 0..self.images.len() {
            let mut x = Elem::generator(i, self.p);
            for _ in 0..self.p {
                if x.is_zero() {
                    break;
                }
                x = self.apply(&x);
                if x.size_hint() > budget {
                    return None;
                }
            }
            images.push(x);
        }
        Some(Derivation { p: self.p, images })
    }
}

/// The memoized sequence `e, De, D^2 e, ...`.
#[derive(Clone, Debug)]
pub struct DerivSeq<'a> {
    d: &'a Derivation,
    seq: Vec<Elem>,
}

impl<'a> DerivSeq<'a> {
    pub fn new(d: &'a Derivation, e: Elem) -> Self {
        DerivSeq { d, seq: vec![e] }
    }

    pub fn get(&mut self, n: usize) -> &Elem {
        while self.seq.len() <= n {
            let last = self.seq.last().unwrap();
            let next = if last.is_zero() { last.clone() } else { self.d.apply(last) };
            self.seq.push(next);
        }
        &self.seq[n]
    }

    /// Number of terms computed so far.
    pub fn computed(&self) -> usize {
        self.seq.len()
    }
}

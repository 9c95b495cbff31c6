use crate::algebra::{Field, Poly};
use crate::error::{Error, Result};
use crate::tower::{Elem, Tower};

/// A factor of the modulus found while inverting: the computation must be
/// split into the branches `g` and `modulus / g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisor(pub Poly<Elem>);

/// Arithmetic modulo `modulus(alpha)` for a constant generator `alpha`
/// (`D alpha = 0`) of `tower`.
///
/// The modulus has constant coefficients from below `alpha` and is
/// squarefree, so the quotient is a product of fields; an element found to
/// be a zero divisor splits the modulus.
#[derive(Clone, Debug)]
pub struct QuotientCtx {
    pub tower: Tower,
    pub alpha: usize,
    pub modulus: Poly<Elem>,
}

impl QuotientCtx {
    pub fn new(tower: Tower, alpha: usize, modulus: Poly<Elem>) -> Result<Self> {
        if modulus.degree().is_none_or(|d| d == 0) {
            return Err(Error::PreconditionViolated("modulus must have positive degree".into()));
        }
        if modulus.coeffs().iter().any(|c| c.var().is_some_and(|v| v >= alpha)) {
            return Err(Error::PreconditionViolated("modulus must not involve alpha".into()));
        }
        if !tower.is_constant(&tower.generator(alpha)) {
            return Err(Error::PreconditionViolated("alpha must be a constant".into()));
        }
        Ok(QuotientCtx { tower, alpha, modulus: modulus.monic() })
    }

    pub fn alpha_elem(&self) -> Elem {
        self.tower.generator(self.alpha)
    }

    /// Canonical residue of `e`, a polynomial in `alpha` of degree below
    /// that of the modulus. `e` must not involve generators above `alpha`.
    pub fn reduce(&self, e: &Elem) -> std::result::Result<Elem, ZeroDivisor> {
        assert!(e.var().is_none_or(|v| v <= self.alpha), "element above alpha");
        let f = e.as_ratfunc_in(self.alpha);
        let num = f.num().rem(&self.modulus).unwrap();
        let inv = if f.den().is_unit() {
            Poly::constant(f.den().coeffs()[0].inv().unwrap())
        } else {
            let (g, s, _) = f.den().ext_gcd(&self.modulus).unwrap();
            if !g.is_unit() {
                return Err(ZeroDivisor(g));
            }
            s
        };
        let r = num.mul(&inv).rem(&self.modulus).unwrap();
        Ok(Elem::from_poly(self.alpha, r, self.tower.p()))
    }

    /// Whether `e / by` vanishes in the quotient, for `by` invertible in
    /// the tower and `e / by` not involving generators above `alpha`.
    pub fn vanishes_relative(&self, e: &Elem, by: &Elem) -> std::result::Result<bool, ZeroDivisor> {
        let ratio = e.checked_div(by).expect("nonzero divisor");
        Ok(self.reduce(&ratio)?.is_zero())
    }

    /// The two branches `g` and `modulus / g` for a proper factor `g`.
    pub fn split(&self, g: &Poly<Elem>) -> (QuotientCtx, QuotientCtx) {
        let g = g.monic();
        let h = self.modulus.div_exact(&g).expect("factor of the modulus");
        let branch = |m: Poly<Elem>| QuotientCtx { tower: self.tower.clone(), alpha: self.alpha, modulus: m };
        (branch(g), branch(h.monic()))
    }
}

use std::collections::BTreeMap;

use crate::algebra::{Field, Poly};
use crate::error::{Error, Result};
use crate::tower::{Elem, Tower};

/// A linear differential operator `sum c_i D^i` with constant coefficients,
/// stored sparsely by order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstOp {
    p: u32,
    terms: Vec<(u64, Elem)>,
}

impl ConstOp {
    /// Collects `(order, coeff)` pairs; repeated orders are summed and zero
    /// coefficients dropped. Fails on the zero operator.
    pub fn new(p: u32, terms: impl IntoIterator<Item = (u64, Elem)>) -> Result<Self> {
        let mut acc: BTreeMap<u64, Elem> = BTreeMap::new();
        for (i, c) in terms {
            let slot = acc.entry(i).or_insert_with(|| Elem::zero(p));
            *slot = &*slot + &c;
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::PreconditionViolated("the zero operator".into()));
        }
        Ok(ConstOp { p, terms })
    }

    /// The operator with the same coefficients as the polynomial `q(T)`.
    pub fn from_poly(p: u32, q: &Poly<Elem>) -> Result<Self> {
        ConstOp::new(p, q.coeffs().iter().enumerate().map(|(i, c)| (i as u64, c.clone())))
    }

    pub fn terms(&self) -> &[(u64, Elem)] {
        &self.terms
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.terms.last().unwrap().0
    }

    pub fn coeff(&self, order: u64) -> Elem {
        self.terms
            .iter()
            .find(|(i, _)| *i == order)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| Elem::zero(self.p))
    }

    /// Dense polynomial `sum c_i T^i`.
    pub fn to_poly(&self) -> Poly<Elem> {
        let mut cs = vec![Elem::zero(self.p); self.order() as usize + 1];
        for (i, c) in &self.terms {
            cs[*i as usize] = c.clone();
        }
        Poly::new(cs)
    }

    pub fn has_constant_coeffs(&self, t: &Tower) -> bool {
        self.terms.iter().all(|(_, c)| t.is_constant(c))
    }

    /// `sum c_i D^i(y)` by naive iterated derivation.
    pub fn apply(&self, t: &Tower, y: &Elem) -> Elem {
        let mut seq = t.seq(y);
        let mut acc = t.zero();
        for (i, c) in &self.terms {
            let d = seq.get(*i as usize);
            if !d.is_zero() {
                acc = &acc + &(c * d);
            }
        }
        acc
    }

    /// `q(self)`; with constant coefficients this is again the operator
    /// of the composed polynomial `q(P(T))`.
    pub fn substitute_into(&self, q: &Poly<Elem>) -> Result<ConstOp> {
        let mut acc: BTreeMap<u64, Elem> = BTreeMap::new();
        let mut power: BTreeMap<u64, Elem> = BTreeMap::from([(0, Elem::one(self.p))]);
        for (k, qk) in q.coeffs().iter().enumerate() {
            if k > 0 {
                power = sparse_mul(&power, &self.terms);
            }
            if qk.is_zero() {
                continue;
            }
            for (i, c) in &power {
                let slot = acc.entry(*i).or_insert_with(|| Elem::zero(self.p));
                *slot = &*slot + &(qk * c);
            }
        }
        ConstOp::new(self.p, acc)
    }
}

fn sparse_mul(a: &BTreeMap<u64, Elem>, b: &[(u64, Elem)]) -> BTreeMap<u64, Elem> {
    let mut out: BTreeMap<u64, Elem> = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            let slot = out.entry(i + j).or_insert_with(|| x.zero_like());
            *slot = &*slot + &(x * y);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `c * T^0 + sum_j a_j T^(p^j)` with constant coefficients.
///
/// Applied to `D`, the part without `c` is again a derivation commuting with
/// `D`. The identity term is allowed so that relations such as
/// `D^3 E = 2X^3 E` can be expressed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly {
    p: u32,
    identity: Elem,
    terms: Vec<(u32, Elem)>,
}

impl PPoly {
    /// `terms` are `(j, a_j)` with distinct `j`; zero coefficients are dropped.
    pub fn new(p: u32, identity: Elem, terms: Vec<(u32, Elem)>) -> Result<Self> {
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(j, _)| *j);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::PreconditionViolated("repeated p-power exponent".into()));
        }
        if identity.is_zero() && terms.is_empty() {
            return Err(Error::PreconditionViolated("the zero operator".into()));
        }
        Ok(PPoly { p, identity, terms })
    }

    /// Coefficient of `T^0`, possibly zero.
    pub fn identity_coeff(&self) -> &Elem {
        &self.identity
    }

    /// `(j, a_j)` for the terms `a_j T^(p^j)`, ascending in `j`.
    pub fn terms(&self) -> &[(u32, Elem)] {
        &self.terms
    }

    /// Whether there is no identity term, so the operator is a derivation.
    pub fn is_additive(&self) -> bool {
        self.identity.is_zero()
    }

    pub fn to_const_op(&self) -> ConstOp {
        let p = self.p as u64;
        let terms = std::iter::once((0, self.identity.clone()))
            .chain(self.terms.iter().map(|(j, c)| (p.pow(*j), c.clone())));
        ConstOp::new(self.p, terms).expect("nonzero by construction")
    }

    pub fn order(&self) -> u64 {
        self.to_const_op().order()
    }
}

/// A linear differential operator `sum a_i D^i` with coefficients in the
/// tower; dense by order, trailing zeros trimmed. The zero operator has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewOp {
    p: u32,
    coeffs: Vec<Elem>,
}

impl SkewOp {
    pub fn new(p: u32, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewOp { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        SkewOp { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        SkewOp { p, coeffs: vec![Elem::one(p)] }
    }

    /// `c D^n`.
    pub fn monomial(c: Elem, n: usize) -> Self {
        let p = c.characteristic();
        let mut coeffs = vec![Elem::zero(p); n];
        coeffs.push(c);
        SkewOp::new(p, coeffs)
    }

    pub fn from_const(op: &ConstOp) -> Self {
        SkewOp::new(op.p, op.to_poly().into_coeffs())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Elem::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order, `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &SkewOp) -> SkewOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SkewOp::new(self.p, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &SkewOp) -> SkewOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SkewOp::new(self.p, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }

    /// `sum a_i D^i(y)` by naive iterated derivation.
    pub fn apply(&self, t: &Tower, y: &Elem) -> Elem {
        let mut seq = t.seq(y);
        let mut acc = t.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = seq.get(i);
            if !d.is_zero() {
                acc = &acc + &(c * d);
            }
        }
        acc
    }

    pub fn has_constant_coeffs(&self, t: &Tower) -> bool {
        self.coeffs.iter().all(|c| t.is_constant(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_of_p_polynomials() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let p = PPoly::new(3, t.zero(), vec![(1, t.one())]).unwrap();
        let op = p.to_const_op();
        assert_eq!(op.terms(), &[(3, t.one())]);
        // Q(T) = T^2 - X^3 - 1 composed with T^3
        let c = &(&x.pow(3) + &t.one()).neg();
        let q = Poly::new(vec![c.clone(), t.zero(), t.one()]);
        let r = op.substitute_into(&q).unwrap();
        assert_eq!(r.terms(), &[(0, c.clone()), (6, t.one())]);
        assert!(r.has_constant_coeffs(&t));
    }

    #[test]
    fn zero_operators_are_rejected() {
        assert!(ConstOp::new(3, vec![(2, Elem::zero(3))]).is_err());
        assert!(PPoly::new(3, Elem::zero(3), vec![]).is_err());
        assert!(SkewOp::new(3, vec![Elem::zero(3)]).is_zero());
    }

    #[test]
    fn apply_matches_direct_derivation() {
        let t = Tower::rational(5, "X").unwrap();
        let x = t.gen("X").unwrap();
        let y = x.pow(7);
        let op = SkewOp::new(5, vec![x.clone(), t.zero(), t.one()]);
        let expected = &(&x * &y) + &t.derive_n(&y, 2);
        assert_eq!(op.apply(&t, &y), expected);
    }
}

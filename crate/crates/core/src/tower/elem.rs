use std::fmt;
use std::sync::Arc;

use crate::algebra::{Field, Fp, Poly, RatFunc};

/// An element of a tower field `F_p(t_0)(t_1)...(t_{k-1})`.
///
/// Recursive dense representation: a non-scalar element is a reduced rational
/// function in its top generator `t_var` whose coefficients only involve
/// generators below `var`. An element that does not depend on its top
/// generator is always collapsed to the coefficient, so the representation
/// is canonical and derived equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Scalar(Fp),
    Rat(Arc<Level>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Level {
    var: usize,
    f: RatFunc<Elem>,
}

impl Level {
    pub fn var(&self) -> usize {
        self.var
    }

    pub fn ratfunc(&self) -> &RatFunc<Elem> {
        &self.f
    }
}

impl Elem {
    pub fn scalar(v: i64, p: u32) -> Self {
        Elem::Scalar(Fp::new(v, p))
    }

    pub fn zero(p: u32) -> Self {
        Elem::Scalar(Fp::zero(p))
    }

    pub fn one(p: u32) -> Self {
        Elem::Scalar(Fp::one(p))
    }

    /// The generator `t_var` itself.
    pub fn generator(var: usize, p: u32) -> Self {
        let one = Elem::one(p);
        let num = Poly::new(vec![Elem::zero(p), one.clone()]);
        Elem::Rat(Arc::new(Level { var, f: RatFunc::from_poly(num, &one) }))
    }

    /// Canonical element from a rational function in `t_var` whose
    /// coefficients live strictly below `var`.
    pub fn from_ratfunc(var: usize, f: RatFunc<Elem>) -> Self {
        if f.den().is_unit() && f.num().degree().unwrap_or(0) == 0 {
            return match f.num().coeffs().first() {
                Some(c) => c.clone(),
                None => f.den().coeffs()[0].zero_like(),
            };
        }
        Elem::Rat(Arc::new(Level { var, f }))
    }

    /// Canonical element from a polynomial in `t_var`; `p` is only used for zero.
    pub fn from_poly(var: usize, num: Poly<Elem>, p: u32) -> Self {
        let one = Elem::one(p);
        Elem::from_ratfunc(var, RatFunc::from_poly(num, &one))
    }

    /// Top generator index, `None` for scalars.
    pub fn var(&self) -> Option<usize> {
        match self {
            Elem::Scalar(_) => None,
            Elem::Rat(l) => Some(l.var),
        }
    }

    pub fn level(&self) -> Option<&Level> {
        match self {
            Elem::Scalar(_) => None,
            Elem::Rat(l) => Some(l),
        }
    }

    pub fn as_scalar(&self) -> Option<Fp> {
        match self {
            Elem::Scalar(c) => Some(*c),
            Elem::Rat(_) => None,
        }
    }

    /// View as a rational function in `t_v`; requires `var() <= Some(v)`.
    pub fn as_ratfunc_in(&self, v: usize) -> RatFunc<Elem> {
        match self {
            Elem::Rat(l) if l.var == v => l.f.clone(),
            _ => {
                debug_assert!(self.var().is_none_or(|w| w < v));
                RatFunc::constant(self.clone())
            }
        }
    }

    /// Whether `t_v` occurs anywhere in the element.
    pub fn depends_on(&self, v: usize) -> bool {
        match self {
            Elem::Scalar(_) => false,
            Elem::Rat(l) => {
                l.var == v
                    || (l.var > v
                        && l.f.num().coeffs().iter().chain(l.f.den().coeffs()).any(|c| c.depends_on(v)))
            }
        }
    }

    /// Numerator and denominator as elements (denominator monic in the top generator).
    pub fn num_den(&self) -> (Elem, Elem) {
        match self {
            Elem::Scalar(_) => (self.clone(), self.one_like()),
            Elem::Rat(l) => {
                let p = self.characteristic();
                (Elem::from_poly(l.var, l.f.num().clone(), p), Elem::from_poly(l.var, l.f.den().clone(), p))
            }
        }
    }

    fn binary(
        &self,
        rhs: &Elem,
        scalar: impl Fn(&Fp, &Fp) -> Fp,
        rat: impl Fn(&RatFunc<Elem>, &RatFunc<Elem>) -> RatFunc<Elem>,
    ) -> Elem {
        match (self, rhs) {
            (Elem::Scalar(a), Elem::Scalar(b)) => Elem::Scalar(scalar(a, b)),
            _ => {
                let v = self.var().max(rhs.var()).unwrap();
                let f = rat(&self.as_ratfunc_in(v), &rhs.as_ratfunc_in(v));
                Elem::from_ratfunc(v, f)
            }
        }
    }

    pub fn checked_div(&self, rhs: &Elem) -> Option<Elem> {
        Field::div(self, rhs)
    }
}

impl Field for Elem {
    fn zero_like(&self) -> Self {
        Elem::zero(self.characteristic())
    }

    fn one_like(&self) -> Self {
        Elem::one(self.characteristic())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Elem::Scalar(c) if c.is_zero())
    }

    fn is_one(&self) -> bool {
        matches!(self, Elem::Scalar(c) if c.is_one())
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        self.binary(rhs, |a, b| a.add(b), |a, b| a.add_rf(b))
    }

    fn sub(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        self.binary(rhs, |a, b| a.sub(b), |a, b| a.sub_rf(b))
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_one() {
            return self.clone();
        }
        if rhs.is_zero() || self.is_one() {
            return rhs.clone();
        }
        self.binary(rhs, |a, b| a.mul(b), |a, b| a.mul_rf(b))
    }

    fn neg(&self) -> Self {
        match self {
            Elem::Scalar(c) => Elem::Scalar(c.neg()),
            Elem::Rat(l) => Elem::Rat(Arc::new(Level { var: l.var, f: l.f.neg_rf() })),
        }
    }

    fn inv(&self) -> Option<Self> {
        match self {
            Elem::Scalar(c) => c.inv().map(Elem::Scalar),
            Elem::Rat(l) => l.f.inv_rf().map(|f| Elem::from_ratfunc(l.var, f)),
        }
    }

    fn characteristic(&self) -> u32 {
        match self {
            Elem::Scalar(c) => c.modulus(),
            Elem::Rat(l) => l.f.den().coeffs()[0].characteristic(),
        }
    }

    fn poly_gcd_hint(a: &Poly<Elem>, b: &Poly<Elem>) -> Option<Poly<Elem>> {
        Some(super::integral::poly_gcd(a, b))
    }

    fn size_hint(&self) -> usize {
        match self {
            Elem::Scalar(_) => 1,
            Elem::Rat(l) => l.f.size_hint(),
        }
    }
}

impl std::ops::Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        Field::add(self, rhs)
    }
}

impl std::ops::Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        Field::sub(self, rhs)
    }
}

impl std::ops::Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        Field::mul(self, rhs)
    }
}

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Field::neg(self)
    }
}

fn debug_poly(f: &mut fmt::Formatter<'_>, var: usize, poly: &Poly<Elem>) -> fmt::Result {
    write!(f, "(")?;
    let mut first = true;
    for (i, c) in poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        write!(f, "{c:?}*t{var}^{i}")?;
    }
    if first {
        write!(f, "0")?;
    }
    write!(f, ")")
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Scalar(c) => write!(f, "{c}"),
            Elem::Rat(l) => {
                debug_poly(f, l.var, l.f.num())?;
                if !l.f.den().is_one() {
                    write!(f, "/")?;
                    debug_poly(f, l.var, l.f.den())?;
                }
                Ok(())
            }
        }
    }
}

use super::{Field, Poly};
use crate::error::{Error, Result};

/// A reduced rational function `num / den` over a field.
///
/// Canonical form: `den` is monic, `gcd(num, den) = 1`, and zero is `0/1`.
/// With this form structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Reduce `num / den` to canonical form.
    pub fn normalize(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let one = den.lc().unwrap().one_like();
        if num.is_zero() {
            return Ok(RatFunc { num, den: Poly::constant(one) });
        }
        if den.is_unit() {
            let inv = den.coeffs()[0].inv().unwrap();
            return Ok(RatFunc { num: num.scale(&inv), den: Poly::constant(one) });
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g)?, den.div_exact(&g)?) };
        let inv = den.lc().unwrap().inv().unwrap();
        Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(num: Poly<F>, one: &F) -> Self {
        RatFunc { num, den: Poly::constant(one.one_like()) }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        RatFunc { num: Poly::constant(c), den: Poly::constant(one) }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<F>, Poly<F>) {
        (self.num, self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_unit()
    }

    fn one(&self) -> F {
        self.den.lc().unwrap().one_like()
    }

    pub fn add_rf(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_unit() {
                return RatFunc { num, den: self.den.clone() };
            }
            return RatFunc::normalize(num, self.den.clone()).unwrap();
        }
        if self.den.is_unit() {
            let num = self.num.mul(&rhs.den).add(&rhs.num);
            return RatFunc { num, den: rhs.den.clone() };
        }
        if rhs.den.is_unit() {
            let num = rhs.num.mul(&self.den).add(&self.num);
            return RatFunc { num, den: self.den.clone() };
        }
        let g = self.den.gcd(&rhs.den).unwrap();
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            let den = self.den.mul(&rhs.den);
            // coprime denominators: gcd(num, den) = 1 already
            return RatFunc { num, den };
        }
        // only factors of g can cancel from the sum
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = rhs.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        if num.is_zero() {
            return self.zero_like();
        }
        let g2 = num.gcd(&g).unwrap();
        if g2.is_one() {
            return RatFunc { num, den: b1.mul(&rhs.den) };
        }
        RatFunc { num: num.div_exact(&g2).unwrap(), den: b1.mul(&rhs.den.div_exact(&g2).unwrap()) }
    }

    pub fn neg_rf(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub_rf(&self, rhs: &Self) -> Self {
        self.add_rf(&rhs.neg_rf())
    }

    pub fn mul_rf(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc { num: Poly::zero(), den: Poly::constant(self.one()) };
        }
        if self.den.is_unit() && rhs.den.is_unit() {
            return RatFunc { num: self.num.mul(&rhs.num), den: self.den.clone() };
        }
        // cross-cancel before multiplying
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        let num = a.mul(&c);
        let den = b.mul(&d);
        let inv = den.lc().unwrap().inv().unwrap();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn inv_rf(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let inv = self.num.lc().unwrap().inv().unwrap();
        Some(RatFunc { num: self.den.scale(&inv), den: self.num.scale(&inv) })
    }

    pub fn div_rf(&self, rhs: &Self) -> Option<Self> {
        rhs.inv_rf().map(|r| self.mul_rf(&r))
    }
}

/// Divide out `gcd(a, b)` from both; `a` and `b` nonzero.
fn cancel<F: Field>(a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
    if a.is_unit() || b.is_unit() {
        return (a.clone(), b.clone());
    }
    let g = a.gcd(b).unwrap();
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero_like(&self) -> Self {
        RatFunc { num: Poly::zero(), den: Poly::constant(self.one()) }
    }

    fn one_like(&self) -> Self {
        RatFunc::constant(self.one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.add_rf(rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.sub_rf(rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.mul_rf(rhs)
    }

    fn neg(&self) -> Self {
        self.neg_rf()
    }

    fn inv(&self) -> Option<Self> {
        self.inv_rf()
    }

    fn characteristic(&self) -> u32 {
        self.den.lc().unwrap().characteristic()
    }

    fn size_hint(&self) -> usize {
        self.num.size_hint() + self.den.size_hint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fp;
    use proptest::prelude::*;

    fn fp(p: u32, cs: &[i64]) -> Poly<Fp> {
        Poly::new(cs.iter().map(|&c| Fp::new(c, p)).collect())
    }

    #[test]
    fn normalize_examples() {
        let r = RatFunc::normalize(fp(3, &[2, 2]), fp(3, &[2])).unwrap();
        assert_eq!(r, RatFunc::from_poly(fp(3, &[1, 1]), &Fp::one(3)));
        let r = RatFunc::normalize(fp(5, &[-1, 0, 1]), fp(5, &[-1, 1])).unwrap();
        assert_eq!(r.num(), &fp(5, &[1, 1]));
        assert!(r.den().is_one());
        let r = RatFunc::normalize(fp(3, &[0, 1, 0, 1]), fp(3, &[0, 1])).unwrap();
        assert_eq!(r.num(), &fp(3, &[1, 0, 1]));
        assert_eq!(RatFunc::normalize(fp(3, &[1]), Poly::zero()), Err(Error::ZeroDenominator));
        let z = RatFunc::normalize(Poly::zero(), fp(3, &[0, 2])).unwrap();
        assert!(z.num().is_zero() && z.den().is_one());
    }

    fn arb_poly(p: u32, max_len: usize) -> impl Strategy<Value = Poly<Fp>> {
        proptest::collection::vec(0i64..p as i64, 1..max_len)
            .prop_map(move |cs| Poly::new(cs.into_iter().map(|c| Fp::new(c, p)).collect()))
    }

    proptest! {
        #[test]
        fn canonical_under_common_factor(a in arb_poly(5, 5), b in arb_poly(5, 5), c in arb_poly(5, 4)) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let lhs = RatFunc::normalize(a.mul(&c), b.mul(&c)).unwrap();
            let rhs = RatFunc::normalize(a, b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn arithmetic_matches_cross_multiplication(a in arb_poly(3, 4), b in arb_poly(3, 4), c in arb_poly(3, 4), d in arb_poly(3, 4)) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let x = RatFunc::normalize(a.clone(), b.clone()).unwrap();
            let y = RatFunc::normalize(c.clone(), d.clone()).unwrap();
            let sum = RatFunc::normalize(a.mul(&d).add(&c.mul(&b)), b.mul(&d)).unwrap();
            prop_assert_eq!(x.add(&y), sum);
            let prod = RatFunc::normalize(a.mul(&c), b.mul(&d)).unwrap();
            prop_assert_eq!(x.mul(&y), prod);
            if !y.is_zero() {
                prop_assert_eq!(x.div(&y).unwrap().mul(&y), x);
            }
        }
    }
}

use super::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and `degree = len - 1` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// `c * T^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![c.zero_like(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `T^i`, `None` past the degree.
    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    /// Degree zero (a nonzero constant).
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn size_hint(&self) -> usize {
        self.coeffs.iter().map(|c| c.size_hint()).sum::<usize>() + self.coeffs.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add(c);
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `T^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![self.coeffs[0].zero_like(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `self^e`; the zero polynomial stays zero (it carries no field to build `1` from).
    pub fn pow(&self, mut e: u64) -> Self {
        let one = match self.coeffs.first() {
            Some(c) => Poly::constant(c.one_like()),
            None => return Poly::zero(),
        };
        let mut base = self.clone();
        let mut acc = one;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scale so the leading coefficient is one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let bl = b.lc().ok_or(Error::DivisionByZero)?;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = bl.inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let zero = bl.zero_like();
        let mut quo = vec![zero; rem.len() - db];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + db];
            if c.is_zero() {
                continue;
            }
            let q = c.mul(&inv);
            for (j, bc) in b.coeffs.iter().enumerate() {
                if !bc.is_zero() {
                    rem[k + j] = rem[k + j].sub(&q.mul(bc));
                }
            }
            quo[k] = q;
        }
        rem.truncate(db);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        self.divmod(b).map(|(_, r)| r)
    }

    /// Exact quotient; fails if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, b: &Self) -> Result<Self> {
        if self.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if self.is_unit() || b.is_unit() {
            let c = if self.is_unit() { &self.coeffs[0] } else { &b.coeffs[0] };
            return Ok(Poly::constant(c.one_like()));
        }
        if let Some(g) = F::poly_gcd_hint(self, b) {
            return Ok(g);
        }
        let mut r0 = self.monic();
        let mut r1 = b.monic();
        if r0.coeffs.len() < r1.coeffs.len() {
            std::mem::swap(&mut r0, &mut r1);
        }
        while !r1.is_zero() {
            let r = r0.rem(&r1)?.monic();
            r0 = r1;
            r1 = r;
        }
        Ok(r0)
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, b: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let one = self.lc().or(b.lc()).unwrap().one_like();
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::constant(one.clone()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(one));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = r0.lc().unwrap().inv().unwrap();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Formal derivative `sum i*a_i T^(i-1)`; multiples of `p` vanish.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&c.int_like(i as i64))).collect())
    }

    /// Horner evaluation. `zero` supplies the field for the zero polynomial.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `self(inner(T))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Squarefree part `a / gcd(a, a')`, made monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        let d = self.derivative();
        if d.is_zero() {
            // a p-th power in T is not separable; callers only use separable inputs
            return Ok(self.monic());
        }
        let g = self.gcd(&d)?;
        Ok(self.div_exact(&g)?.monic())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
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
    fn divmod_examples() {
        let (q, r) = fp(3, &[1, 0, 1]).divmod(&fp(3, &[0, 1])).unwrap();
        assert_eq!((q, r), (fp(3, &[0, 1]), fp(3, &[1])));
        // X^3+1 = (X+1)^3 in F_3
        let (q, r) = fp(3, &[1, 0, 0, 1]).divmod(&fp(3, &[1, 1])).unwrap();
        assert_eq!(q, fp(3, &[1, 2, 1]));
        assert!(r.is_zero());
        assert_eq!(q.mul(&fp(3, &[1, 1])), fp(3, &[1, 0, 0, 1]));
        let (q, r) = Poly::<Fp>::zero().divmod(&fp(3, &[0, 1])).unwrap();
        assert!(q.is_zero() && r.is_zero());
        assert_eq!(fp(3, &[1]).divmod(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(fp(5, &[-1, 0, 1]).gcd(&fp(5, &[-1, 1])).unwrap(), fp(5, &[-1, 1]));
        let g = fp(3, &[1, 0, 0, 1]).gcd(&fp(3, &[1, 1])).unwrap();
        assert_eq!(g, fp(3, &[1, 1]));
        assert!(fp(3, &[1, 0, 0, 1]).rem(&g).unwrap().is_zero());
        assert_eq!(fp(3, &[0, 1]).gcd(&fp(3, &[1])).unwrap(), fp(3, &[1]));
        assert_eq!(Poly::<Fp>::zero().gcd(&Poly::zero()), Err(Error::GcdOfZeros));
    }

    #[test]
    fn derivative_in_char_p() {
        assert!(fp(3, &[0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(fp(3, &[0, 0, 1]).derivative(), fp(3, &[0, 2]));
        for p in [2u32, 3, 5, 7] {
            let mut a = Poly::monomial(Fp::one(p), (p - 1) as usize);
            for _ in 0..p - 1 {
                a = a.derivative();
            }
            assert_eq!(a, fp(p, &[-1]));
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = fp(7, &[3, 1, 4, 1, 5]);
        let b = fp(7, &[2, 6, 5]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, a.gcd(&b).unwrap());
    }

    fn arb_poly(p: u32, max_len: usize) -> impl Strategy<Value = Poly<Fp>> {
        proptest::collection::vec(0i64..p as i64, 0..max_len)
            .prop_map(move |cs| Poly::new(cs.into_iter().map(|c| Fp::new(c, p)).collect()))
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in arb_poly(5, 9), b in arb_poly(5, 5)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn gcd_divides_and_scales(a in arb_poly(3, 6), b in arb_poly(3, 6), g in arb_poly(3, 4)) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !g.is_zero());
            let d = a.gcd(&b).unwrap();
            prop_assert!(a.rem(&d).unwrap().is_zero());
            prop_assert!(b.rem(&d).unwrap().is_zero());
            let dg = a.mul(&g).gcd(&b.mul(&g)).unwrap();
            prop_assert_eq!(dg, d.mul(&g).monic());
        }

        #[test]
        fn p_fold_derivative_vanishes(pi in 0usize..4, cs in proptest::collection::vec(0i64..50, 0..20)) {
            let p = [2u32, 3, 5, 7][pi];
            let mut a = Poly::new(cs.into_iter().map(|c| Fp::new(c, p)).collect());
            for _ in 0..p {
                a = a.derivative();
            }
            prop_assert!(a.is_zero());
        }
    }
}

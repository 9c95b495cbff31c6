use std::fmt;

use super::Field;

/// An element of the prime field `F_p`, stored as a residue in `[0, p)`.
///
/// The modulus travels with the value; mixing residues of different primes
/// is a logic error and panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    p: u32,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Self {
        let r = value.rem_euclid(p as i64) as u32;
        Fp { value: r, p }
    }

    pub fn zero(p: u32) -> Self {
        Fp { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        Fp { value: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    fn check(self, rhs: Fp) {
        assert_eq!(self.p, rhs.p, "mixed characteristics {} and {}", self.p, rhs.p);
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp::zero(self.p)
    }

    fn one_like(&self) -> Self {
        Fp::one(self.p)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        let s = self.value as u64 + rhs.value as u64;
        Fp { value: (s % self.p as u64) as u32, p: self.p }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        let s = self.value as u64 + self.p as u64 - rhs.value as u64;
        Fp { value: (s % self.p as u64) as u32, p: self.p }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        let s = self.value as u64 * rhs.value as u64;
        Fp { value: (s % self.p as u64) as u32, p: self.p }
    }

    fn neg(&self) -> Self {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, p)
        let (mut r0, mut r1) = (self.p as i64, self.value as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp::new(s0, self.p))
    }

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn int_like(&self, n: i64) -> Self {
        Fp::new(n, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_and_fermat() {
        for p in [2u32, 3, 5, 7, 13] {
            for v in 1..p {
                let a = Fp::new(v as i64, p);
                assert!(a.mul(&a.inv().unwrap()).is_one());
                assert_eq!(a.pow(p as u64), a);
            }
        }
        assert!(Fp::zero(5).inv().is_none());
        assert_eq!(Fp::new(-1, 5).value(), 4);
    }

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    proptest! {
        #[test]
        fn field_axioms(pi in 0usize..4, a in 0i64..100, b in 0i64..100, c in 0i64..100) {
            let p = [2u32, 3, 5, 7][pi];
            let (a, b, c) = (Fp::new(a, p), Fp::new(b, p), Fp::new(c, p));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&a.neg()), Fp::zero(p));
            prop_assert_eq!(a.sub(&b).add(&b), a);
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }
}

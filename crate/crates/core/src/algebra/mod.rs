//! Exact arithmetic over abstract fields: prime fields, dense univariate
//! polynomials, reduced rational functions and dense matrices.
//!
//! Field elements carry enough information to build the constants of their
//! own field (`zero_like`, `one_like`), so generic containers never need a
//! separate context object.

mod ffroots;
mod fp;
mod matrix;
mod poly;
mod ratfunc;

use std::fmt::Debug;
use std::hash::Hash;

pub use ffroots::{ff_factor_roots, FfRoot};
pub use fp::{is_prime, Fp};
pub use matrix::Matrix;
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// A commutative field whose elements know their own characteristic.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn characteristic(&self) -> u32;

    /// Rough size used to break pivot ties; smaller is cheaper.
    fn size_hint(&self) -> usize {
        1
    }

    /// Optional fast path for `gcd` of polynomials over this field; must
    /// return the monic gcd or `None`.
    fn poly_gcd_hint(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// The image of the integer `n` in this field.
    fn int_like(&self, n: i64) -> Self {
        let p = self.characteristic() as i64;
        let mut r = n % p;
        if r < 0 {
            r += p;
        }
        let one = self.one_like();
        let mut acc = self.zero_like();
        // small p: repeated doubling is overkill
        for _ in 0..r {
            acc = acc.add(&one);
        }
        acc
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
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
}

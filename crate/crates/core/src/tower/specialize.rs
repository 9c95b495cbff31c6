//! Specialization of tower elements to a finite field `F_q`, `q = p^m`.
//!
//! Substituting field values for every generator is a ring homomorphism on
//! the elements whose denominators do not vanish. It gives cheap one-sided
//! certificates for gcds of polynomials over the tower: if the leading
//! coefficients survive, the specialized gcd has degree at least that of the
//! true gcd, so a constant specialized gcd proves coprimality.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Field, Poly};

use super::Elem;

/// Target size of the evaluation field.
const TARGET_Q: u64 = 1 << 16;

/// `F_q` with Zech-style log tables; elements are base-`p` digit strings
/// packed into a `u32`.
struct Gf {
    p: u32,
    m: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf {
    fn build(p: u32) -> Gf {
        let mut m = 1u32;
        while (p as u64).pow(m) < TARGET_Q {
            m += 1;
        }
        let q = (p as u64).pow(m);
        let q = q as u32;
        if m == 1 {
            // prime field: any primitive root
            for g in 2..p.max(3) {
                if let Some(gf) = Gf::with_generator(p, 1, q, &[g % p]) {
                    return gf;
                }
            }
            return Gf::with_generator(p, 1, q, &[1 % p]).expect("F_2 is trivially cyclic");
        }
        // search for a primitive polynomial x^m + c_{m-1} x^{m-1} + ... + c_0
        let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
        loop {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut low = Vec::with_capacity(m as usize);
            let mut s = state >> 11;
            for _ in 0..m {
                low.push((s % p as u64) as u32);
                s /= p as u64;
            }
            if low[0] == 0 {
                continue;
            }
            if let Some(gf) = Gf::with_generator(p, m, q, &low) {
                return gf;
            }
        }
    }

    /// For `m = 1`, `low = [g]` is a candidate primitive root; otherwise the
    /// low coefficients of a monic modulus with `x` as the candidate.
    fn with_generator(p: u32, m: u32, q: u32, low: &[u32]) -> Option<Gf> {
        let mut exp = vec![0u32; q as usize - 1];
        let mut log = vec![u32::MAX; q as usize];
        let mut digits = vec![0u32; m as usize];
        digits[0] = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            let code = pack(&digits, p);
            if log[code as usize] != u32::MAX {
                return None;
            }
            log[code as usize] = i as u32;
            *slot = code;
            if m == 1 {
                digits[0] = ((digits[0] as u64 * low[0] as u64) % p as u64) as u32;
            } else {
                // multiply by x modulo x^m + sum low_i x^i
                let top = digits[m as usize - 1];
                for j in (1..m as usize).rev() {
                    digits[j] = digits[j - 1];
                }
                digits[0] = 0;
                for (j, &c) in low.iter().enumerate() {
                    digits[j] = (digits[j] + (p - c) * top % p) % p;
                }
            }
        }
        Some(Gf { p, m, q, exp, log })
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut scale) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut scale) = (a, 0u32, 1u32);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n as u64;
        self.exp[e as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    /// A deterministic nonzero pseudo-random element for `(var, attempt)`.
    fn point(&self, var: usize, attempt: u32) -> u32 {
        let mut h = (var as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
            ^ (attempt as u64 + 7).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
        h ^= h >> 31;
        h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h ^= h >> 29;
        1 + (h % (self.q as u64 - 1)) as u32
    }
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Shared tables for characteristic `p`; `None` when `p` is too large for tables.
fn field(p: u32) -> Option<Arc<Gf>> {
    if p > 1 << 22 {
        return None;
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Gf>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    Some(guard.entry(p).or_insert_with(|| Arc::new(Gf::build(p))).clone())
}

struct Evaluator {
    gf: Arc<Gf>,
    attempt: u32,
}

impl Evaluator {
    /// Value of `e`, or `None` when a denominator vanishes.
    fn eval(&self, e: &Elem) -> Option<u32> {
        match e {
            Elem::Scalar(c) => Some(c.value() % self.gf.p),
            Elem::Rat(l) => {
                let x = self.gf.point(l.var(), self.attempt);
                let f = l.ratfunc();
                let d = self.horner(f.den(), x)?;
                if d == 0 {
                    return None;
                }
                let n = self.horner(f.num(), x)?;
                Some(self.gf.mul(n, self.gf.inv(d)))
            }
        }
    }

    fn horner(&self, poly: &Poly<Elem>, x: u32) -> Option<u32> {
        let mut acc = 0;
        for c in poly.coeffs().iter().rev() {
            acc = self.gf.add(self.gf.mul(acc, x), self.eval(c)?);
        }
        Some(acc)
    }

    /// Coefficients of the specialized polynomial, `None` if the leading
    /// coefficient vanishes or a coefficient is undefined.
    fn poly(&self, a: &Poly<Elem>) -> Option<Vec<u32>> {
        let out: Vec<u32> = a.coeffs().iter().map(|c| self.eval(c)).collect::<Option<_>>()?;
        if *out.last()? == 0 {
            return None;
        }
        Some(out)
    }

    fn gcd_degree(&self, a: Vec<u32>, b: Vec<u32>) -> usize {
        let gf = &self.gf;
        let (mut r0, mut r1) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        while !r1.is_empty() {
            // r0 mod r1
            let inv = gf.inv(*r1.last().unwrap());
            let db = r1.len() - 1;
            while r0.len() > db {
                let top = *r0.last().unwrap();
                if top != 0 {
                    let q = gf.mul(top, inv);
                    let shift = r0.len() - 1 - db;
                    for (j, &c) in r1.iter().enumerate() {
                        r0[shift + j] = gf.sub(r0[shift + j], gf.mul(q, c));
                    }
                }
                r0.pop();
            }
            while r0.last() == Some(&0) {
                r0.pop();
            }
            std::mem::swap(&mut r0, &mut r1);
        }
        r0.len() - 1
    }
}

/// Degree of `gcd(a, b)` after specializing every generator to a point of
/// `F_q`, an upper bound for the true degree. `None` when no attempt keeps
/// both leading coefficients and all denominators nonzero.
pub(crate) fn specialized_gcd_degree(a: &Poly<Elem>, b: &Poly<Elem>) -> Option<usize> {
    let p = a.lc().or(b.lc())?.characteristic();
    let gf = field(p)?;
    for attempt in 0..2 {
        let ev = Evaluator { gf: gf.clone(), attempt };
        if let (Some(sa), Some(sb)) = (ev.poly(a), ev.poly(b)) {
            return Some(ev.gcd_degree(sa, sb));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_fields() {
        for p in [2u32, 3, 5, 7, 65537] {
            let gf = field(p).unwrap();
            assert!(gf.q as u64 >= TARGET_Q);
            for a in [1u32, 2, gf.q / 3, gf.q - 1] {
                if a == 0 {
                    continue;
                }
                assert_eq!(gf.mul(a, gf.inv(a)), 1);
                assert_eq!(gf.add(a, gf.neg(a)), 0);
                // distributivity on a sample
                let (b, c) = (gf.point(0, a), gf.point(1, a));
                assert_eq!(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c)));
            }
        }
    }
}

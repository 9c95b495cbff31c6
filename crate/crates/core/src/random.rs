//! Random towers and elements for property and fuzz testing.

use rand::Rng;

use crate::algebra::Field;
use crate::tower::{Elem, GenKind, Tower};

/// A random polynomial in the generators of `t`: up to `terms` monomials of
/// total degree at most `max_deg`, with nonzero coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, t: &Tower, max_deg: u32, terms: usize) -> Elem {
    let p = t.p();
    let mut acc = t.zero();
    for _ in 0..terms {
        let c = t.scalar(rng.gen_range(1..p as i64));
        let mut m = c;
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 && !t.is_empty() {
            let v = rng.gen_range(0..t.len());
            let k = rng.gen_range(1..=budget);
            m = &m * &t.generator(v).pow(k as u64);
            budget -= k;
        }
        acc = &acc + &m;
    }
    acc
}

/// A random element `a / b` with `a`, `b` from [`random_poly`]; `b` is a
/// constant with probability one half.
pub fn random_elem<R: Rng>(rng: &mut R, t: &Tower, max_deg: u32) -> Elem {
    let terms = rng.gen_range(1..=3);
    let num = random_poly(rng, t, max_deg, terms);
    if rng.gen_bool(0.5) {
        return num;
    }
    loop {
        let terms = rng.gen_range(1..=2);
        let den = random_poly(rng, t, max_deg.min(2), terms);
        if !den.is_zero() {
            return num.checked_div(&den).unwrap();
        }
    }
}

/// A nonzero random element.
pub fn random_nonzero<R: Rng>(rng: &mut R, t: &Tower, max_deg: u32) -> Elem {
    loop {
        let e = random_elem(rng, t, max_deg);
        if !e.is_zero() {
            return e;
        }
    }
}

/// `F_p(X)` extended by `extra` random generators of log, exp, hyperexp or
/// primitive type whose arguments are small polynomials in the earlier
/// generators.
pub fn random_tower<R: Rng>(rng: &mut R, p: u32, extra: usize) -> Tower {
    let mut t = Tower::rational(p, "X").unwrap();
    for i in 0..extra {
        let name = format!("T{}", i + 1);
        let kind = rng.gen_range(0..4);
        let arg = loop {
            let terms = rng.gen_range(1..=2);
            let a = random_poly(rng, &t, 2, terms);
            // a constant log argument would give a constant generator
            if !a.is_zero() && (kind != 0 || !t.is_constant(&a)) {
                break a;
            }
        };
        let kind = match kind {
            0 => GenKind::Log(arg),
            1 => GenKind::Exp(arg),
            2 => GenKind::HyperExp(arg),
            _ => GenKind::Primitive(arg),
        };
        t = t.extend(&name, kind).unwrap();
    }
    t
}

/// `F_p(X)` extended by `extra` logarithms and exponentials of small
/// polynomials in the earlier generators.
pub fn random_elementary_tower<R: Rng>(rng: &mut R, p: u32, extra: usize) -> Tower {
    let mut t = Tower::rational(p, "X").unwrap();
    for i in 0..extra {
        let name = format!("T{}", i + 1);
        let log = rng.gen_bool(0.5);
        let arg = loop {
            let terms = rng.gen_range(1..=2);
            let a = random_poly(rng, &t, 2, terms);
            if !t.is_constant(&a) {
                break a;
            }
        };
        let kind = if log { GenKind::Log(arg) } else { GenKind::Exp(arg) };
        t = t.extend(&name, kind).unwrap();
    }
    t
}

//! Gcds of polynomials over a tower, computed on denominator-free
//! representatives.
//!
//! An element is *integral* when every level has denominator 1, i.e. it is a
//! polynomial in the generators. Sums and products of integral elements
//! never need a gcd, so a primitive remainder sequence over integral
//! coefficients avoids the nested rational arithmetic that makes a plain
//! Euclidean algorithm over the tower blow up.

use crate::algebra::{Field, Poly};

use super::frobenius::FrobDecomp;
use super::specialize::specialized_gcd_degree;
use super::Elem;

/// Size ratio above which a gcd is computed by peeling factors of the
/// smaller argument off the larger one.
const UNBALANCED: usize = 4;

fn one(e: &Elem) -> Elem {
    e.one_like()
}

/// Polynomial of `e` in `t_v`; `e` must not involve generators above `v`.
fn as_poly_in(e: &Elem, v: usize) -> Poly<Elem> {
    match e.level() {
        Some(l) if l.var() == v => {
            debug_assert!(l.ratfunc().den().is_one());
            l.ratfunc().num().clone()
        }
        _ => Poly::constant(e.clone()),
    }
}

fn from_poly(v: usize, q: Poly<Elem>, like: &Elem) -> Elem {
    Elem::from_poly(v, q, like.characteristic())
}

/// `(n, d)` integral with `e = n / d`.
pub(crate) fn integral_parts(e: &Elem) -> (Elem, Elem) {
    let Some(l) = e.level() else {
        return (e.clone(), one(e));
    };
    let v = l.var();
    let f = l.ratfunc();
    let np: Vec<_> = f.num().coeffs().iter().map(integral_parts).collect();
    let dp: Vec<_> = f.den().coeffs().iter().map(integral_parts).collect();
    let common = np.iter().chain(&dp).fold(one(e), |acc, (_, d)| lcm(&acc, d));
    let scale =
        |parts: &[(Elem, Elem)]| Poly::new(parts.iter().map(|(n, d)| n * &exact_div(&common, d)).collect());
    (from_poly(v, scale(&np), e), from_poly(v, scale(&dp), e))
}

/// `a` times a common denominator of its coefficients.
fn integral_poly(a: &Poly<Elem>) -> Poly<Elem> {
    let parts: Vec<_> = a.coeffs().iter().map(integral_parts).collect();
    let Some(first) = a.lc() else {
        return Poly::zero();
    };
    let common = parts.iter().fold(one(first), |acc, (_, d)| lcm(&acc, d));
    Poly::new(parts.iter().map(|(n, d)| n * &exact_div(&common, d)).collect())
}

fn lcm(a: &Elem, b: &Elem) -> Elem {
    if a.var().is_none() {
        return b.clone();
    }
    if b.var().is_none() || a == b {
        return a.clone();
    }
    exact_div(&(a * b), &igcd(a, b))
}

/// Exact quotient of integral elements; panics when `b` does not divide `a`.
pub(crate) fn exact_div(a: &Elem, b: &Elem) -> Elem {
    if b.var().is_none() {
        return a.checked_div(b).expect("nonzero divisor");
    }
    if a.is_zero() {
        return a.clone();
    }
    let vb = b.var().unwrap();
    let va = a.var().expect("inexact division of integral elements");
    assert!(va >= vb, "inexact division of integral elements");
    let pa = as_poly_in(a, va);
    let q = if va > vb {
        Poly::new(pa.coeffs().iter().map(|c| exact_div(c, b)).collect())
    } else {
        poly_exact_div(&pa, &as_poly_in(b, vb))
    };
    from_poly(va, q, a)
}

fn poly_exact_div(a: &Poly<Elem>, b: &Poly<Elem>) -> Poly<Elem> {
    let db = b.degree().unwrap();
    let lb = b.lc().unwrap();
    let mut r = a.coeffs().to_vec();
    let Some(qlen) = r.len().checked_sub(db) else {
        panic!("inexact division of integral polynomials");
    };
    let mut q = vec![lb.zero_like(); qlen];
    for k in (0..qlen).rev() {
        let c = &r[k + db];
        if c.is_zero() {
            continue;
        }
        let qc = exact_div(c, lb);
        for (j, bj) in b.coeffs().iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] = &r[k + j] - &(&qc * bj);
            }
        }
        q[k] = qc;
    }
    assert!(r[..db].iter().all(|c| c.is_zero()), "inexact division of integral polynomials");
    Poly::new(q)
}

/// Gcd of integral elements, up to a nonzero scalar.
pub(crate) fn igcd(a: &Elem, b: &Elem) -> Elem {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    match (a.var(), b.var()) {
        (None, _) | (_, None) => one(a),
        (Some(va), Some(vb)) if va > vb => content_with(&as_poly_in(a, va), b.clone()),
        (Some(va), Some(vb)) if va < vb => content_with(&as_poly_in(b, vb), a.clone()),
        (Some(v), _) => {
            let (pa, pb) = (as_poly_in(a, v), as_poly_in(b, v));
            let (ca, pa) = split_content(pa);
            let (cb, pb) = split_content(pb);
            let c = igcd(&ca, &cb);
            let g = primitive_gcd(&pa, &pb);
            &from_poly(v, g, a) * &c
        }
    }
}

/// `gcd(start, coefficients of a)`, stopping early at a scalar.
fn content_with(a: &Poly<Elem>, start: Elem) -> Elem {
    let mut acc = start;
    for c in a.coeffs() {
        if acc.var().is_none() && !acc.is_zero() {
            break;
        }
        acc = igcd(&acc, c);
    }
    acc
}

fn split_content(a: Poly<Elem>) -> (Elem, Poly<Elem>) {
    let zero = match a.lc() {
        Some(c) => c.zero_like(),
        None => return (Elem::zero(2), a),
    };
    let c = content_with(&a, zero);
    if c.var().is_none() {
        return (one(&c), a);
    }
    let pp = Poly::new(a.coeffs().iter().map(|x| exact_div(x, &c)).collect());
    (c, pp)
}

/// Pseudo-remainder: `lc(b)^k a mod b` for a suitable `k`, without division.
fn prem(a: &Poly<Elem>, b: &Poly<Elem>) -> Poly<Elem> {
    let db = b.degree().unwrap();
    let lb = b.lc().unwrap();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.lc().unwrap().clone();
        r = r.scale(lb).sub(&b.scale(&lr).shift(dr - db));
    }
    r
}

/// Gcd of primitive integral polynomials by the primitive remainder
/// sequence; the result is primitive.
fn primitive_gcd(a: &Poly<Elem>, b: &Poly<Elem>) -> Poly<Elem> {
    let (mut r0, mut r1) =
        if a.degree() >= b.degree() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if r1.is_zero() {
        return r0;
    }
    let one = one(r0.lc().unwrap());
    let unit = || Poly::constant(one.clone());
    if r1.degree() == Some(0) || specialized_gcd_degree(&r0, &r1) == Some(0) {
        return unit();
    }
    loop {
        let r = prem(&r0, &r1);
        match r.degree() {
            None => return r1,
            Some(0) => return unit(),
            Some(_) => {
                r0 = r1;
                r1 = split_content(r).1;
            }
        }
    }
}

/// Monic gcd of polynomials over the tower.
pub(crate) fn poly_gcd(a: &Poly<Elem>, b: &Poly<Elem>) -> Poly<Elem> {
    let lead = a.lc().or(b.lc()).expect("gcd of zeros");
    let unit = Poly::constant(one(lead));
    let (da, db) = (a.degree(), b.degree());
    let order = |x: &Poly<Elem>| x.coeffs().iter().take_while(|c| c.is_zero()).count();
    // monomial arguments
    if da.is_some_and(|d| order(a) == d) || db.is_some_and(|d| order(b) == d) {
        let k = if a.is_zero() {
            order(b)
        } else if b.is_zero() {
            order(a)
        } else {
            order(a).min(order(b))
        };
        return Poly::monomial(one(lead), k);
    }
    let spec = specialized_gcd_degree(a, b);
    if spec == Some(0) {
        return unit;
    }
    let (small, big) = if db <= da { (b, a) } else { (a, b) };
    if spec == small.degree() && big.rem(small).is_ok_and(|r| r.is_zero()) {
        return small.monic();
    }
    let (light, heavy) = if a.size_hint() <= b.size_hint() { (a, b) } else { (b, a) };
    if light.size_hint() * UNBALANCED < heavy.size_hint() {
        return peel_gcd(heavy, light);
    }
    prs_gcd(a, b)
}

fn prs_gcd(a: &Poly<Elem>, b: &Poly<Elem>) -> Poly<Elem> {
    let (_, ia) = split_content(integral_poly(a));
    let (_, ib) = split_content(integral_poly(b));
    primitive_gcd(&ia, &ib).monic()
}

/// `gcd(big, small)` for a `small` of much smaller size: repeatedly take the
/// common part of `big` with the radical of what is left of `small`, which
/// only involves remainders modulo small polynomials.
fn peel_gcd(big: &Poly<Elem>, small: &Poly<Elem>) -> Poly<Elem> {
    let one = Poly::constant(one(small.lc().unwrap()));
    let mut g = one.clone();
    let mut a = big.clone();
    let mut b = small.monic();
    while b.degree().is_some_and(|d| d > 0) {
        let s = radical(&b);
        let r = a.rem(&s).unwrap();
        let h = if r.is_zero() {
            s
        } else if r.degree() == Some(0) {
            break;
        } else {
            prs_gcd(&s, &r)
        };
        if h.is_one() {
            break;
        }
        a = a.div_exact(&h).unwrap();
        b = b.div_exact(&h).unwrap();
        g = g.mul(&h);
    }
    g
}

/// A monic divisor of `b` divisible by every irreducible factor of `b`.
///
/// Factors whose multiplicity is prime to `p` come from `b / gcd(b, b')`;
/// the rest form a polynomial in `T^p`, handled through its `p`-th root when
/// the coefficients allow one.
fn radical(b: &Poly<Elem>) -> Poly<Elem> {
    let b = b.monic();
    if b.degree().is_none_or(|d| d <= 1) {
        return b;
    }
    let d = b.derivative();
    if d.is_zero() {
        return match pth_root_poly(&b) {
            Some(r) => radical(&r),
            None => b,
        };
    }
    let g = poly_gcd(&b, &d);
    let w = b.div_exact(&g).unwrap();
    let mut rest = g;
    loop {
        let h = poly_gcd(&rest, &w);
        if h.is_one() {
            break;
        }
        rest = rest.div_exact(&h).unwrap();
    }
    if rest.is_one() {
        w
    } else {
        w.mul(&radical(&rest))
    }
}

/// `r` with `r(T)^p = b(T)`, when `b` is a polynomial in `T^p` whose
/// coefficients are `p`-th powers.
fn pth_root_poly(b: &Poly<Elem>) -> Option<Poly<Elem>> {
    let p = b.lc()?.characteristic() as usize;
    let mut out = Vec::new();
    for (i, c) in b.coeffs().iter().enumerate() {
        if i % p != 0 {
            if !c.is_zero() {
                return None;
            }
            continue;
        }
        let k = c.var().map_or(0, |v| v + 1);
        out.push(FrobDecomp::of(c, k, p as u32).pth_root()?);
    }
    Some(Poly::new(out))
}

//! Roots of polynomials over `F_p` in small extensions `F_{p^m}`.
//!
//! Distinct-degree factorization followed by Cantor-Zassenhaus equal-degree
//! splitting. Each irreducible factor `f` of degree `m` contributes the `m`
//! conjugate roots `x, x^p, ..., x^(p^(m-1))` of `F_p[x]/(f)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, Fp, Poly};

/// A root living in `F_p[x] / (min_poly)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FfRoot {
    /// Monic irreducible polynomial of the root over `F_p`.
    pub min_poly: Poly<Fp>,
    /// The root as a residue modulo `min_poly` (degree below `degree`).
    pub value: Poly<Fp>,
}

impl FfRoot {
    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    /// The root as an element of `F_p` when the extension degree is one.
    pub fn as_prime_field(&self) -> Option<Fp> {
        (self.degree() == 1).then(|| self.min_poly.coeffs()[0].neg())
    }
}

fn mulmod(a: &Poly<Fp>, b: &Poly<Fp>, m: &Poly<Fp>) -> Poly<Fp> {
    a.mul(b).rem(m).unwrap()
}

fn powmod(base: &Poly<Fp>, mut e: u64, m: &Poly<Fp>) -> Poly<Fp> {
    let p = m.lc().unwrap().modulus();
    let mut acc = Poly::constant(Fp::one(p)).rem(m).unwrap();
    let mut b = base.rem(m).unwrap();
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, m);
        }
    }
    acc
}

/// `f(T) = g(T^p)` with `g` returned, when `f' = 0`.
fn pth_root_poly(f: &Poly<Fp>, p: usize) -> Poly<Fp> {
    Poly::new(f.coeffs().iter().step_by(p).cloned().collect())
}

/// Distinct monic irreducible factors of `f`, restricted to degree `<= m_bound`.
pub(crate) fn irreducible_factors(f: &Poly<Fp>, m_bound: usize) -> Vec<Poly<Fp>> {
    let mut out: Vec<Poly<Fp>> = Vec::new();
    collect_factors(&f.monic(), m_bound, &mut out);
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    out.dedup();
    out
}

fn collect_factors(f: &Poly<Fp>, m_bound: usize, out: &mut Vec<Poly<Fp>>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.lc().unwrap().modulus() as usize;
    let d = f.derivative();
    if d.is_zero() {
        return collect_factors(&pth_root_poly(f, p), m_bound, out);
    }
    let g = f.gcd(&d).unwrap();
    if !g.is_one() {
        collect_factors(&f.div_exact(&g).unwrap(), m_bound, out);
        collect_factors(&g, m_bound, out);
        return;
    }
    distinct_degree(f, m_bound, out);
}

fn distinct_degree(f: &Poly<Fp>, m_bound: usize, out: &mut Vec<Poly<Fp>>) {
    let p = f.lc().unwrap().modulus();
    let x = Poly::monomial(Fp::one(p), 1);
    let mut rest = f.clone();
    let mut h = x.rem(&rest).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p as u64);
    let mut d = 1;
    while 2 * d <= rest.degree().unwrap() {
        if d > m_bound {
            // every remaining factor has degree above the bound
            return;
        }
        h = powmod(&h, p as u64, &rest);
        let g = rest.gcd(&h.sub(&x)).unwrap();
        if !g.is_one() {
            equal_degree(&g, d, &mut rng, out);
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest).unwrap();
        }
        d += 1;
    }
    // no factor of degree <= deg/2 is left, so `rest` is irreducible
    let deg = rest.degree().unwrap();
    if deg > 0 && deg <= m_bound {
        out.push(rest.monic());
    }
}

fn equal_degree(g: &Poly<Fp>, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly<Fp>>) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.monic());
        return;
    }
    let p = g.lc().unwrap().modulus();
    loop {
        let a = Poly::new((0..n).map(|_| Fp::new(rng.gen_range(0..p as i64), p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = mulmod(&t, &t, g);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut t = a.rem(g).unwrap();
            let mut norm = t.clone();
            for _ in 1..d {
                t = powmod(&t, p as u64, g);
                norm = mulmod(&norm, &t, g);
            }
            powmod(&norm, ((p - 1) / 2) as u64, g).sub(&Poly::constant(Fp::one(p)))
        };
        if b.is_zero() {
            continue;
        }
        let h = g.gcd(&b).unwrap();
        let dh = h.degree().unwrap();
        if dh > 0 && dh < n {
            equal_degree(&h, d, rng, out);
            equal_degree(&g.div_exact(&h).unwrap(), d, rng, out);
            return;
        }
    }
}

/// All roots of `a` lying in `F_{p^m}` for some `m <= m_bound`, each paired with
/// its minimal polynomial. Conjugate roots are listed individually.
pub fn ff_factor_roots(a: &Poly<Fp>, m_bound: usize) -> Vec<FfRoot> {
    if a.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = a.lc().unwrap().modulus() as u64;
    let mut roots = Vec::new();
    for f in irreducible_factors(a, m_bound) {
        let m = f.degree().unwrap();
        let x = Poly::monomial(Fp::one(p as u32), 1).rem(&f).unwrap();
        let mut conj = x;
        for _ in 0..m {
            roots.push(FfRoot { min_poly: f.clone(), value: conj.clone() });
            conj = powmod(&conj, p, &f);
        }
    }
    roots
}

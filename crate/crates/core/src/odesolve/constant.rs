use crate::algebra::{ff_factor_roots, Field, Fp, Poly};
use crate::annihilator::{ConstOp, NAIVE_ORDER_LIMIT};
use crate::antideriv::build_unit_chain;
use crate::error::{Error, Result};
use crate::tower::{Elem, GenKind, Tower};

use super::quotient::{QuotientCtx, ZeroDivisor};

/// Largest extension degree searched for roots in finite fields.
pub const FF_DEGREE_BOUND: usize = 6;

/// How the roots of `R` are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RootStrategy {
    /// Finite-field roots when `R` has coefficients in `F_p`, otherwise (or
    /// when none are found) a formal root.
    #[default]
    Auto,
    /// Only roots in `F_(p^m)`, `m <= FF_DEGREE_BOUND`.
    FiniteField,
    /// Always a formal root of the squarefree part of `R`.
    Formal,
}

/// Data shared by all solutions of one equation `Q(D) y = 0`.
#[derive(Clone, Debug)]
pub struct Construction {
    /// `Q(T) = P(T^(p^e))`.
    pub e: u32,
    pub p_poly: Poly<Elem>,
    /// `D^(p^e)(u) = 1`.
    pub u: Elem,
    /// `A(T) = sum_i (D^(p^i) u)^(p^(e-i)) T^(p^(e-i))`, with `A' = 1`.
    pub a_poly: Poly<Elem>,
    /// `R = P(A)`.
    pub r_poly: Poly<Elem>,
}

/// A nonzero solution `y` of `Q(D) y = 0`.
#[derive(Clone, Debug)]
pub struct OdeSolution {
    pub extended_tower: Tower,
    pub solution: Elem,
    /// The root of `R` used: an element of `F_p`, or the formal generator
    /// when `adjunction` is present.
    pub alpha: Elem,
    /// Present when `alpha` is a formal root; identities then hold modulo
    /// its modulus.
    pub adjunction: Option<QuotientCtx>,
    /// Name of the exponential generator, absent for the constant solution.
    pub generator: Option<String>,
    pub construction: Construction,
}

/// `(P, e)` with `q(T) = P(T^(p^e))` and `e` maximal, so that `P' != 0`.
pub fn inseparable_split(q: &Poly<Elem>) -> (Poly<Elem>, u32) {
    let lead = q.lc().expect("nonzero polynomial");
    let p = lead.characteristic() as usize;
    let mut cur = q.clone();
    let mut e = 0;
    while cur.degree().unwrap() > 0 && cur.coeffs().iter().enumerate().all(|(i, c)| i % p == 0 || c.is_zero())
    {
        cur = Poly::new(cur.coeffs().iter().step_by(p).cloned().collect());
        e += 1;
    }
    (cur, e)
}

/// Builds `u` with `D^(p^e)(u) = 1` from the unit chain and the polynomial
/// `A` with constant coefficients such that `D^(p^e)(E) = A(alpha) E`
/// whenever `DE = alpha Du E` with `alpha` constant.
pub fn euler_substitution(t: &Tower, e: u32) -> Result<(Tower, Elem, Poly<Elem>)> {
    let (tower, chain) = build_unit_chain(t, e)?;
    let u = chain.chain[e as usize].clone();
    let p = t.p() as u64;
    let mut coeffs = vec![tower.zero(); p.pow(e) as usize + 1];
    let mut d = tower.derivation().clone();
    for i in 0..=e {
        if i > 0 {
            d = d.pth_power();
        }
        let k = p.pow(e - i);
        coeffs[k as usize] = d.apply(&u).pow(k);
    }
    let a = Poly::new(coeffs);
    if !a.derivative().is_one() || !a.coeffs().iter().all(|c| tower.is_constant(c)) {
        return Err(Error::VerificationFailed("A' = 1 with constant coefficients".into()));
    }
    Ok((tower, u, a))
}

/// Nonzero solutions of `q(D) y = 0`, one per class of roots of `R`.
///
/// With `q(T) = P(T^(p^e))` and `u`, `A` from [`euler_substitution`], an
/// exponential `E` with `DE = alpha Du E` satisfies
/// `q(D) E = P(A(alpha)) E = R(alpha) E`, so every root of `R` gives one.
pub fn solve_constant_ode(t: &Tower, q: &ConstOp, strategy: RootStrategy) -> Result<Vec<OdeSolution>> {
    if !q.has_constant_coeffs(t) {
        return Err(Error::PreconditionViolated("coefficients must be constants".into()));
    }
    let (p_poly, e) = inseparable_split(&q.to_poly());
    let (tower, u, a_poly) = euler_substitution(t, e)?;
    let r_poly = p_poly.compose(&a_poly);
    if r_poly.degree() != Some(q.order() as usize) {
        return Err(Error::Internal("deg R differs from the order of Q".into()));
    }
    let construction = Construction { e, p_poly, u, a_poly, r_poly: r_poly.clone() };
    let ctx = Solver { tower: &tower, q, construction };

    let prime_field: Option<Poly<Fp>> = (strategy != RootStrategy::Formal)
        .then(|| r_poly.coeffs().iter().map(|c| c.as_scalar()).collect::<Option<Vec<_>>>())
        .flatten()
        .map(Poly::new);
    let mut out = Vec::new();
    if let Some(rp) = &prime_field {
        let mut seen: Vec<Poly<Fp>> = Vec::new();
        for root in ff_factor_roots(rp, FF_DEGREE_BOUND) {
            if seen.contains(&root.min_poly) {
                continue;
            }
            seen.push(root.min_poly.clone());
            match root.as_prime_field() {
                Some(a) => out.push(ctx.known(Elem::scalar(a.value() as i64, t.p()))?),
                None => {
                    let m = root.min_poly.map(|c| Elem::scalar(c.value() as i64, t.p()));
                    out.extend(ctx.formal(m)?);
                }
            }
        }
    }
    if out.is_empty() {
        if strategy == RootStrategy::FiniteField {
            return Err(Error::NoRootWithinBound);
        }
        out.extend(ctx.formal(r_poly.squarefree_part()?)?);
    }
    Ok(out)
}

struct Solver<'a> {
    tower: &'a Tower,
    q: &'a ConstOp,
    construction: Construction,
}

impl Solver<'_> {
    fn du(&self, t: &Tower) -> Elem {
        t.derive(&self.construction.u)
    }

    /// `q(D) y`, naively for small orders and otherwise as `R(alpha) y` from
    /// `D^(p^e) E = A(alpha) E`, which is checked first.
    fn apply(&self, t: &Tower, alpha: &Elem, y: &Elem) -> Result<Elem> {
        if self.q.order() <= NAIVE_ORDER_LIMIT {
            return Ok(self.q.apply(t, y));
        }
        let c = &self.construction;
        let carlitz = t.pth_power_derivation(c.e).apply(y);
        if carlitz != &c.a_poly.eval(alpha) * y {
            return Err(Error::VerificationFailed("D^(p^e) E differs from A(alpha) E".into()));
        }
        Ok(&c.r_poly.eval(alpha) * y)
    }

    fn known(&self, alpha: Elem) -> Result<OdeSolution> {
        let (ext, y, generator) = if alpha.is_zero() {
            (self.tower.clone(), self.tower.one(), None)
        } else {
            let name = self.tower.fresh_name("E");
            let ext = self.tower.extend(&name, GenKind::HyperExp(&alpha * &self.du(self.tower)))?;
            let y = ext.gen(&name).unwrap();
            (ext, y, Some(name))
        };
        if !self.apply(&ext, &alpha, &y)?.is_zero() {
            return Err(Error::VerificationFailed("Q(D) E is not zero".into()));
        }
        Ok(OdeSolution {
            extended_tower: ext,
            solution: y,
            alpha,
            adjunction: None,
            generator,
            construction: self.construction.clone(),
        })
    }

    /// One solution per branch of the formal root of `modulus`.
    fn formal(&self, modulus: Poly<Elem>) -> Result<Vec<OdeSolution>> {
        let alpha_name = self.tower.fresh_name("alpha");
        let with_alpha = self.tower.extend(&alpha_name, GenKind::Primitive(self.tower.zero()))?;
        let alpha = with_alpha.gen(&alpha_name).unwrap();
        let name = with_alpha.fresh_name("E");
        let ext = with_alpha.extend(&name, GenKind::HyperExp(&alpha * &self.du(&with_alpha)))?;
        let y = ext.gen(&name).unwrap();
        let value = self.apply(&ext, &alpha, &y)?;
        let mut work = vec![QuotientCtx::new(ext.clone(), self.tower.len(), modulus)?];
        let mut out = Vec::new();
        while let Some(ctx) = work.pop() {
            match ctx.vanishes_relative(&value, &y) {
                Ok(true) => out.push(OdeSolution {
                    extended_tower: ext.clone(),
                    solution: y.clone(),
                    alpha: alpha.clone(),
                    adjunction: Some(ctx),
                    generator: Some(name.clone()),
                    construction: self.construction.clone(),
                }),
                Ok(false) => return Err(Error::VerificationFailed("Q(D) E does not vanish modulo R".into())),
                Err(ZeroDivisor(g)) => {
                    let (a, b) = ctx.split(&g);
                    work.push(b);
                    work.push(a);
                }
            }
        }
        Ok(out)
    }
}

use std::collections::BTreeMap;

use crate::algebra::{Field, Matrix};
use crate::annihilator::{generic_solution, reduce_to_constant_coeffs, ConstOp, Reduction, SkewOp};
use crate::error::{Error, Result};
use crate::tower::{Elem, Tower};

use super::constant::{solve_constant_ode, OdeSolution, RootStrategy};
use super::quotient::ZeroDivisor;
use super::skew::{skew_mul, skew_right_divmod};

/// Monomials `prod t_i^(e_i)` with `0 <= e_i < p`: a basis of `K` over `K^p`.
fn frobenius_basis(t: &Tower) -> Vec<Elem> {
    let mut basis = vec![t.one()];
    for v in 0..t.len() {
        let g = t.generator(v);
        let mut next = Vec::with_capacity(basis.len() * t.p() as usize);
        for k in 0..t.p() as u64 {
            let gk = g.pow(k);
            next.extend(basis.iter().map(|m| m * &gk));
        }
        basis = next;
    }
    basis
}

/// An operator `U` of order below that of `q` with `P U` a left multiple
/// of `q`, so that `U` maps solutions of `q` to solutions of `P`.
///
/// `U = sum c_(i,m) m D^i` over the monomial basis `m` of `K` over `K^p`
/// with unknown constants `c`; since constants commute with `D`, the
/// condition `P U = 0 mod q` is linear over `K^p`.
pub fn transfer_operator(t: &Tower, p_op: &SkewOp, q: &ConstOp) -> Result<SkewOp> {
    let m = p_op.order().ok_or_else(|| Error::PreconditionViolated("P must be nonzero".into()))?;
    let n = q.order() as usize;
    if n < m {
        return Err(Error::PreconditionViolated("order(Q) must be at least order(P)".into()));
    }
    let q_op = SkewOp::from_const(q);
    let basis = frobenius_basis(t);
    let mut unknowns = Vec::new();
    let mut rows: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for i in 0..n {
        for mono in &basis {
            let col = unknowns.len();
            let term = SkewOp::monomial(mono.clone(), i);
            let (_, r) = skew_right_divmod(t, &skew_mul(t, p_op, &term), &q_op)?;
            for (k, c) in r.coeffs().iter().enumerate() {
                for (exps, g) in t.frobenius_decompose(c).terms {
                    let next = rows.len();
                    let row = *rows.entry((k, exps)).or_insert(next);
                    entries.push((row, col, g));
                }
            }
            unknowns.push(term);
        }
    }
    let mut matrix = Matrix::zeros(rows.len().max(1), unknowns.len(), &t.one());
    for (r, c, g) in entries {
        matrix.set(r, c, g);
    }
    let b = matrix.kernel().into_iter().next().ok_or(Error::NoTransferFound)?;
    let p = t.p() as u64;
    let u =
        unknowns.iter().zip(&b).filter(|(_, c)| !c.is_zero()).fold(SkewOp::zero(t.p()), |acc, (term, c)| {
            acc.add(&SkewOp::new(t.p(), term.coeffs().iter().map(|x| x * &c.pow(p)).collect()))
        });
    let (_, r) = skew_right_divmod(t, &skew_mul(t, p_op, &u), &q_op)?;
    if !r.is_zero() {
        return Err(Error::VerificationFailed("P U is not a multiple of Q".into()));
    }
    check_on_generic_solution(t, p_op, q, &u)?;
    Ok(u)
}

/// Applies `U` to a generic solution `f` of `q`: `U f` must be a nonzero
/// solution of `P`.
fn check_on_generic_solution(t: &Tower, p_op: &SkewOp, q: &ConstOp, u: &SkewOp) -> Result<()> {
    let (ext, f) = generic_solution(t, &SkewOp::from_const(q))?;
    let y = u.apply(&ext, &f);
    if y.is_zero() {
        return Err(Error::GenericityFailure);
    }
    if !p_op.apply(&ext, &y).is_zero() {
        return Err(Error::VerificationFailed("P(U f) is not zero".into()));
    }
    Ok(())
}

/// Output of [`solve_via_transfer`].
#[derive(Clone, Debug)]
pub struct TransferSolution {
    pub reduction: Reduction,
    pub transfer: SkewOp,
    /// Solution of the constant-coefficient equation.
    pub base: OdeSolution,
    /// `U(D)` applied to the base solution; a solution of `P`.
    pub value: Elem,
}

/// Experimental: solve `P(D) y = 0` by reducing to constant coefficients,
/// solving that equation and transferring its solutions back. Fails with
/// `GenericityFailure` when the transferred solution vanishes.
pub fn solve_via_transfer(
    t: &Tower,
    p_op: &SkewOp,
    j_max: u32,
    strategy: RootStrategy,
) -> Result<Vec<TransferSolution>> {
    let reduction = reduce_to_constant_coeffs(t, p_op, j_max)?;
    let transfer = transfer_operator(t, p_op, &reduction.op)?;
    let mut out = Vec::new();
    for base in solve_constant_ode(t, &reduction.op, strategy)? {
        let ext = &base.extended_tower;
        let value = transfer.apply(ext, &base.solution);
        let image = p_op.apply(ext, &value);
        let (nonzero, solves) = match &base.adjunction {
            None => (!value.is_zero(), image.is_zero()),
            Some(ctx) => {
                let rel = |e: &Elem| ctx.vanishes_relative(e, &base.solution);
                match (rel(&value), rel(&image)) {
                    (Ok(v), Ok(i)) => (!v, i),
                    (Err(ZeroDivisor(_)), _) | (_, Err(ZeroDivisor(_))) => {
                        return Err(Error::GenericityFailure)
                    }
                }
            }
        };
        if !nonzero {
            return Err(Error::GenericityFailure);
        }
        if !solves {
            return Err(Error::VerificationFailed("transferred solution does not solve P".into()));
        }
        out.push(TransferSolution { reduction: reduction.clone(), transfer: transfer.clone(), base, value });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_transfers() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let q = ConstOp::new(3, [(0, x.pow(3)), (2, t.one())]).unwrap();
        assert_eq!(transfer_operator(&t, &SkewOp::from_const(&q), &q).unwrap(), SkewOp::one(3));
        let d = SkewOp::monomial(t.one(), 1);
        let d2 = ConstOp::new(3, [(2, t.one())]).unwrap();
        assert_eq!(transfer_operator(&t, &d, &d2).unwrap(), d);
    }

    #[test]
    fn airy_transfer() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let p_op = SkewOp::new(3, vec![x.neg(), t.zero(), t.one()]);
        let q = reduce_to_constant_coeffs(&t, &p_op, 4).unwrap().op;
        let u = transfer_operator(&t, &p_op, &q).unwrap();
        assert!(u.order().unwrap() < 6);
        let sols = solve_via_transfer(&t, &p_op, 4, RootStrategy::Auto).unwrap();
        assert!(!sols.is_empty());
    }
}

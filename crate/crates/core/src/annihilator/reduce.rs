use crate::algebra::{Field, Matrix, Poly};
use crate::error::{Error, Result};
use crate::tower::{Elem, GenKind, Tower};

use super::ops::{ConstOp, PPoly, SkewOp};
use super::search::{derivation_annihilator, NAIVE_ORDER_LIMIT, SIZE_BUDGET};

/// Intermediate and final data of a reduction to constant coefficients.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Derivation annihilating every coefficient of the input operator.
    pub annihilator: PPoly,
    /// Matrix of `P(D)` on the basis `y, Dy, ..., D^(n-1) y`; column `k`
    /// holds the coordinates of `P(D)(D^k y)`.
    pub matrix: Matrix<Elem>,
    /// Monic minimal polynomial of `matrix`, with constant coefficients.
    pub min_poly: Poly<Elem>,
    /// `min_poly(P(T))`, annihilating every solution of the input.
    pub op: ConstOp,
}

/// Coordinates over `K` of elements of the span of `y, ..., D^(n-1) y`
/// for a formal solution `y` of `sum u_i D^i y = 0`.
struct Companion<'a> {
    t: &'a Tower,
    /// `u_i / u_n` for `i < n`.
    tail: Vec<Elem>,
    j_max: u32,
}

impl Companion<'_> {
    fn unit(&self) -> Vec<Elem> {
        let mut v = vec![self.t.zero(); self.tail.len()];
        v[0] = self.t.one();
        v
    }

    /// Coordinates of `D(sum w_i D^i y)`.
    fn derive(&self, w: &[Elem]) -> Vec<Elem> {
        let n = w.len();
        let mut out: Vec<Elem> = w.iter().map(|c| self.t.derive(c)).collect();
        for i in 1..n {
            out[i] = &out[i] + &w[i - 1];
        }
        let top = &w[n - 1];
        if !top.is_zero() {
            for (o, a) in out.iter_mut().zip(&self.tail) {
                *o = &*o - &(top * a);
            }
        }
        out
    }

    /// Coordinates of `op(D)(w)`, iterating `D` up to its order.
    fn apply(&self, op: &ConstOp, w: &[Elem]) -> Result<Vec<Elem>> {
        let mut acc = vec![self.t.zero(); w.len()];
        let mut cur = w.to_vec();
        let mut k = 0;
        for (i, c) in op.terms() {
            while k < *i {
                cur = self.derive(&cur);
                k += 1;
                if cur.iter().map(|e| e.size_hint()).sum::<usize>() > SIZE_BUDGET {
                    let bound = (self.t.p() as u64).saturating_pow(self.t.len() as u32);
                    return Err(Error::BoundExceeded { j_max: self.j_max, bound });
                }
            }
            for (a, x) in acc.iter_mut().zip(&cur) {
                *a = &*a + &(c * x);
            }
        }
        Ok(acc)
    }
}

/// Turns `sum u_i D^i` (order `n >= 1`) into an operator with constant
/// coefficients killing all of its solutions.
///
/// With `P(D)` a derivation that kills every `u_i`, `P(D)` maps the solution
/// space to itself; its matrix on `y, ..., D^(n-1) y` has a minimal
/// polynomial `Q` with constant coefficients, and `Q(P(D))` is the result.
pub fn reduce_to_constant_coeffs(t: &Tower, op: &SkewOp, j_max: u32) -> Result<Reduction> {
    let n = match op.order() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::PreconditionViolated("operator order must be at least 1".into())),
    };
    let lead = op.lc().unwrap();
    let annihilator = derivation_annihilator(t, op.coeffs(), j_max)?;
    let comp =
        Companion { t, tail: op.coeffs()[..n].iter().map(|u| u.checked_div(lead).unwrap()).collect(), j_max };
    let mut col = comp.apply(&annihilator.to_const_op(), &comp.unit())?;
    let mut matrix = Matrix::zeros(n, n, &t.one());
    for k in 0..n {
        if k > 0 {
            col = comp.derive(&col);
        }
        for (i, x) in col.iter().enumerate() {
            matrix.set(i, k, x.clone());
        }
    }
    let min_poly = matrix.min_poly();
    if let Some(degree) = min_poly.coeffs().iter().position(|c| !t.is_constant(c)) {
        return Err(Error::NonConstantMinPoly { degree });
    }
    let result = annihilator.to_const_op().substitute_into(&min_poly)?;
    verify(t, op, &matrix, &min_poly, &result)?;
    Ok(Reduction { annihilator, matrix, min_poly, op: result })
}

/// Applies `result` to the first member of a linear block realizing a
/// generic solution of `op`; for high orders falls back to `Q(M) = 0`.
fn verify(t: &Tower, op: &SkewOp, m: &Matrix<Elem>, q: &Poly<Elem>, result: &ConstOp) -> Result<()> {
    if result.order() > NAIVE_ORDER_LIMIT {
        if !m.eval_poly(q).is_zero() {
            return Err(Error::VerificationFailed("minimal polynomial does not annihilate".into()));
        }
        return Ok(());
    }
    let (ext, y) = generic_solution(t, op)?;
    if !op.apply(&ext, &y).is_zero() || !result.apply(&ext, &y).is_zero() {
        return Err(Error::VerificationFailed("reduced operator does not annihilate".into()));
    }
    Ok(())
}

/// Extends `t` by a linear block `(Y, Y1, ..., Y_{n-1})` with `DY_i = Y_{i+1}`
/// and `D Y_{n-1}` given by `op`, returning the tower and `Y`.
pub fn generic_solution(t: &Tower, op: &SkewOp) -> Result<(Tower, Elem)> {
    let n = op
        .order()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::PreconditionViolated("operator order must be at least 1".into()))?;
    let lead = op.lc().unwrap();
    let stem = t.fresh_name("Y");
    let names: Vec<String> = (0..n).map(|i| format!("{stem}_{i}")).collect();
    let mut m = vec![vec![t.zero(); n]; n];
    for i in 0..n - 1 {
        m[i][i + 1] = t.one();
    }
    for (j, u) in op.coeffs()[..n].iter().enumerate() {
        m[n - 1][j] = u.checked_div(lead).unwrap().neg();
    }
    let ext = t.extend_with(names, GenKind::LinearBlock(m))?;
    let y = ext.generator(t.len());
    Ok((ext, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn airy_reduction() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let op = SkewOp::new(3, vec![x.neg(), t.zero(), t.one()]);
        let r = reduce_to_constant_coeffs(&t, &op, 4).unwrap();
        let expected =
            Matrix::from_rows(vec![vec![t.one(), x.pow(2)], vec![x.clone(), t.scalar(2)]], &t.one());
        assert_eq!(r.matrix, expected);
        let c = (&x.pow(3) + &t.one()).neg();
        assert_eq!(r.min_poly, Poly::new(vec![c.clone(), t.zero(), t.one()]));
        assert_eq!(r.op.terms(), &[(0, c), (6, t.one())]);
    }

    #[test]
    fn first_order_examples() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        // D - 2X
        let op = SkewOp::new(3, vec![(&t.scalar(2) * &x).neg(), t.one()]);
        let r = reduce_to_constant_coeffs(&t, &op, 4).unwrap();
        let c = (&t.scalar(2) * &x.pow(3)).neg();
        assert_eq!(r.op.terms(), &[(0, c), (3, t.one())]);
        // D - c with c constant stays as it is
        let c = x.pow(3);
        let op = SkewOp::new(3, vec![c.neg(), t.one()]);
        let r = reduce_to_constant_coeffs(&t, &op, 4).unwrap();
        assert_eq!(r.op.terms(), &[(0, c.neg()), (1, t.one())]);
    }

    #[test]
    fn order_zero_is_rejected() {
        let t = Tower::rational(3, "X").unwrap();
        let op = SkewOp::new(3, vec![t.one()]);
        assert!(matches!(reduce_to_constant_coeffs(&t, &op, 4), Err(Error::PreconditionViolated(_))));
    }
}

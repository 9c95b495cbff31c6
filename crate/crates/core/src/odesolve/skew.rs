use crate::algebra::Field;
use crate::annihilator::SkewOp;
use crate::error::{Error, Result};
use crate::tower::{Elem, Tower};

/// Row `n` of Pascal's triangle reduced mod `p`.
fn binomials(n: usize, p: u32) -> Vec<Elem> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = (row[k - 1] + row[k]) % p as u64;
        }
        row = next;
    }
    row.into_iter().map(|c| Elem::scalar(c as i64, p)).collect()
}

/// The composition `a b` in `K[D]`, using `D c = c D + D(c)`, so that
/// `D^i c = sum_k C(i, k) D^k(c) D^(i-k)`.
pub fn skew_mul(t: &Tower, a: &SkewOp, b: &SkewOp) -> SkewOp {
    let p = t.p();
    let (Some(n), Some(m)) = (a.order(), b.order()) else {
        return SkewOp::zero(p);
    };
    let mut out = vec![t.zero(); n + m + 1];
    let mut seqs: Vec<_> = b.coeffs().iter().map(|c| t.seq(c)).collect();
    for (i, ai) in a.coeffs().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let binom = binomials(i, p);
        for (j, seq) in seqs.iter_mut().enumerate() {
            for (k, ck) in binom.iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                let d = seq.get(k);
                if d.is_zero() {
                    continue;
                }
                let slot = &mut out[i - k + j];
                *slot = &*slot + &(&(ai * ck) * d);
            }
        }
    }
    SkewOp::new(p, out)
}

/// `(q, r)` with `a = q b + r` and `order(r) < order(b)`.
pub fn skew_right_divmod(t: &Tower, a: &SkewOp, b: &SkewOp) -> Result<(SkewOp, SkewOp)> {
    let m = b.order().ok_or(Error::DivisionByZero)?;
    let lead = b.lc().unwrap();
    let p = t.p();
    let mut q = SkewOp::zero(p);
    let mut r = a.clone();
    while let Some(k) = r.order().filter(|&k| k >= m) {
        let c = r.lc().unwrap().checked_div(lead).unwrap();
        let term = SkewOp::monomial(c, k - m);
        r = r.sub(&skew_mul(t, &term, b));
        q = q.add(&term);
    }
    Ok((q, r))
}

//! Antiderivatives in logarithmic extensions.
//!
//! An element `u` with a constant-coefficient annihilator integrates either
//! inside its own field or after adjoining a chain of logarithms
//! `zeta_1, zeta_2, ...` over the base variable, which provide elements `z`
//! with `D^n z = 1`.

use crate::algebra::Field;
use crate::annihilator::{default_j_max, p_annihilator, PPoly, PowerDerivations};
use crate::error::{Error, Result};
use crate::tower::{Elem, GenKind, Tower};

/// Stem of the names given to the logarithms added by the unit chain.
pub const LOG_STEM: &str = "zeta";

/// Elements `u_0, ..., u_k` with `D^(p^j)(u_j) = 1`, and the logarithms
/// that were adjoined to build them.
#[derive(Clone, Debug)]
pub struct UnitDerivChain {
    pub chain: Vec<Elem>,
    /// `(name, u)` for each new generator `zeta` with `D zeta = Du / u`.
    pub new_generators: Vec<(String, Elem)>,
}

/// Result of [`integrate`].
#[derive(Clone, Debug)]
pub struct AntiderivResult {
    /// The input tower, extended when the antiderivative needs logarithms.
    pub extended_tower: Tower,
    /// `D(value) = u`.
    pub value: Elem,
    pub new_generators: Vec<(String, Elem)>,
    /// The annihilator of `u` the construction started from.
    pub certificate: PPoly,
}

/// Extends `t` by `k` logarithms so that `u_j` satisfies `D^(p^j)(u_j) = 1`
/// for `j = 0..=k`, starting from the base variable `u_0 = X`.
///
/// Each step adjoins `zeta = log(u_j)` and sets `u_(j+1) = zeta / c` with
/// `c = -D(u_j)^p / u_j^p`, where `D = D^(p^j)`.
pub fn build_unit_chain(t: &Tower, k: u32) -> Result<(Tower, UnitDerivChain)> {
    let base = t.base().ok_or(Error::MissingBase)?;
    let p = t.p() as u64;
    let mut tower = t.clone();
    let mut chain = vec![t.generator(base)];
    let mut new_generators = Vec::new();
    for j in 0..k {
        let u = chain.last().unwrap().clone();
        let name = tower.fresh_name(LOG_STEM);
        tower = tower.extend(&name, GenKind::Log(u.clone()))?;
        let zeta = tower.gen(&name).unwrap();
        let du = tower.pth_power_derivation(j).apply(&u);
        let c = du.pow(p).checked_div(&u.pow(p)).unwrap().neg();
        let next = zeta.checked_div(&c).unwrap();
        if !tower.pth_power_derivation(j + 1).apply(&next).is_one() {
            return Err(Error::VerificationFailed(format!("unit chain level {}", j + 1)));
        }
        chain.push(next);
        new_generators.push((name, u));
    }
    Ok((tower, UnitDerivChain { chain, new_generators }))
}

/// An extension of `t` with an element `z` such that `D^n z = 1`: with
/// `p^k >= n` minimal, `z = D^(p^k - n)(u_k)`.
pub fn unit_nth(t: &Tower, n: u64) -> Result<(Tower, Elem, UnitDerivChain)> {
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be at least 1".into()));
    }
    let p = t.p() as u64;
    let mut k = 0;
    while p.pow(k) < n {
        k += 1;
    }
    let (tower, chain) = build_unit_chain(t, k)?;
    let mut pd = PowerDerivations::new(&tower, k);
    let z = pd.apply_n(chain.chain.last().unwrap(), p.pow(k) - n)?;
    Ok((tower, z, chain))
}

/// Constants `c_0..c_(n-1)` with `w = sum c_i D^(i+1)(z)`, given
/// `D^n w = 0` and `D^n z = 1`.
///
/// Applying `D^(n-1-i)` to `w` gives `c_i` plus the terms `c_j D^(n-i+j) z`
/// with `j < i`, so the coefficients follow by back-substitution from the
/// derivatives `D^k w` and `D^k z`.
pub fn logpol_coefficients(t: &Tower, w: &Elem, z: &Elem, n: u64) -> Result<Vec<Elem>> {
    let pd = PowerDerivations::new(t, 1);
    let n = n as usize;
    let chain = |e: &Elem| -> Result<Vec<Elem>> {
        let mut ds = vec![e.clone()];
        for _ in 0..n {
            let next = t.derive(ds.last().unwrap());
            pd.check(&next)?;
            ds.push(next);
        }
        Ok(ds)
    };
    let (dw, dz) = (chain(w)?, chain(z)?);
    if !dw[n].is_zero() {
        return Err(Error::PreconditionViolated("D^n w is not zero".into()));
    }
    if !dz[n].is_one() {
        return Err(Error::PreconditionViolated("D^n z is not one".into()));
    }
    let mut cs: Vec<Elem> = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = dw[n - 1 - i].clone();
        for (j, cj) in cs.iter().enumerate() {
            if !cj.is_zero() {
                c = &c - &(cj * &dz[n - i + j]);
                pd.check(&c)?;
            }
        }
        if !t.is_constant(&c) {
            return Err(Error::Internal("non-constant logpol coefficient".into()));
        }
        cs.push(c);
    }
    let mut rest = w.clone();
    for (i, c) in cs.iter().enumerate() {
        if !c.is_zero() {
            rest = &rest - &(c * &dz[i + 1]);
        }
    }
    if !rest.is_zero() {
        return Err(Error::VerificationFailed("w is not in the span of the D^i z".into()));
    }
    Ok(cs)
}

/// [`integrate_with`] using [`default_j_max`].
pub fn integrate(t: &Tower, u: &Elem) -> Result<AntiderivResult> {
    integrate_with(t, u, default_j_max(t))
}

/// An antiderivative of `u`, in `t` itself or in a logarithmic extension.
///
/// From the annihilator, isolate its lowest-order term:
/// `D^m u = sum_(i>=1) a_i D^(m+i) u` with constant `a_i`. Then
/// `v = sum a_i D^(i-1) u` has `w = Dv - u` with `D^m w = 0`. If `w = 0`,
/// `v` is the answer; otherwise `w = D(sum c_i D^i z)` for a unit
/// element `z` and the answer is `v - sum c_i D^i z`.
pub fn integrate_with(t: &Tower, u: &Elem, j_max: u32) -> Result<AntiderivResult> {
    let certificate = p_annihilator(t, u, j_max)?;
    let op = certificate.to_const_op();
    let (m, lowest) = op.terms()[0].clone();
    let mut pd = PowerDerivations::new(t, j_max);
    let mut v = t.zero();
    for (k, a) in &op.terms()[1..] {
        let coeff = a.checked_div(&lowest).unwrap().neg();
        v = &v + &(&coeff * &pd.apply_n(u, k - m - 1)?);
        pd.check(&v)?;
    }
    let w = &t.derive(&v) - u;
    if !pd.apply_n(&w, m)?.is_zero() {
        return Err(Error::Internal("D^m w does not vanish".into()));
    }
    // D^n w = 0 holds for all n from the minimal one on
    let (mut lo, mut n) = (0, m);
    while lo < n {
        let mid = (lo + n) / 2;
        if pd.apply_n(&w, mid)?.is_zero() {
            n = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (tower, value, new_generators) = if n == 0 {
        (t.clone(), v, Vec::new())
    } else {
        let (tower, z, chain) = unit_nth(t, n)?;
        let cs = logpol_coefficients(&tower, &w, &z, n)?;
        let pd = PowerDerivations::new(&tower, j_max);
        let (mut value, mut dz) = (v, z);
        for c in &cs {
            if !c.is_zero() {
                value = &value - &(c * &dz);
                pd.check(&value)?;
            }
            dz = tower.derive(&dz);
        }
        (tower, value, chain.new_generators)
    };
    if &tower.derive(&value) != u {
        return Err(Error::VerificationFailed("derivative of the antiderivative differs".into()));
    }
    Ok(AntiderivResult { extended_tower: tower, value, new_generators, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intro(p: u32) -> (Tower, Elem, Elem) {
        let t = Tower::rational(p, "X").unwrap();
        let x = t.gen("X").unwrap();
        let t = t.extend("E", GenKind::HyperExp(&t.scalar(2) * &x)).unwrap();
        let e = t.gen("E").unwrap();
        (t, x, e)
    }

    #[test]
    fn intro_antiderivatives() {
        let (t, x, e) = intro(3);
        let r = integrate(&t, &e).unwrap();
        assert!(r.new_generators.is_empty());
        let expected = &(&t.one() - &x.pow(2)).checked_div(&x.pow(3)).unwrap() * &e;
        assert_eq!(r.value, expected);

        let (t, x, e) = intro(5);
        let r = integrate(&t, &e).unwrap();
        let num = &(&x.pow(4) - &(&t.scalar(2) * &x.pow(2))) + &t.scalar(2);
        let expected = &num.checked_div(&(&t.scalar(2) * &x.pow(5))).unwrap() * &e;
        assert_eq!(r.value, expected);
    }

    #[test]
    fn unit_chain_examples() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let (l, chain) = build_unit_chain(&t, 1).unwrap();
        let zeta = l.gen("zeta1").unwrap();
        assert_eq!(l.derive(&zeta), x.inv().unwrap());
        assert_eq!(chain.chain[1], (&x.pow(3) * &zeta).neg());
        assert!(l.derive_n(&chain.chain[1], 3).is_one());

        let (l, chain) = build_unit_chain(&t, 0).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(chain.chain, vec![x.clone()]);

        let (l, z, _) = unit_nth(&t, 2).unwrap();
        // D(-X^3 zeta) = -X^2, as D(X^3) = 0
        assert_eq!(z, x.pow(2).neg());
        assert!(l.derive_n(&z, 2).is_one());
    }

    #[test]
    fn logpol_examples() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let (l, z, _) = unit_nth(&t, 3).unwrap();
        let cs = logpol_coefficients(&l, &x.pow(2).neg(), &z, 3).unwrap();
        assert_eq!(cs, vec![l.one(), l.zero(), l.zero()]);
        let cs = logpol_coefficients(&l, &l.zero(), &z, 3).unwrap();
        assert!(cs.iter().all(|c| c.is_zero()));
        assert_eq!(logpol_coefficients(&t, &t.one(), &x, 1).unwrap(), vec![t.one()]);
        assert!(matches!(logpol_coefficients(&t, &x, &x, 1), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn power_of_base_needs_a_logarithm() {
        for p in [3u32, 5] {
            let t = Tower::rational(p, "X").unwrap();
            let x = t.gen("X").unwrap();
            let u = x.pow(p as u64 - 1);
            let r = integrate(&t, &u).unwrap();
            assert_eq!(r.new_generators, vec![("zeta1".to_string(), x.clone())]);
            let zeta = r.extended_tower.gen("zeta1").unwrap();
            assert_eq!(r.value, &x.pow(p as u64) * &zeta);
        }
    }

    #[test]
    fn exponential_of_exponential() {
        for p in [3u32, 5] {
            let t = Tower::rational(p, "X").unwrap();
            let x = t.gen("X").unwrap();
            let t = t.extend("E", GenKind::Exp(x)).unwrap();
            let e = t.gen("E").unwrap();
            let t = t.extend("F", GenKind::Exp(e.clone())).unwrap();
            let f = t.gen("F").unwrap();
            let r = integrate(&t, &f).unwrap();
            assert!(r.new_generators.is_empty());
            let expected = (&t.derive_n(&f, p as u64 - 1) - &f).checked_div(&e.pow(p as u64)).unwrap();
            assert_eq!(r.value, expected);
        }
    }

    #[test]
    fn missing_base_is_reported() {
        let t = Tower::new(3).unwrap().extend("C", GenKind::Primitive(Elem::zero(3))).unwrap();
        assert_eq!(build_unit_chain(&t, 1).unwrap_err(), Error::MissingBase);
    }
}

//! Towers of differential fields over `F_p`.
//!
//! A tower is an ordered list of transcendental generators, each with a rule
//! for its derivative. Elements are [`Elem`]s, whose generator indices refer
//! to positions in the tower; extending a tower only appends, so existing
//! elements embed unchanged.

mod derivation;
mod elem;
mod frobenius;
mod integral;
mod specialize;

use crate::algebra::{is_prime, Field};
use crate::error::{Error, Result};

pub use derivation::{DerivSeq, Derivation};
pub use elem::{Elem, Level};
pub use frobenius::FrobDecomp;

/// Name of the derivation symbol in operator syntax; not usable as a generator.
pub const DERIVATION_SYMBOL: &str = "D";

/// Derivation rule of a new generator `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// `Dt = 1`.
    Base,
    /// `Dt = f`.
    Primitive(Elem),
    /// `Dt = Du / u`, a logarithm of `u`.
    Log(Elem),
    /// `Dt = f t`.
    HyperExp(Elem),
    /// `Dt = Du t`, an exponential of `u`.
    Exp(Elem),
    /// A block `Y_0..Y_{n-1}` with `DY_i = sum_j M_ij Y_j`.
    LinearBlock(Vec<Vec<Elem>>),
}

impl GenKind {
    pub fn label(&self) -> &'static str {
        match self {
            GenKind::Base => "base",
            GenKind::Primitive(_) => "primitive",
            GenKind::Log(_) => "log",
            GenKind::HyperExp(_) => "hyperexp",
            GenKind::Exp(_) => "exp",
            GenKind::LinearBlock(_) => "linear_block",
        }
    }

    fn args(&self) -> Vec<&Elem> {
        match self {
            GenKind::Base => vec![],
            GenKind::Primitive(f) | GenKind::Log(f) | GenKind::HyperExp(f) | GenKind::Exp(f) => vec![f],
            GenKind::LinearBlock(m) => m.iter().flatten().collect(),
        }
    }
}

/// One step of the tower: the generator names it introduces and their rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub names: Vec<String>,
    pub kind: GenKind,
    /// Index of the first generator introduced by this step.
    pub first_var: usize,
}

/// A differential field `F_p(t_0, ..., t_{k-1})` with its derivation.
#[derive(Clone, Debug)]
pub struct Tower {
    p: u32,
    names: Vec<String>,
    steps: Vec<Extension>,
    derivation: Derivation,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl Tower {
    /// The constant field `F_p` with the zero derivation.
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Tower { p, names: Vec::new(), steps: Vec::new(), derivation: Derivation::new(p, Vec::new()) })
    }

    /// `F_p(X)` with `DX = 1`.
    pub fn rational(p: u32, base: &str) -> Result<Self> {
        Tower::new(p)?.extend(base, GenKind::Base)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of generators (each member of a linear block counts).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn steps(&self) -> &[Extension] {
        &self.steps
    }

    /// The step that introduced generator `var`.
    pub fn step_of(&self, var: usize) -> &Extension {
        self.steps.iter().rev().find(|s| s.first_var <= var).expect("generator index in range")
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn gen(&self, name: &str) -> Option<Elem> {
        self.index_of(name).map(|i| Elem::generator(i, self.p))
    }

    pub fn generator(&self, var: usize) -> Elem {
        assert!(var < self.len(), "generator index out of range");
        Elem::generator(var, self.p)
    }

    /// Index of the base generator (`DX = 1`), if any.
    pub fn base(&self) -> Option<usize> {
        self.steps.iter().find(|s| s.kind == GenKind::Base).map(|s| s.first_var)
    }

    pub fn scalar(&self, v: i64) -> Elem {
        Elem::scalar(v, self.p)
    }

    pub fn zero(&self) -> Elem {
        Elem::zero(self.p)
    }

    pub fn one(&self) -> Elem {
        Elem::one(self.p)
    }

    /// Whether `e` is an element of this tower.
    pub fn contains(&self, e: &Elem) -> bool {
        e.characteristic() == self.p && e.var().is_none_or(|v| v < self.len())
    }

    /// A name not yet used, built from `stem` plus a numeric suffix.
    pub fn fresh_name(&self, stem: &str) -> String {
        (1..).map(|i| format!("{stem}{i}")).find(|n| self.index_of(n).is_none()).unwrap()
    }

    pub fn extend(&self, name: &str, kind: GenKind) -> Result<Tower> {
        self.extend_with(vec![name.to_string()], kind)
    }

    pub fn extend_block(&self, names: &[&str], matrix: Vec<Vec<Elem>>) -> Result<Tower> {
        self.extend_with(names.iter().map(|s| s.to_string()).collect(), GenKind::LinearBlock(matrix))
    }

    /// Append one step. Rule arguments may only involve existing generators.
    pub fn extend_with(&self, names: Vec<String>, kind: GenKind) -> Result<Tower> {
        let first_var = self.len();
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) || name == DERIVATION_SYMBOL {
                return Err(Error::InvalidSpec(format!("invalid generator name `{name}`")));
            }
            if self.index_of(name).is_some() || names[..i].contains(name) {
                return Err(Error::NameClash(name.clone()));
            }
        }
        let label = names.join(",");
        for arg in kind.args() {
            if !self.contains(arg) {
                return Err(Error::ScopeViolation { name: label });
            }
        }
        let t = Elem::generator(first_var, self.p);
        let d = |e: &Elem| self.derivation.apply(e);
        let images = match &kind {
            GenKind::Base => {
                if self.base().is_some() {
                    return Err(Error::DuplicateBase);
                }
                vec![self.one()]
            }
            GenKind::Primitive(f) => vec![f.clone()],
            GenKind::Log(u) => {
                if u.is_zero() {
                    return Err(Error::LogOfZero(label));
                }
                vec![d(u).checked_div(u).unwrap()]
            }
            GenKind::HyperExp(f) => vec![f * &t],
            GenKind::Exp(u) => vec![&d(u) * &t],
            GenKind::LinearBlock(m) => {
                let n = names.len();
                if n == 0 || m.len() != n || m.iter().any(|row| row.len() != n) {
                    return Err(Error::InvalidSpec(format!(
                        "linear block `{label}` needs an {n}x{n} matrix"
                    )));
                }
                m.iter()
                    .map(|row| {
                        row.iter().enumerate().fold(self.zero(), |acc, (j, mij)| {
                            &acc + &(mij * &Elem::generator(first_var + j, self.p))
                        })
                    })
                    .collect()
            }
        };
        if names.len() != images.len() {
            return Err(Error::InvalidSpec(format!("`{}` rule defines exactly one generator", kind.label())));
        }
        let mut out = self.clone();
        out.names.extend(names.iter().cloned());
        out.steps.push(Extension { names, kind, first_var });
        let mut all = self.derivation.images().to_vec();
        all.extend(images);
        out.derivation = Derivation::new(self.p, all);
        Ok(out)
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn derive(&self, e: &Elem) -> Elem {
        self.derivation.apply(e)
    }

    /// `D^n(e)` by n-fold application.
    pub fn derive_n(&self, e: &Elem, n: u64) -> Elem {
        self.derivation.apply_n(e, n)
    }

    pub fn seq(&self, e: &Elem) -> DerivSeq<'_> {
        DerivSeq::new(&self.derivation, e.clone())
    }

    pub fn is_constant(&self, e: &Elem) -> bool {
        self.derive(e).is_zero()
    }

    /// `D^(p^j)` as a derivation, built by raising `D` to the `p`-th power `j` times.
    pub fn pth_power_derivation(&self, j: u32) -> Derivation {
        let mut d = self.derivation.clone();
        for _ in 0..j {
            d = d.pth_power();
        }
        d
    }

    pub fn frobenius_decompose(&self, e: &Elem) -> FrobDecomp {
        FrobDecomp::of(e, self.len(), self.p)
    }

    /// `r` with `r^p = e` when `e` is a `p`-th power in this field.
    pub fn pth_root(&self, e: &Elem) -> Option<Elem> {
        self.frobenius_decompose(e).pth_root()
    }
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
    fn intro_tower_derivatives() {
        let (t, x, e) = intro(3);
        assert_eq!(t.derive(&e), &(&t.scalar(2) * &x) * &e);
        // (1 - X^2)/X^3 * E
        let y = &(&t.one() - &x.pow(2)).checked_div(&x.pow(3)).unwrap() * &e;
        assert_eq!(t.derive(&y), e);
        // D^3 E = 2 X^3 E
        assert_eq!(t.derive_n(&e, 3), &(&t.scalar(2) * &x.pow(3)) * &e);
    }

    #[test]
    fn wilson_and_small_orders() {
        for p in [2u32, 3, 5, 7] {
            let t = Tower::rational(p, "X").unwrap();
            let x = t.gen("X").unwrap();
            assert_eq!(t.derive_n(&x.pow(p as u64 - 1), p as u64 - 1), t.scalar(-1));
        }
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        assert!(t.derive_n(&x.pow(2), 3).is_zero());
    }

    #[test]
    fn constants() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        assert!(t.is_constant(&x.pow(3)));
        assert!(!t.is_constant(&x));
        assert!(t.is_constant(&(&(&t.scalar(2) * &x.pow(3)) + &t.one())));
    }

    #[test]
    fn build_errors() {
        assert_eq!(Tower::new(4).unwrap_err(), Error::NotPrime(4));
        let t = Tower::rational(3, "X").unwrap();
        assert_eq!(t.extend("X", GenKind::Base).unwrap_err(), Error::NameClash("X".into()));
        assert_eq!(t.extend("Z", GenKind::Base).unwrap_err(), Error::DuplicateBase);
        assert!(matches!(t.extend("L", GenKind::Log(t.zero())), Err(Error::LogOfZero(_))));
        let later = Elem::generator(5, 3);
        assert!(matches!(t.extend("F", GenKind::Exp(later)), Err(Error::ScopeViolation { .. })));
        assert!(t.extend("D", GenKind::Primitive(t.one())).is_err());
    }

    #[test]
    fn extension_examples() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let l = t.extend("zeta", GenKind::Log(x.clone())).unwrap();
        assert_eq!(l.derive(&l.gen("zeta").unwrap()), x.inv().unwrap());
        let ex = t.extend("E", GenKind::Exp(x.clone())).unwrap();
        let e = ex.gen("E").unwrap();
        assert_eq!(ex.derive(&e), e);
        let (it, _, ie) = intro(3);
        let pr = it.extend("I", GenKind::Primitive(ie.clone())).unwrap();
        assert_eq!(pr.derive(&pr.gen("I").unwrap()), ie);
        // old elements embed unchanged
        assert_eq!(pr.derive(&ie), it.derive(&ie));
    }

    #[test]
    fn airy_block() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let t =
            t.extend_block(&["Y", "Y1"], vec![vec![t.zero(), t.one()], vec![x.clone(), t.zero()]]).unwrap();
        let y = t.gen("Y").unwrap();
        let y1 = t.gen("Y1").unwrap();
        assert_eq!(t.derive(&y), y1);
        assert_eq!(t.derive(&y1), &x * &y);
        assert_eq!(t.derive_n(&y, 6), &(&x.pow(3) + &t.one()) * &y);
    }

    #[test]
    fn pth_power_derivation_matches_naive() {
        let (t, x, e) = intro(3);
        let d1 = t.pth_power_derivation(1);
        let y = &(&x + &e.pow(2)).checked_div(&(&(&x * &e) + &t.one())).unwrap() * &x;
        assert_eq!(d1.apply(&y), t.derive_n(&y, 3));
        let d2 = t.pth_power_derivation(2);
        assert_eq!(d2.apply(&e), t.derive_n(&e, 9));
    }
}

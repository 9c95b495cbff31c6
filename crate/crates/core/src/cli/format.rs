//! Canonical text for elements and operators, in the syntax accepted by
//! [`super::parse`]. Terms appear in descending degree and scalars as
//! residues in `[0, p)`.

use crate::algebra::{Field, Poly};
use crate::annihilator::{ConstOp, SkewOp};
use crate::tower::{Elem, Tower, DERIVATION_SYMBOL};

/// Text plus whether it is a sum at top level.
struct Piece {
    text: String,
    is_sum: bool,
}

fn piece(e: &Elem, t: &Tower) -> Piece {
    match e {
        Elem::Scalar(c) => Piece { text: c.value().to_string(), is_sum: false },
        Elem::Rat(level) => {
            let var = t.name(level.var());
            let f = level.ratfunc();
            let num = poly_piece(f.num(), var, t);
            if f.den().is_one() {
                return num;
            }
            let den = poly_piece(f.den(), var, t);
            let atomic = f.den().coeffs().iter().filter(|c| !c.is_zero()).count() == 1
                && f.den().lc().is_some_and(|c| c.is_one());
            let num_text = if num.is_sum { format!("({})", num.text) } else { num.text };
            let den_text = if atomic { den.text } else { format!("({})", den.text) };
            Piece { text: format!("{num_text}/{den_text}"), is_sum: false }
        }
    }
}

fn poly_piece(poly: &Poly<Elem>, var: &str, t: &Tower) -> Piece {
    let mut terms = Vec::new();
    for (k, c) in poly.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let term = if k == 0 {
            piece(c, t).text
        } else if c.is_one() {
            mono
        } else {
            let cp = piece(c, t);
            if cp.is_sum {
                format!("({})*{mono}", cp.text)
            } else {
                format!("{}*{mono}", cp.text)
            }
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return Piece { text: "0".into(), is_sum: false };
    }
    let is_sum = terms.len() > 1 || (poly.degree() == Some(0) && piece(&poly.coeffs()[0], t).is_sum);
    Piece { text: terms.join("+"), is_sum }
}

/// Canonical text of an element of `t`.
pub fn format_elem(e: &Elem, t: &Tower) -> String {
    piece(e, t).text
}

/// Text of a polynomial in the indeterminate `var` with coefficients in `t`.
pub fn format_poly(poly: &Poly<Elem>, var: &str, t: &Tower) -> String {
    poly_piece(poly, var, t).text
}

pub fn format_skew(op: &SkewOp, t: &Tower) -> String {
    format_poly(&Poly::new(op.coeffs().to_vec()), DERIVATION_SYMBOL, t)
}

pub fn format_const_op(op: &ConstOp, t: &Tower) -> String {
    let mut terms = Vec::new();
    for (i, c) in op.terms().iter().rev() {
        let mono = Poly::monomial(c.clone(), *i as usize);
        terms.push(format_poly(&mono, DERIVATION_SYMBOL, t));
    }
    if terms.is_empty() {
        return "0".into();
    }
    // a sum coefficient of D^0 is printed without parentheses, which is
    // fine inside a larger sum
    terms.join("+")
}

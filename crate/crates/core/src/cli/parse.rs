//! Expression syntax: integers, generator names, `+ - * / ^` and
//! parentheses. `^` binds tightest and takes a nonnegative integer
//! exponent; unary minus binds tighter than `*` and `/`. There is no
//! implicit multiplication.

use std::fmt;

use crate::algebra::{Field, Poly};
use crate::annihilator::SkewOp;
use crate::tower::{Elem, Tower, DERIVATION_SYMBOL};

/// Largest exponent accepted on a non-scalar base.
pub const MAX_EXPONENT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    NegativeExponent,
    DivisionByZero,
    /// An operator coefficient written to the right of `D`.
    CoefficientAfterD,
}

/// A parse failure at byte offset `pos` of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error at byte {}: {m}", self.pos),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}` at byte {}", self.pos),
            ParseErrorKind::NegativeExponent => write!(f, "negative exponent at byte {}", self.pos),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero at byte {}", self.pos),
            ParseErrorKind::CoefficientAfterD => {
                write!(f, "coefficient to the right of D at byte {}; write coefficients first", self.pos)
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(String),
    Var(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u64),
}

/// An expression together with the byte offset where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub pos: usize,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                it.next();
            }
            out.push((i, Tok::Int(s)));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek().filter(|(_, d)| d.is_alphanumeric() || *d == '_') {
                s.push(d);
                it.next();
            }
            out.push((i, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            it.next();
        } else {
            return Err(syntax(i, format!("unexpected character `{c}`")));
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError { pos, kind: ParseErrorKind::Syntax(msg.into()) }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.product()?;
        while let Tok::Sym(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.product()?;
            let pos = lhs.pos;
            let expr = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Node { pos, expr };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Tok::Sym(c @ ('*' | '/')) = *self.peek() {
            let op_pos = self.pos();
            self.bump();
            let rhs = self.unary()?;
            let expr = if c == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
            lhs = Node { pos: op_pos, expr };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            let pos = self.pos();
            self.bump();
            let inner = self.unary()?;
            return Ok(Node { pos, expr: Expr::Neg(Box::new(inner)) });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let e = self.exponent()?;
        Ok(Node { pos, expr: Expr::Pow(Box::new(base), e) })
    }

    /// `INT ('^' exponent)?`, evaluated right to left.
    fn exponent(&mut self) -> Result<u64, ParseError> {
        let pos = self.pos();
        match self.bump().1 {
            Tok::Int(s) => {
                let base: u64 = s.parse().map_err(|_| syntax(pos, "exponent too large"))?;
                if *self.peek() != Tok::Sym('^') {
                    return Ok(base);
                }
                self.bump();
                let e = self.exponent()?;
                let e = u32::try_from(e).map_err(|_| syntax(pos, "exponent too large"))?;
                base.checked_pow(e).ok_or_else(|| syntax(pos, "exponent too large"))
            }
            Tok::Sym('-') => Err(ParseError { pos, kind: ParseErrorKind::NegativeExponent }),
            _ => Err(syntax(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Int(s) => Ok(Node { pos, expr: Expr::Int(s) }),
            Tok::Ident(s) => Ok(Node { pos, expr: Expr::Var(s) }),
            Tok::Sym('(') => {
                let inner = self.sum()?;
                let close = self.pos();
                if self.bump().1 != Tok::Sym(')') {
                    return Err(syntax(close, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            Tok::Sym(_) => Err(syntax(pos, "unexpected token")),
        }
    }
}

/// The syntax tree of `src`.
pub fn parse_ast(src: &str) -> Result<Node, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let node = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected token"));
    }
    Ok(node)
}

/// Integer literal reduced mod `p` digit by digit.
fn int_mod(s: &str, p: u32) -> i64 {
    s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p as u64) as i64
}

/// Lowers a tree to a tower element.
pub fn lower(node: &Node, t: &Tower) -> Result<Elem, ParseError> {
    let err = |kind| ParseError { pos: node.pos, kind };
    Ok(match &node.expr {
        Expr::Int(s) => t.scalar(int_mod(s, t.p())),
        Expr::Var(v) => t.gen(v).ok_or_else(|| err(ParseErrorKind::UnknownVariable(v.clone())))?,
        Expr::Neg(a) => lower(a, t)?.neg(),
        Expr::Add(a, b) => &lower(a, t)? + &lower(b, t)?,
        Expr::Sub(a, b) => &lower(a, t)? - &lower(b, t)?,
        Expr::Mul(a, b) => &lower(a, t)? * &lower(b, t)?,
        Expr::Div(a, b) => {
            lower(a, t)?.checked_div(&lower(b, t)?).ok_or_else(|| err(ParseErrorKind::DivisionByZero))?
        }
        Expr::Pow(a, e) => {
            let base = lower(a, t)?;
            if base.var().is_some() && *e > MAX_EXPONENT {
                return Err(err(ParseErrorKind::Syntax(format!("exponent above {MAX_EXPONENT}"))));
            }
            base.pow(*e)
        }
    })
}

/// Parses an element of `t`.
pub fn parse_expr(src: &str, t: &Tower) -> Result<Elem, ParseError> {
    lower(&parse_ast(src)?, t)
}

/// Lowers a tree to an operator: a polynomial in the symbol `D` whose
/// coefficients stand to its left.
fn lower_op(node: &Node, t: &Tower) -> Result<Poly<Elem>, ParseError> {
    let err = |kind| ParseError { pos: node.pos, kind };
    let constant = |e: Elem| Poly::constant(e);
    Ok(match &node.expr {
        Expr::Var(v) if v == DERIVATION_SYMBOL && t.index_of(v).is_none() => Poly::monomial(t.one(), 1),
        Expr::Int(_) | Expr::Var(_) => constant(lower(node, t)?),
        Expr::Neg(a) => lower_op(a, t)?.neg(),
        Expr::Add(a, b) => lower_op(a, t)?.add(&lower_op(b, t)?),
        Expr::Sub(a, b) => lower_op(a, t)?.sub(&lower_op(b, t)?),
        Expr::Mul(a, b) => {
            let (x, y) = (lower_op(a, t)?, lower_op(b, t)?);
            let y_is_scalar = y.coeffs().iter().all(|c| c.var().is_none());
            if x.degree().is_some_and(|d| d > 0) && !y_is_scalar {
                return Err(ParseError { pos: b.pos, kind: ParseErrorKind::CoefficientAfterD });
            }
            x.mul(&y)
        }
        Expr::Div(a, b) => {
            let y = lower_op(b, t)?;
            if y.degree() != Some(0) {
                let kind = if y.is_zero() {
                    ParseErrorKind::DivisionByZero
                } else {
                    ParseErrorKind::Syntax("cannot divide by an operator".into())
                };
                return Err(err(kind));
            }
            let x = lower_op(a, t)?;
            if x.degree().is_some_and(|d| d > 0) && y.coeffs()[0].var().is_some() {
                return Err(ParseError { pos: b.pos, kind: ParseErrorKind::CoefficientAfterD });
            }
            x.scale(&y.coeffs()[0].inv().unwrap())
        }
        Expr::Pow(a, e) => {
            let base = lower_op(a, t)?;
            let scalar =
                base.degree().is_none_or(|d| d == 0) && base.coeffs().iter().all(|c| c.var().is_none());
            if !scalar && *e > MAX_EXPONENT {
                return Err(err(ParseErrorKind::Syntax(format!("exponent above {MAX_EXPONENT}"))));
            }
            base.pow(*e)
        }
    })
}

/// Parses `sum a_i D^i` with coefficients written to the left of `D`,
/// e.g. `D^2 - X` or `X*D + 1`.
pub fn parse_operator(src: &str, t: &Tower) -> Result<SkewOp, ParseError> {
    let poly = lower_op(&parse_ast(src)?, t)?;
    Ok(SkewOp::new(t.p(), poly.into_coeffs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::GenKind;

    fn intro() -> Tower {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        t.extend("E", GenKind::HyperExp(&t.scalar(2) * &x)).unwrap()
    }

    #[test]
    fn expressions() {
        let t = intro();
        let x = t.gen("X").unwrap();
        let e = t.gen("E").unwrap();
        let y = parse_expr("(1-X^2)/X^3*E", &t).unwrap();
        assert_eq!(y, &(&t.one() - &x.pow(2)).checked_div(&x.pow(3)).unwrap() * &e);
        assert!(parse_expr("X^0", &t).unwrap().is_one());
        assert_eq!(parse_expr("-X^2", &t).unwrap(), x.pow(2).neg());
        assert_eq!(parse_expr("2^1^2 * X", &t).unwrap(), &t.scalar(2) * &x);
        assert_eq!(parse_expr("10", &t).unwrap(), t.one());
        assert_eq!(parse_expr("X - X - X", &t).unwrap(), x.neg());
    }

    #[test]
    fn errors_carry_positions() {
        let t = intro();
        let e = parse_expr("2X", &t).unwrap_err();
        assert_eq!((e.pos, matches!(e.kind, ParseErrorKind::Syntax(_))), (1, true));
        let e = parse_expr("X + Z", &t).unwrap_err();
        assert_eq!(e, ParseError { pos: 4, kind: ParseErrorKind::UnknownVariable("Z".into()) });
        let e = parse_expr("X^-1", &t).unwrap_err();
        assert_eq!(e, ParseError { pos: 2, kind: ParseErrorKind::NegativeExponent });
        assert_eq!(parse_expr("1/(X-X)", &t).unwrap_err().kind, ParseErrorKind::DivisionByZero);
        assert_eq!(parse_expr("(X", &t).unwrap_err().pos, 2);
        assert_eq!(parse_expr("", &t).unwrap_err().pos, 0);
        assert_eq!(parse_expr("X $", &t).unwrap_err().pos, 2);
    }

    #[test]
    fn operators() {
        let t = Tower::rational(3, "X").unwrap();
        let x = t.gen("X").unwrap();
        let op = parse_operator("D^2 - X", &t).unwrap();
        assert_eq!(op, SkewOp::new(3, vec![x.neg(), t.zero(), t.one()]));
        let op = parse_operator("(X+1)*D + 2/X*D^3", &t).unwrap();
        let c = t.scalar(2).checked_div(&x).unwrap();
        assert_eq!(op, SkewOp::new(3, vec![t.zero(), &x + &t.one(), t.zero(), c]));
        assert_eq!(parse_operator("D*X", &t).unwrap_err().kind, ParseErrorKind::CoefficientAfterD);
        assert!(parse_operator("X/D", &t).is_err());
        assert_eq!(parse_operator("D^3/X", &t).unwrap_err().kind, ParseErrorKind::CoefficientAfterD);
    }
}

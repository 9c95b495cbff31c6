//! Tower descriptions: the JSON document
//! `{"p": 3, "generators": [{"name": "X", "kind": "base"}, ...]}` and the
//! inline form `p=3; X:base; E:hyperexp(2*X)`, which desugars to it.
//! A linear block is named by its comma-separated members and takes a
//! matrix argument, e.g. `Y,Y1:linear_block([[0,1],[X,0]])`.

use serde::{Deserialize, Serialize};

use crate::tower::{Elem, GenKind, Tower};

use super::format::format_elem;
use super::parse::{lower, parse_ast, ParseError, ParseErrorKind};
use super::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u32,
    pub generators: Vec<GenSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arg: Option<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Arg {
    Expr(String),
    Matrix(Vec<Vec<String>>),
}

impl TowerSpec {
    pub fn from_json(src: &str) -> Result<Self, CliError> {
        serde_json::from_str(src).map_err(|e| CliError::Spec(format!("tower JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Reads the inline form; items are separated by `;`.
    pub fn from_inline(src: &str) -> Result<Self, CliError> {
        let mut p = None;
        let mut generators = Vec::new();
        let mut offset = 0;
        for item in src.split(';') {
            let start = offset + item.len() - item.trim_start().len();
            offset += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let at = |msg: &str| CliError::Spec(format!("inline tower at byte {start}: {msg}"));
            if let Some(v) = item.strip_prefix("p=").or_else(|| item.strip_prefix("p =")) {
                p = Some(v.trim().parse::<u32>().map_err(|_| at("p must be a positive integer"))?);
                continue;
            }
            let (name, rule) = item.split_once(':').ok_or_else(|| at("expected `name:kind`"))?;
            let rule = rule.trim();
            let (kind, arg) = match rule.find('(') {
                None => (rule, None),
                Some(i) => {
                    let inner = rule[i + 1..]
                        .strip_suffix(')')
                        .ok_or_else(|| at("missing `)` after the argument"))?
                        .trim();
                    (rule[..i].trim(), Some(inner))
                }
            };
            let arg = match arg {
                None => None,
                Some(a) if kind == "linear_block" => {
                    Some(Arg::Matrix(parse_matrix(a).ok_or_else(|| at("malformed matrix"))?))
                }
                Some(a) => Some(Arg::Expr(a.to_string())),
            };
            let name = name.split(',').map(str::trim).collect::<Vec<_>>().join(",");
            generators.push(GenSpec { name, kind: kind.to_string(), arg });
        }
        let p = p.ok_or_else(|| CliError::Spec("inline tower: missing `p=...`".into()))?;
        Ok(TowerSpec { p, generators })
    }

    pub fn to_inline(&self) -> String {
        let mut items = vec![format!("p={}", self.p)];
        for g in &self.generators {
            items.push(match &g.arg {
                None => format!("{}:{}", g.name, g.kind),
                Some(Arg::Expr(a)) => format!("{}:{}({a})", g.name, g.kind),
                Some(Arg::Matrix(m)) => {
                    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(","))).collect();
                    format!("{}:{}([{}])", g.name, g.kind, rows.join(","))
                }
            });
        }
        items.join("; ")
    }

    /// Builds the tower step by step; each argument may only mention
    /// generators defined before it.
    pub fn build(&self) -> Result<Tower, CliError> {
        let mut t = Tower::new(self.p)?;
        for (i, g) in self.generators.iter().enumerate() {
            let later: Vec<&str> = self.generators[i..].iter().flat_map(|h| h.name.split(',')).collect();
            let expr = |src: &str| -> Result<Elem, CliError> {
                lower_in_scope(src, &t, &later).map_err(|e| match e {
                    Scoped::Later => crate::Error::ScopeViolation { name: g.name.clone() }.into(),
                    Scoped::Parse(err) => {
                        CliError::Parse { context: format!("argument of `{}`", g.name), err }
                    }
                })
            };
            let single = || match &g.arg {
                Some(Arg::Expr(a)) => expr(a),
                _ => Err(CliError::Spec(format!("`{}` needs an expression argument", g.name))),
            };
            let kind = match g.kind.as_str() {
                "base" => GenKind::Base,
                "primitive" => GenKind::Primitive(single()?),
                "log" => GenKind::Log(single()?),
                "hyperexp" => GenKind::HyperExp(single()?),
                "exp" => GenKind::Exp(single()?),
                "linear_block" => match &g.arg {
                    Some(Arg::Matrix(m)) => GenKind::LinearBlock(
                        m.iter()
                            .map(|row| row.iter().map(|s| expr(s)).collect::<Result<Vec<_>, _>>())
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                    _ => return Err(CliError::Spec(format!("`{}` needs a matrix argument", g.name))),
                },
                other => return Err(CliError::Spec(format!("unknown generator kind `{other}`"))),
            };
            if matches!(kind, GenKind::Base) && g.arg.is_some() {
                return Err(CliError::Spec(format!("base generator `{}` takes no argument", g.name)));
            }
            let names = g.name.split(',').map(|s| s.trim().to_string()).collect();
            t = t.extend_with(names, kind)?;
        }
        Ok(t)
    }

    /// The description of an existing tower.
    pub fn of(t: &Tower) -> Self {
        let text = |e: &Elem| format_elem(e, t);
        let generators = t
            .steps()
            .iter()
            .map(|s| {
                let arg = match &s.kind {
                    GenKind::Base => None,
                    GenKind::Primitive(f) | GenKind::Log(f) | GenKind::HyperExp(f) | GenKind::Exp(f) => {
                        Some(Arg::Expr(text(f)))
                    }
                    GenKind::LinearBlock(m) => {
                        Some(Arg::Matrix(m.iter().map(|r| r.iter().map(text).collect()).collect()))
                    }
                };
                GenSpec { name: s.names.join(","), kind: s.kind.label().to_string(), arg }
            })
            .collect();
        TowerSpec { p: t.p(), generators }
    }
}

enum Scoped {
    Later,
    Parse(ParseError),
}

fn lower_in_scope(src: &str, t: &Tower, later: &[&str]) -> Result<Elem, Scoped> {
    let ast = parse_ast(src).map_err(Scoped::Parse)?;
    lower(&ast, t).map_err(|e| match &e.kind {
        ParseErrorKind::UnknownVariable(v) if later.contains(&v.as_str()) => Scoped::Later,
        _ => Scoped::Parse(e),
    })
}

/// `[[a,b],[c,d]]` into rows of entry texts.
fn parse_matrix(src: &str) -> Option<Vec<Vec<String>>> {
    let inner = src.trim().strip_prefix('[')?.strip_suffix(']')?;
    split_top(inner)
        .into_iter()
        .map(|row| {
            let row = row.trim().strip_prefix('[')?.strip_suffix(']')?;
            Some(split_top(row).into_iter().map(|e| e.trim().to_string()).collect())
        })
        .collect()
}

/// Splits at commas outside brackets and parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

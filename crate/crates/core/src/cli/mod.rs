//! Command-line front end: parsing, printing and the `charp` subcommands.
//!
//! Exit codes: 0 success, 2 malformed input or tower, 3 annihilator bound
//! exceeded, 4 unsupported request, 5 verification failure, 1 internal
//! error.

pub mod format;
pub mod parse;
pub mod spec;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Poly;
use crate::annihilator::{
    default_j_max, derivation_annihilator, joint_annihilator, reduce_to_constant_coeffs, ConstOp, SkewOp,
};
use crate::antideriv::integrate_with;
use crate::error::Error;
use crate::odesolve::{solve_constant_ode, solve_via_transfer, OdeSolution, RootStrategy};
use crate::tower::{Elem, Tower};

pub use format::{format_const_op, format_elem, format_poly, format_skew};
pub use parse::{parse_expr, parse_operator, ParseError, ParseErrorKind};
pub use spec::TowerSpec;

/// Indeterminate used when printing polynomials such as `A(T)` and `R(T)`.
const POLY_VAR: &str = "T";

#[derive(Debug)]
pub enum CliError {
    Parse { context: String, err: ParseError },
    Spec(String),
    Unsupported(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { context, err } => write!(f, "{context}: {err}"),
            CliError::Spec(m) => write!(f, "{m}"),
            CliError::Unsupported(m) => write!(f, "unsupported: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Spec(_) => 2,
            CliError::Unsupported(_) => 4,
            CliError::Lib(e) => match e {
                Error::BoundExceeded { .. } => 3,
                Error::NonConstantMinPoly { .. }
                | Error::NoRootWithinBound
                | Error::NoTransferFound
                | Error::MissingBase => 4,
                Error::VerificationFailed(_) | Error::GenericityFailure => 5,
                Error::Internal(_) => 1,
                _ => 2,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Roots {
    #[default]
    Auto,
    Ff,
    Formal,
}

#[derive(Debug, Parser)]
#[command(name = "charp", version, about = "Differential algebra in characteristic p")]
pub struct Args {
    /// Tower description in JSON.
    #[arg(long, global = true, value_name = "FILE")]
    pub tower: Option<PathBuf>,
    /// Tower in inline form, e.g. "p=3; X:base; E:hyperexp(2*X)".
    #[arg(long, global = true, value_name = "SPEC")]
    pub inline: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Largest j in the annihilator search; defaults to the tower length plus 3.
    #[arg(long = "jmax", global = true, env = "CHARP_JMAX")]
    pub j_max: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The n-th derivative of an expression.
    Derive {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        order: u64,
    },
    /// A constant-coefficient operator killing every given expression.
    Annihilate {
        #[arg(long, required = true, allow_hyphen_values = true)]
        expr: Vec<String>,
        /// Search for an operator without an identity term.
        #[arg(long)]
        pure: bool,
    },
    /// An antiderivative, adjoining logarithms when needed.
    Integrate {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// A constant-coefficient multiple of an operator.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Exponential solutions of a linear equation.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, value_enum, default_value_t)]
        roots: Roots,
        /// Allow operators with non-constant coefficients.
        #[arg(long)]
        experimental: bool,
    },
    /// Checks that the n-th derivative of one expression equals another.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, allow_hyphen_values = true)]
        equals: String,
        #[arg(long, default_value_t = 1)]
        order: u64,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `charp` on command-line arguments, the first being the program name.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Args::try_parse_from(args) {
        Ok(args) => run(&args),
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(args: &Args) -> Outcome {
    let result = std::panic::catch_unwind(|| execute(args))
        .unwrap_or_else(|_| Err(CliError::Lib(Error::Internal("unexpected panic".into()))));
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let code = e.exit_code();
            let stdout = match args.format {
                OutputFormat::Json => json_text(&json!({ "error": e.to_string(), "exit_code": code })),
                OutputFormat::Text => String::new(),
            };
            Outcome { code, stdout, stderr: format!("error: {e}\n") }
        }
    }
}

fn json_text(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
}

fn load_tower(args: &Args) -> Result<Tower, CliError> {
    let spec = match (&args.tower, &args.inline) {
        (Some(_), Some(_)) => return Err(CliError::Spec("give either --tower or --inline".into())),
        (Some(path), None) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| CliError::Spec(format!("cannot read {}: {e}", path.display())))?;
            TowerSpec::from_json(&src)?
        }
        (None, Some(src)) => TowerSpec::from_inline(src)?,
        (None, None) => return Err(CliError::Spec("a tower is required (--tower or --inline)".into())),
    };
    spec.build()
}

fn expr(src: &str, t: &Tower, context: &str) -> Result<Elem, CliError> {
    parse_expr(src, t).map_err(|err| CliError::Parse { context: context.into(), err })
}

fn operator(src: &str, t: &Tower) -> Result<SkewOp, CliError> {
    parse_operator(src, t).map_err(|err| CliError::Parse { context: "--op".into(), err })
}

fn op_json(op: &ConstOp, t: &Tower) -> Value {
    op.terms().iter().map(|(i, c)| json!({ "order": i, "coeff": format_elem(c, t) })).collect()
}

fn execute(args: &Args) -> Result<String, CliError> {
    let t = load_tower(args)?;
    let j_max = args.j_max.unwrap_or_else(|| default_j_max(&t));
    let fmt_e = |e: &Elem, t: &Tower| format_elem(e, t);
    let (text, value) = match &args.command {
        Command::Derive { expr: src, order } => {
            let y = t.derive_n(&expr(src, &t, "--expr")?, *order);
            let s = fmt_e(&y, &t);
            (s.clone(), json!({ "value": s }))
        }
        Command::Annihilate { expr: srcs, pure } => {
            let ys = srcs.iter().map(|s| expr(s, &t, "--expr")).collect::<Result<Vec<_>, _>>()?;
            let cert = if *pure {
                derivation_annihilator(&t, &ys, j_max)?
            } else {
                joint_annihilator(&t, &ys, j_max)?
            };
            let op = cert.to_const_op();
            let s = format_const_op(&op, &t);
            (s.clone(), json!({ "operator": s, "certificate": op_json(&op, &t) }))
        }
        Command::Integrate { expr: src } => {
            let u = expr(src, &t, "--expr")?;
            let r = integrate_with(&t, &u, j_max)?;
            let ext = &r.extended_tower;
            let s = fmt_e(&r.value, ext);
            let mut text = s.clone();
            if !r.new_generators.is_empty() {
                text.push_str(&format!("\ntower: {}", TowerSpec::of(ext).to_inline()));
            }
            let gens: Vec<Value> = r
                .new_generators
                .iter()
                .map(|(n, u)| json!({ "name": n, "dlog_of": fmt_e(u, ext) }))
                .collect();
            let value = json!({
                "value": s,
                "new_generators": gens,
                "certificate": op_json(&r.certificate.to_const_op(), ext),
                "verified": true,
                "tower": serde_json::to_value(TowerSpec::of(ext)).expect("serializable"),
            });
            (text, value)
        }
        Command::Reduce { op: src } => {
            let op = operator(src, &t)?;
            let r = reduce_to_constant_coeffs(&t, &op, j_max)?;
            let s = format_const_op(&r.op, &t);
            let value = json!({
                "operator": s,
                "terms": op_json(&r.op, &t),
                "min_poly": format_poly(&r.min_poly, POLY_VAR, &t),
                "annihilator": format_const_op(&r.annihilator.to_const_op(), &t),
            });
            (s, value)
        }
        Command::Solve { op: src, roots, experimental } => {
            let op = operator(src, &t)?;
            let strategy = match roots {
                Roots::Auto => RootStrategy::Auto,
                Roots::Ff => RootStrategy::FiniteField,
                Roots::Formal => RootStrategy::Formal,
            };
            if op.order().is_none_or(|n| n == 0) {
                return Err(CliError::Spec("--op must have positive order".into()));
            }
            if op.has_constant_coeffs(&t) {
                let q = ConstOp::from_poly(t.p(), &Poly::new(op.coeffs().to_vec()))?;
                solve_text(&solve_constant_ode(&t, &q, strategy)?, None)
            } else if *experimental {
                let sols = solve_via_transfer(&t, &op, j_max, strategy)?;
                let values: Vec<Elem> = sols.iter().map(|s| s.value.clone()).collect();
                let bases: Vec<OdeSolution> = sols.iter().map(|s| s.base.clone()).collect();
                let mut out = solve_text(&bases, Some(&values));
                if let Some(first) = sols.first() {
                    let reduced = format_const_op(&first.reduction.op, &t);
                    let transfer = format_skew(&first.transfer, &t);
                    out.0 = format!("reduced: {reduced}\ntransfer: {transfer}\n{}", out.0);
                    out.1["reduced"] = json!(reduced);
                    out.1["transfer"] = json!(transfer);
                }
                out
            } else {
                return Err(CliError::Unsupported(
                    "operator has non-constant coefficients; pass --experimental".into(),
                ));
            }
        }
        Command::Verify { d, equals, order } => {
            let a = expr(d, &t, "--d")?;
            let b = expr(equals, &t, "--equals")?;
            let da = t.derive_n(&a, *order);
            if da != b {
                return Err(CliError::Lib(Error::VerificationFailed(format!(
                    "derivative is {}",
                    fmt_e(&da, &t)
                ))));
            }
            ("ok".to_string(), json!({ "verified": true, "derivative": fmt_e(&da, &t) }))
        }
    };
    Ok(match args.format {
        OutputFormat::Text => format!("{text}\n"),
        OutputFormat::Json => json_text(&value),
    })
}

/// Text and JSON for a list of solutions; `values` replaces the printed
/// solutions when they were transferred.
fn solve_text(sols: &[OdeSolution], values: Option<&[Elem]>) -> (String, Value) {
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for (i, s) in sols.iter().enumerate() {
        let ext = &s.extended_tower;
        let y = values.map_or(&s.solution, |v| &v[i]);
        let value = format_elem(y, ext);
        let (alpha, modulus) = match &s.adjunction {
            Some(ctx) => {
                let name = ext.name(ctx.alpha).to_string();
                ("formal".to_string(), Some((name.clone(), format_poly(&ctx.modulus, &name, ext))))
            }
            None => (format_elem(&s.alpha, ext), None),
        };
        let root = match &modulus {
            Some((name, m)) => format!("{name} with {m} = 0"),
            None => alpha.clone(),
        };
        lines.push(format!("{value}  (alpha = {root}; tower: {})", TowerSpec::of(ext).to_inline()));
        entries.push(json!({
            "alpha": alpha,
            "modulus": modulus.as_ref().map(|(_, m)| m.clone()),
            "generator": s.generator,
            "value": value,
            "verified": true,
            "tower": serde_json::to_value(TowerSpec::of(ext)).expect("serializable"),
        }));
    }
    let construction = sols.first().map(|s| {
        let c = &s.construction;
        let ext = &s.extended_tower;
        json!({
            "e": c.e,
            "P": format_poly(&c.p_poly, POLY_VAR, ext),
            "A": format_poly(&c.a_poly, POLY_VAR, ext),
            "R": format_poly(&c.r_poly, POLY_VAR, ext),
        })
    });
    (lines.join("\n"), json!({ "solutions": entries, "construction": construction }))
}

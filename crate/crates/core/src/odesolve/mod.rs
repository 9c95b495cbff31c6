//! Linear differential equations.
//!
//! Equations with constant coefficients are solved by exponentials over a
//! unit element `u`, possibly with a formal root of an auxiliary polynomial.
//! For general coefficients, operators are composed and divided in the skew
//! ring `K[D]`, and solutions can be transferred from a reduced equation.

mod constant;
mod quotient;
mod skew;
mod transfer;

pub use constant::{
    euler_substitution, inseparable_split, solve_constant_ode, Construction, OdeSolution, RootStrategy,
    FF_DEGREE_BOUND,
};
pub use quotient::{QuotientCtx, ZeroDivisor};
pub use skew::{skew_mul, skew_right_divmod};
pub use transfer::{solve_via_transfer, transfer_operator, TransferSolution};

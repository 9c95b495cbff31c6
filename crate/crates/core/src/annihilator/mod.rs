//! Constant-coefficient annihilators.
//!
//! Every element of a tower built from the supported generator kinds
//! satisfies a linear differential equation whose coefficients are
//! constants. The search runs over the subfield `K^p`, in which `K` has
//! finite dimension `p^k`, so it always terminates in principle; a size
//! budget and `j_max` keep it practical.

mod ops;
mod reduce;
mod search;

pub use ops::{ConstOp, PPoly, SkewOp};
pub use reduce::{generic_solution, reduce_to_constant_coeffs, Reduction};
pub use search::{
    carlitz_coefficient, default_j_max, derivation_annihilator, joint_annihilator, p_annihilator,
    PowerDerivations, NAIVE_ORDER_LIMIT, SIZE_BUDGET,
};

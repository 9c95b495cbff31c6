pub mod algebra;
pub mod annihilator;
pub mod antideriv;
pub mod cli;
pub mod error;
pub mod odesolve;
pub mod random;
pub mod tower;

pub use error::{Error, Result};

//! a-points of the zeta functional-equation factor Δ(s), the values of ζ at
//! them, and numerical checks of their counting and mean-value asymptotics.

pub mod apoints;
pub mod complexfn;
pub mod error;
pub mod quadrature;
pub mod summation;
pub mod zetacore;

pub use apoints::{APoint, SolverConfig, TargetValue};
pub use complexfn::ComplexValue;
pub use error::{Error, Result};
pub use zetacore::ZetaEvalConfig;
pub mod cli;
pub mod tolerances;
pub mod verify;

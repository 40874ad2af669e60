pub mod cli;
pub mod connections;
pub mod error;
pub mod format;
pub mod identities;
pub mod lie;
pub mod matrix;
pub mod metric;
pub mod numeric;
pub mod par;
pub mod rational;
pub mod reductive;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
pub use lie::{generate_model, validate_lie, BracketEntry, LieAlgebra};
pub use matrix::{solve_symmetric, RatMatrix};
pub use rational::Rational;
pub use report::{ValidationReport, Violation, ViolationKind};
pub use tensor::{Tensor3, Tensor4};

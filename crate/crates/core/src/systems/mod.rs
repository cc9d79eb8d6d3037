//! Polynomial systems built from a DDE.

mod build;
mod clear;
mod hermite;

pub use build::{build_duplicated_system, build_kernel_system, rabinowitsch, ConstraintSystem, Roles};
pub use clear::clear_denominators;
pub use hermite::{
    count_roots_conditions, determinant, hermite_matrix, random_minor_combination, stickelberger_conditions,
    HermiteForm,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemsError {
    #[error("the DDE has no right-hand side")]
    MissingRhs,
    #[error("{0}")]
    Shape(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

#[cfg(test)]
mod tests;

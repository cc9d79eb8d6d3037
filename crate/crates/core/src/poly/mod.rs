//! Polynomial arithmetic: monomial orders, sparse multivariate and dense
//! univariate polynomials, resultants, gcds and interpolation.

mod gcd;
mod interp;
mod monomial;
mod multipoly;
mod ratfunc;
mod resultant;
mod univariate;

pub use gcd::{content_in, gcd, squarefree_part};
pub use interp::{interpolate, rational_interpolate, rational_reconstruct_poly};
pub use monomial::{mono_compare, Monomial, MonomialOrder, MAX_VARS};
pub use multipoly::MultiPoly;
pub use ratfunc::RatFunc;
pub use resultant::{discriminant, resultant};
pub use univariate::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable universes differ ({0} vs {1} variables)")]
    UniverseMismatch(usize, usize),
    #[error("variable {0} occurs but has no image")]
    DroppedVariable(usize),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("polynomial involves variables other than {0}")]
    NotUnivariate(usize),
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("degree too small for a discriminant")]
    DegreeTooSmall,
    #[error("repeated interpolation abscissa")]
    RepeatedAbscissa,
}

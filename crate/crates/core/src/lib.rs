//! Annihilating polynomials for discrete differential equations.

pub mod groebner;
pub mod hermite_pade;
pub mod numeric;
pub mod parser;
pub mod poly;
pub mod series;
pub mod solvers;
pub mod systems;
#[cfg(test)]
mod testutil;

pub use numeric::{Field, Fp, PrimeModulus};
pub use poly::{Monomial, MonomialOrder, MultiPoly, UniPoly};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials over the rationals.
pub type QPoly = MultiPoly<Rational>;
/// Polynomials over a word-size prime field.
pub type FpPoly = MultiPoly<Fp>;

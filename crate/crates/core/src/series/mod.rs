//! Truncated power series solutions of a DDE.

mod engine;
mod multimodular;

pub use engine::{expand_bivariate, expand_bivariate_in, expand_specializations};
pub use multimodular::expand_specializations_rational;

use thiserror::Error;

use crate::numeric::Field;
use crate::poly::{MultiPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("the DDE has no right-hand side")]
    MissingRhs,
    #[error("the t-free part of the right-hand side involves the unknown series")]
    NotFixedPoint,
    #[error("a coefficient of the DDE is not defined modulo the chosen prime")]
    BadPrime,
    #[error("divided difference order must be at least 1")]
    ZeroOrder,
}

/// `F(t, u) mod t^(N+1)`, coefficients are polynomials in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<F: Field> {
    pub coeffs: Vec<UniPoly<F>>,
}

/// `sum c_n t^n mod t^(N+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries<F: Field> {
    pub coeffs: Vec<F>,
}

impl<F: Field> BivariateSeries<F> {
    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative_u(&self) -> Self {
        BivariateSeries {
            coeffs: self.coeffs.iter().map(|c| c.derivative()).collect(),
        }
    }
}

impl<F: Field> UniSeries<F> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Product truncated to the shorter order.
    pub fn mul_trunc(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let ctx = self.coeffs[0].ctx();
        let mut out = vec![F::zero(&ctx); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                out[i + j].add_mul_assign(a, b);
            }
        }
        UniSeries { coeffs: out }
    }
}

/// `Delta_a^l` applied to every coefficient.
pub fn divided_difference<F: Field>(s: &BivariateSeries<F>, a: &F, l: usize) -> Result<BivariateSeries<F>, SeriesError> {
    if l == 0 {
        return Err(SeriesError::ZeroOrder);
    }
    let coeffs = s
        .coeffs
        .iter()
        .map(|c| {
            let mut p = c.clone();
            for _ in 0..l {
                p = p.div_linear(a).0;
            }
            p
        })
        .collect();
    Ok(BivariateSeries { coeffs })
}

/// `d^i/du^i F(t, a)`.
pub fn specialize_u<F: Field>(s: &BivariateSeries<F>, a: &F, i: usize) -> UniSeries<F> {
    let coeffs = s
        .coeffs
        .iter()
        .map(|c| {
            let mut p = c.clone();
            for _ in 0..i {
                p = p.derivative();
            }
            p.eval(a)
        })
        .collect();
    UniSeries { coeffs }
}

/// Largest `n <= N+1` with `R(t, s) = 0 mod t^n`, where `R` lives over
/// `[t, z0]`.
pub fn check_annihilation<F: Field>(r: &MultiPoly<F>, s: &UniSeries<F>) -> usize {
    assert_eq!(r.nvars(), 2, "annihilators live over [t, z0]");
    let len = s.coeffs.len();
    let ctx = r.ctx().clone();
    let by_z = r.coeffs_in(1);
    let mut acc = UniSeries {
        coeffs: vec![F::zero(&ctx); len],
    };
    for c in by_z.iter().rev() {
        acc = acc.mul_trunc(s);
        for (m, v) in c.terms() {
            let e = m.exp(0) as usize;
            if e < len {
                acc.coeffs[e].add_assign(v);
            }
        }
    }
    acc.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(len)
}

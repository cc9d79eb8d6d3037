//! The four annihilating-polynomial algorithms and their modular driver.

mod driver;
mod hybrid;
mod interp;
mod pointwise;

pub use driver::{eval_interp_drive, AlgorithmKernel, DriveOutcome, DriveParams, ModularKernel};
pub use hybrid::{discover_bidegree, solve_hybrid};
pub use pointwise::{Instance, PointError, Reduced};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::parser::DdeSpec;
use crate::poly::{content_in, squarefree_part, MonomialOrder, MultiPoly};
use crate::series::{check_annihilation, expand_specializations_rational, SeriesError};
use crate::systems::SystemsError;
use crate::{Field, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Duplication,
    Elimination,
    Geometry,
    Hybrid,
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "duplication" => Ok(Algorithm::Duplication),
            "elimination" => Ok(Algorithm::Elimination),
            "geometry" => Ok(Algorithm::Geometry),
            "hybrid" => Ok(Algorithm::Hybrid),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algorithm::Duplication => "duplication",
            Algorithm::Elimination => "elimination",
            Algorithm::Geometry => "geometry",
            Algorithm::Hybrid => "hybrid",
        };
        f.write_str(s)
    }
}

/// The variable specialized at evaluation points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalVariable {
    T,
    Z0,
}

impl FromStr for EvalVariable {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "t" => Ok(EvalVariable::T),
            "z0" => Ok(EvalVariable::Z0),
            _ => Err(format!("unknown evaluation variable `{s}` (expected t or z0)")),
        }
    }
}

impl fmt::Display for EvalVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalVariable::T => "t",
            EvalVariable::Z0 => "z0",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub variable: EvalVariable,
    pub prime_bits: u32,
    pub seed: u64,
    pub max_primes: usize,
    /// Evaluation points per prime (and per inner interpolation).
    pub max_points: usize,
    /// Extra points beyond the degree bound before a reconstruction is trusted.
    pub margin: usize,
    /// Fiber multiplicity; defaults to the number of z variables.
    pub fiber: Option<usize>,
    /// Extra inequation in the DDE variables, multiplied into the saturation.
    pub extra_saturation: Option<QPoly>,
    /// Verify the result against the series when the DDE has a right-hand side.
    pub certify: bool,
    /// Hybrid: how many times the bounds may be increased after a failed guess.
    pub max_bound_increase: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            algorithm: Algorithm::Elimination,
            variable: EvalVariable::T,
            prime_bits: 62,
            seed: 0,
            max_primes: 40,
            max_points: 600,
            margin: 2,
            fiber: None,
            extra_saturation: None,
            certify: true,
            max_bound_increase: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bidegree {
    pub b_t: usize,
    pub b_z0: usize,
}

/// Outcome of one modular evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub prime: u64,
    pub value: u64,
    pub good: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Wall time; left out of serialized output so runs compare equal.
    #[serde(skip)]
    pub micros: u64,
}

#[derive(Clone, Debug)]
pub struct AnnihilatorResult {
    /// Polynomial over the universe `[t, z0]`.
    pub r: QPoly,
    pub bidegree: Bidegree,
    /// Largest `n` with `R(t, F(t, a)) = O(t^n)` verified, when certified.
    pub certified_order: Option<usize>,
    pub algorithm: Algorithm,
    pub primes_used: usize,
    pub points: Vec<PointRecord>,
    pub diagnostics: Vec<String>,
}

impl AnnihilatorResult {
    pub fn r_string(&self) -> String {
        self.r.to_string_with(&["t", "z0"], &MonomialOrder::Lex)
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("certification failed: R(t, F(t, a)) vanishes only to order {got}, {needed} required")]
    CertificationFailed { got: usize, needed: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Systems(#[from] SystemsError),
}

/// Canonical form of an annihilating polynomial over `[t, z0]`: factors
/// depending on a single variable are dropped (unless nothing else
/// remains), repeated factors are made simple, and the result is a
/// primitive integer polynomial with positive lex-leading coefficient.
pub fn normalize_annihilator<F: Field>(r: &MultiPoly<F>) -> MultiPoly<F> {
    let mut r = drop_single_variable_factors(r);
    if r.involves(1) {
        r = squarefree_part(&r, 1);
    } else if r.involves(0) {
        r = squarefree_part(&r, 0);
    }
    r.monic()
}

pub(crate) fn drop_single_variable_factors<F: Field>(r: &MultiPoly<F>) -> MultiPoly<F> {
    let mut r = r.clone();
    for v in [1usize, 0] {
        // content free of v, i.e. factors in the other variable only
        let c = content_in(&r, v);
        if !c.is_constant() && !c.is_zero() {
            let q = r.exact_divide(&c).expect("content divides");
            if q.involves(0) || q.involves(1) {
                r = q;
            }
        }
    }
    r
}

/// Canonical rational form: [`normalize_annihilator`] then integer scaling.
pub fn normalize_rational(r: &QPoly) -> QPoly {
    normalize_annihilator(r).primitive_integer()
}

/// Order to which `r` must vanish on the series to be certified.
pub fn certification_threshold(b: Bidegree) -> usize {
    (2 * b.b_t * b.b_z0).max(40)
}

pub fn bidegree_of(r: &QPoly) -> Bidegree {
    Bidegree {
        b_t: r.degree_in(0) as usize,
        b_z0: r.degree_in(1) as usize,
    }
}

/// Verify `r(t, F(t, a)) = O(t^(n+1))` for `n` the certification threshold.
pub fn certify(dde: &DdeSpec, r: &QPoly, threshold: usize) -> Result<usize, SolveError> {
    let s = expand_specializations_rational(dde, threshold, 1)?;
    Ok(check_annihilation(r, &s[0]))
}

/// Dispatch on `opts.algorithm`.
pub fn solve(dde: &DdeSpec, opts: &SolveOptions) -> Result<AnnihilatorResult, SolveError> {
    match opts.algorithm {
        Algorithm::Hybrid => solve_hybrid(dde, opts),
        Algorithm::Geometry if dde.k != 2 => Err(SolveError::Unsupported(format!(
            "the geometry algorithm needs k = 2, got k = {}",
            dde.k
        ))),
        alg => {
            let inst = Instance::new(dde, opts)?;
            let kernel = AlgorithmKernel { inst: &inst, alg };
            let out = eval_interp_drive(&kernel, &DriveParams::from_options(opts, None))?;
            finish(dde, alg, out, opts)
        }
    }
}

pub(crate) fn finish(
    dde: &DdeSpec,
    alg: Algorithm,
    out: DriveOutcome,
    opts: &SolveOptions,
) -> Result<AnnihilatorResult, SolveError> {
    let bidegree = bidegree_of(&out.r);
    let mut certified_order = None;
    if opts.certify && dde.rhs.is_some() {
        let n = certification_threshold(bidegree);
        let got = certify(dde, &out.r, n)?;
        if got < n + 1 {
            return Err(SolveError::CertificationFailed { got, needed: n + 1 });
        }
        certified_order = Some(got);
    }
    Ok(AnnihilatorResult {
        r: out.r,
        bidegree,
        certified_order,
        algorithm: alg,
        primes_used: out.primes_used,
        points: out.points,
        diagnostics: out.diagnostics,
    })
}

/// The elimination, duplication and geometry algorithms, by name.
pub fn solve_elimination(dde: &DdeSpec, opts: &SolveOptions) -> Result<AnnihilatorResult, SolveError> {
    solve(dde, &SolveOptions { algorithm: Algorithm::Elimination, ..opts.clone() })
}

pub fn solve_duplication(dde: &DdeSpec, opts: &SolveOptions) -> Result<AnnihilatorResult, SolveError> {
    solve(dde, &SolveOptions { algorithm: Algorithm::Duplication, ..opts.clone() })
}

pub fn solve_geometry(dde: &DdeSpec, opts: &SolveOptions) -> Result<AnnihilatorResult, SolveError> {
    solve(dde, &SolveOptions { algorithm: Algorithm::Geometry, ..opts.clone() })
}

//! Evaluation–interpolation over several primes, lifted by CRT and
//! rational reconstruction.

use super::interp::{sample_and_fit, Fit, FitFailure, FitRequest};
use super::pointwise::{Instance, PointError};
use super::{drop_single_variable_factors, Algorithm, Bidegree, EvalVariable, PointRecord, SolveError};
use crate::numeric::{crt_pair, rational_reconstruct, ModularImage, PrimeStream};
use crate::poly::{squarefree_part, Monomial};
use crate::{Fp, FpPoly, MultiPoly, PrimeModulus, QPoly, Rational, UniPoly};

/// A per-point computation modulo a prime, as consumed by
/// [`eval_interp_drive`].
pub trait ModularKernel: Sync {
    /// Per-prime data; `None` marks the prime as bad.
    type Prime: Sync;
    fn prime(&self, m: &'static PrimeModulus) -> Option<Self::Prime>;
    /// Values never used as evaluation points.
    fn excluded(&self, _data: &Self::Prime, _m: &'static PrimeModulus) -> Vec<Fp> {
        Vec::new()
    }
    /// `R(v, Z)` (up to a constant) as a polynomial in the free variable.
    fn eval(&self, data: &Self::Prime, v: &Fp) -> Result<UniPoly<Fp>, PointError>;
}

pub struct AlgorithmKernel<'a> {
    pub inst: &'a Instance,
    pub alg: Algorithm,
}

impl ModularKernel for AlgorithmKernel<'_> {
    type Prime = super::pointwise::Reduced;

    fn prime(&self, m: &'static PrimeModulus) -> Option<Self::Prime> {
        self.inst.reduce(m)
    }

    fn excluded(&self, data: &Self::Prime, _m: &'static PrimeModulus) -> Vec<Fp> {
        self.inst.excluded(data)
    }

    fn eval(&self, data: &Self::Prime, v: &Fp) -> Result<UniPoly<Fp>, PointError> {
        self.inst.eval(self.alg, data, v)
    }
}

#[derive(Clone, Debug)]
pub struct DriveOutcome {
    /// Primitive integer polynomial over `[t, z0]`.
    pub r: QPoly,
    pub primes_used: usize,
    pub points: Vec<PointRecord>,
    pub diagnostics: Vec<String>,
}

/// Driver parameters.
#[derive(Clone, Debug)]
pub struct DriveParams {
    pub variable: EvalVariable,
    pub prime_bits: u32,
    pub seed: u64,
    pub max_primes: usize,
    pub max_points: usize,
    pub margin: usize,
    /// Known bidegree of the result, used to size the first sample.
    pub hint: Option<Bidegree>,
}

impl DriveParams {
    pub fn from_options(opts: &super::SolveOptions, hint: Option<Bidegree>) -> Self {
        DriveParams {
            variable: opts.variable,
            prime_bits: opts.prime_bits,
            seed: opts.seed,
            max_primes: opts.max_primes,
            max_points: opts.max_points,
            margin: opts.margin,
            hint,
        }
    }
}

/// Run `kernel` at random points modulo successive primes, interpolate a
/// bivariate image per prime and lift. Stops when two consecutive
/// reconstructions agree.
pub fn eval_interp_drive<K: ModularKernel>(kernel: &K, params: &DriveParams) -> Result<DriveOutcome, SolveError> {
    let mut primes = PrimeStream::new(params.prime_bits, params.seed)
        .map_err(|e| SolveError::Unsupported(e.to_string()))?;
    let mut points = Vec::new();
    let mut diagnostics = Vec::new();
    let mut acc: Option<(Vec<Monomial>, Vec<ModularImage>)> = None;
    let mut previous: Option<QPoly> = None;
    let mut primes_used = 0;
    let mut initial = match params.hint {
        Some(b) => {
            let d = match params.variable {
                EvalVariable::T => b.b_t,
                EvalVariable::Z0 => b.b_z0,
            };
            2 * d + params.margin + 4
        }
        None => 6,
    };
    for _ in 0..params.max_primes {
        let p = primes.next_prime().map_err(|e| SolveError::BudgetExhausted(e.to_string()))?;
        let m = PrimeModulus::new(p).expect("prime");
        let Some(data) = kernel.prime(m) else {
            diagnostics.push(format!("prime {p} skipped: bad reduction"));
            continue;
        };
        let excluded = kernel.excluded(&data, m);
        let req = FitRequest {
            m,
            seed: params.seed,
            excluded: &excluded,
            initial,
            max_points: params.max_points,
            margin: params.margin,
        };
        let f = |v: &Fp| -> Result<Vec<Fp>, String> {
            match kernel.eval(&data, v) {
                Ok(u) if u.is_zero() => Err(PointError::ZeroEliminant.to_string()),
                Ok(u) => Ok(u.monic().into_coeffs()),
                Err(e) => Err(e.to_string()),
            }
        };
        let fit = match sample_and_fit(&req, f, &mut points) {
            Ok(fit) => fit,
            Err(FitFailure::NoGoodPoints) => {
                let zero = points
                    .iter()
                    .rev()
                    .take_while(|r| r.prime == p)
                    .any(|r| r.reason.as_deref() == Some(&PointError::ZeroEliminant.to_string()));
                return Err(if zero {
                    SolveError::AssumptionViolated("the eliminant vanishes identically (finiteness fails)".into())
                } else {
                    SolveError::AssumptionViolated(format!("no good evaluation point modulo {p}"))
                });
            }
            Err(FitFailure::Budget) => {
                return Err(SolveError::BudgetExhausted(format!(
                    "{} evaluation points modulo {p} did not determine the image",
                    params.max_points
                )))
            }
        };
        initial = fit.points_needed(params.margin);
        primes_used += 1;
        let image = normalize_image(&bivariate(&fit, params.variable));
        let (support, residues): (Vec<Monomial>, Vec<u64>) =
            image.terms().iter().map(|(mono, c)| (*mono, c.value())).unzip();
        acc = match acc.take() {
            Some((s, imgs)) if s == support => Some((
                s,
                imgs.iter()
                    .zip(&residues)
                    .map(|(x, r)| crt_pair(x, &ModularImage::new(*r, p)).expect("distinct primes"))
                    .collect(),
            )),
            Some((s, imgs)) if s.len() >= support.len() => {
                diagnostics.push(format!("prime {p} discarded: support differs from the previous primes"));
                Some((s, imgs))
            }
            other => {
                if other.is_some() {
                    diagnostics.push(format!("primes before {p} discarded: support grew"));
                    previous = None;
                }
                Some((support, residues.iter().map(|r| ModularImage::new(*r, p)).collect()))
            }
        };
        let (s, imgs) = acc.as_ref().expect("set above");
        let rec: Option<Vec<(Monomial, Rational)>> = s
            .iter()
            .zip(imgs)
            .map(|(mono, img)| rational_reconstruct(img).map(|c| (*mono, c)))
            .collect();
        let Some(rec) = rec else {
            previous = None;
            continue;
        };
        let r = QPoly::from_terms(&(), 2, rec);
        if previous.as_ref() == Some(&r) {
            return Ok(DriveOutcome {
                r: r.primitive_integer(),
                primes_used,
                points,
                diagnostics,
            });
        }
        previous = Some(r);
    }
    Err(SolveError::BudgetExhausted(format!(
        "no stable reconstruction after {} primes",
        params.max_primes
    )))
}

/// `den(v) Z^d + sum num_j(v) Z^j` over `[t, z0]`.
fn bivariate(fit: &Fit, variable: EvalVariable) -> FpPoly {
    let ctx = *fit.den.ctx();
    let (ev, free) = match variable {
        EvalVariable::T => (0, 1),
        EvalVariable::Z0 => (1, 0),
    };
    let mut out = FpPoly::zero(&ctx, 2);
    for (j, c) in fit.num.iter().enumerate() {
        let cv = MultiPoly::from_univariate(c, ev, 2);
        out = &out + &(&cv * &MultiPoly::var(&ctx, 2, free).pow(j as u32));
    }
    out
}

/// Canonical modular image: single-variable factors dropped, squarefree,
/// lex-leading coefficient one.
fn normalize_image(r: &FpPoly) -> FpPoly {
    let r = drop_single_variable_factors(r);
    let r = if r.involves(1) {
        squarefree_part(&r, 1)
    } else if r.involves(0) {
        squarefree_part(&r, 0)
    } else {
        r
    };
    r.monic()
}

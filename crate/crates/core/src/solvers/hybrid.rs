//! Bidegree discovery and the guess-and-prove algorithm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pointwise::Instance;
use super::{
    certification_threshold, drop_single_variable_factors, Algorithm, AnnihilatorResult, Bidegree, EvalVariable,
    PointRecord, SolveError, SolveOptions,
};
use crate::hermite_pade::{guess_algebraic, prove_guess, GuessError, GuessProblem};
use crate::numeric::PrimeStream;
use crate::parser::DdeSpec;
use crate::series::expand_specializations_rational;
use crate::PrimeModulus;

const DISCOVERY_ATTEMPTS: usize = 12;

/// Degree of the specialized eliminant in the free variable, accepted once
/// two consecutive random points agree.
fn discover_degree(
    dde: &DdeSpec,
    opts: &SolveOptions,
    variable: EvalVariable,
    log: &mut Vec<PointRecord>,
) -> Result<usize, SolveError> {
    let inst = Instance::new(dde, &SolveOptions { variable, ..opts.clone() })?;
    let salt = match variable {
        EvalVariable::T => 0x7a11,
        EvalVariable::Z0 => 0x2e40,
    };
    let mut primes =
        PrimeStream::new(opts.prime_bits, opts.seed ^ salt).map_err(|e| SolveError::Unsupported(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ salt);
    let mut last: Option<usize> = None;
    for _ in 0..DISCOVERY_ATTEMPTS {
        let p = primes.next_prime().map_err(|e| SolveError::BudgetExhausted(e.to_string()))?;
        let m = PrimeModulus::new(p).expect("prime");
        let Some(red) = inst.reduce(m) else { continue };
        let excluded = inst.excluded(&red);
        let v = loop {
            let v = m.elem(rng.gen_range(1..p));
            if !excluded.contains(&v) {
                break v;
            }
        };
        let start = std::time::Instant::now();
        let out = inst.eval(Algorithm::Elimination, &red, &v);
        let micros = start.elapsed().as_micros() as u64;
        match out {
            Ok(u) => {
                let d = u.degree().unwrap_or(0);
                log.push(PointRecord {
                    prime: p,
                    value: v.value(),
                    good: true,
                    reason: None,
                    micros,
                });
                if last == Some(d) {
                    return Ok(d);
                }
                last = Some(d);
            }
            Err(e) => {
                log.push(PointRecord {
                    prime: p,
                    value: v.value(),
                    good: false,
                    reason: Some(e.to_string()),
                    micros,
                });
                last = None;
            }
        }
    }
    Err(SolveError::BudgetExhausted(format!(
        "no two consecutive points agreed on the degree in {} after {DISCOVERY_ATTEMPTS} attempts",
        match variable {
            EvalVariable::T => "z0",
            EvalVariable::Z0 => "t",
        }
    )))
}

/// Degree bounds of the annihilating polynomial from specialized modular
/// runs of the elimination algorithm.
pub fn discover_bidegree(dde: &DdeSpec, opts: &SolveOptions) -> Result<Bidegree, SolveError> {
    let mut log = Vec::new();
    discover_bidegree_logged(dde, opts, &mut log)
}

pub(crate) fn discover_bidegree_logged(
    dde: &DdeSpec,
    opts: &SolveOptions,
    log: &mut Vec<PointRecord>,
) -> Result<Bidegree, SolveError> {
    let b_z0 = discover_degree(dde, opts, EvalVariable::T, log)?;
    let b_t = discover_degree(dde, opts, EvalVariable::Z0, log)?;
    Ok(Bidegree { b_t, b_z0 })
}

/// Bounds, series, guess, certification.
pub fn solve_hybrid(dde: &DdeSpec, opts: &SolveOptions) -> Result<AnnihilatorResult, SolveError> {
    if dde.rhs.is_none() {
        return Err(SolveError::Unsupported("the hybrid algorithm needs the right-hand side".into()));
    }
    let mut points = Vec::new();
    let mut b = discover_bidegree_logged(dde, opts, &mut points)?;
    let mut diagnostics = vec![format!("bidegree bounds ({}, {})", b.b_t, b.b_z0)];
    let mut series = None;
    for attempt in 0..=opts.max_bound_increase {
        if attempt > 0 {
            b = Bidegree {
                b_t: b.b_t + 1,
                b_z0: b.b_z0 + 1,
            };
            diagnostics.push(format!("retrying with bounds ({}, {})", b.b_t, b.b_z0));
        }
        let n = certification_threshold(b).max((b.b_t + 1) * (b.b_z0 + 1));
        if series.as_ref().is_none_or(|s: &crate::series::UniSeries<_>| s.coeffs.len() < n + 1) {
            series = Some(expand_specializations_rational(dde, n, 1)?.remove(0));
        }
        let s = series.as_ref().expect("set above");
        // every computed term is matched, so low matching orders cannot
        // admit spurious equations
        let prob = GuessProblem::new(s.clone(), b)
            .and_then(|p| p.with_matching_order(s.coeffs.len()))
            .map_err(|e| SolveError::Unsupported(e.to_string()))?;
        let m = match guess_algebraic(&prob) {
            Ok(m) => m,
            Err(GuessError::NoSolution) => continue,
            Err(e) => return Err(SolveError::Unsupported(e.to_string())),
        };
        let m = drop_single_variable_factors(&m).primitive_integer();
        let bidegree = super::bidegree_of(&m);
        let threshold = certification_threshold(bidegree) + 1;
        let verdict = prove_guess(&m, s, threshold);
        if !verdict.certified {
            return Err(SolveError::CertificationFailed {
                got: verdict.order,
                needed: threshold,
            });
        }
        return Ok(AnnihilatorResult {
            r: m,
            bidegree,
            certified_order: Some(verdict.order),
            algorithm: Algorithm::Hybrid,
            primes_used: 0,
            points,
            diagnostics,
        });
    }
    Err(SolveError::AssumptionViolated(format!(
        "no algebraic equation found up to bounds ({}, {})",
        b.b_t, b.b_z0
    )))
}

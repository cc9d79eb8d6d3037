//! Guessing an algebraic equation for a truncated series and checking it.

use thiserror::Error;

use crate::numeric::{crt_pair, rational_reconstruct, reduce_rational, ModularImage, PrimeStream};
use crate::poly::Monomial;
use crate::series::{check_annihilation, UniSeries};
use crate::solvers::Bidegree;
use crate::{Field, Fp, PrimeModulus, QPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessError {
    #[error("the series has {have} coefficients, {need} are needed")]
    TooShort { have: usize, need: usize },
    #[error("no nonzero polynomial within the bounds matches the series")]
    NoSolution,
}

/// A truncated series with degree bounds for the sought equation.
#[derive(Clone, Debug)]
pub struct GuessProblem {
    pub series: UniSeries<Rational>,
    pub bounds: Bidegree,
    /// `M(t, s) = O(t^matching_order)` is required from a guess.
    pub matching_order: usize,
    /// `M(t, s) = O(t^threshold)` is required to accept it.
    pub threshold: usize,
}

impl GuessProblem {
    /// Matching order `(b_t+1)(b_z0+1) - 1`, threshold `2 b_t b_z0 + 1`.
    pub fn new(series: UniSeries<Rational>, bounds: Bidegree) -> Result<Self, GuessError> {
        let matching_order = (bounds.b_t + 1) * (bounds.b_z0 + 1) - 1;
        let threshold = 2 * bounds.b_t * bounds.b_z0 + 1;
        let need = matching_order.max(threshold);
        if series.coeffs.len() < need {
            return Err(GuessError::TooShort {
                have: series.coeffs.len(),
                need,
            });
        }
        Ok(GuessProblem {
            series,
            bounds,
            matching_order,
            threshold,
        })
    }

    /// Same series and bounds with another matching order.
    pub fn with_matching_order(mut self, order: usize) -> Result<Self, GuessError> {
        if self.series.coeffs.len() < order {
            return Err(GuessError::TooShort {
                have: self.series.coeffs.len(),
                need: order,
            });
        }
        self.matching_order = order;
        Ok(self)
    }
}

/// Columns `t^i z0^j`, ascending under lex with `z0` above `t`.
fn columns(b: Bidegree) -> Vec<(usize, usize)> {
    let mut c = Vec::with_capacity((b.b_t + 1) * (b.b_z0 + 1));
    for j in 0..=b.b_z0 {
        for i in 0..=b.b_t {
            c.push((i, j));
        }
    }
    c
}

/// Rows `n < order`, columns as in [`columns`]: `[t^n] t^i s^j`.
fn system<F: Field>(ctx: &F::Ctx, s: &[F], b: Bidegree, order: usize) -> Vec<Vec<F>> {
    let mut powers: Vec<Vec<F>> = vec![(0..order).map(|n| if n == 0 { F::one(ctx) } else { F::zero(ctx) }).collect()];
    for j in 1..=b.b_z0 {
        let prev = &powers[j - 1];
        let mut next = vec![F::zero(ctx); order];
        for (a, pa) in prev.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (c, sc) in s.iter().enumerate().take(order - a) {
                next[a + c].add_mul_assign(pa, sc);
            }
        }
        powers.push(next);
    }
    let cols = columns(b);
    (0..order)
        .map(|n| {
            cols.iter()
                .map(|&(i, j)| if n >= i { powers[j][n - i].clone() } else { F::zero(ctx) })
                .collect()
        })
        .collect()
}

/// Kernel vector attached to the first free column of the reduced row
/// echelon form, scaled to one on that column.
fn first_free_kernel_vector<F: Field>(ctx: &F::Ctx, mut rows: Vec<Vec<F>>, ncols: usize) -> Option<(usize, Vec<F>)> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            // free column: kernel vector from the pivots found so far
            let mut v = vec![F::zero(ctx); ncols];
            v[c] = F::one(ctx);
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[pr][c].neg();
            }
            return Some((c, v));
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for e in rows[r].iter_mut() {
            e.mul_assign(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (e, pe) in row.iter_mut().zip(&pivot_row) {
                e.sub_assign(&f.mul(pe));
            }
        }
        pivots.push(c);
        r += 1;
    }
    None
}

fn to_poly(b: Bidegree, v: &[Rational]) -> QPoly {
    let terms = columns(b)
        .into_iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j), c)| (Monomial::from_exps(&[i as u32, j as u32]), c.clone()))
        .collect();
    QPoly::from_terms(&(), 2, terms).primitive_integer()
}

const GUESS_PRIME_BITS: u32 = 62;
const MAX_GUESS_PRIMES: usize = 64;

/// A nonzero `M` over `[t, z0]` with `deg_t M <= b_t`, `deg_z0 M <= b_z0`
/// and `M(t, s) = O(t^matching_order)`, chosen with the smallest leading
/// monomial under lex `z0 > t`. The kernel is computed modulo word-size
/// primes and lifted; the lifted candidate is checked over the rationals.
pub fn guess_algebraic(prob: &GuessProblem) -> Result<QPoly, GuessError> {
    let b = prob.bounds;
    let order = prob.matching_order;
    let ncols = (b.b_t + 1) * (b.b_z0 + 1);
    let s = &prob.series.coeffs[..order.min(prob.series.coeffs.len())];
    let mut primes = PrimeStream::new(GUESS_PRIME_BITS, 0x9e55).expect("valid bit size");
    let mut acc: Option<(usize, Vec<ModularImage>)> = None;
    let mut previous: Option<Vec<Rational>> = None;
    for _ in 0..MAX_GUESS_PRIMES {
        let p = primes.next_prime().expect("62-bit primes are plentiful");
        let m = PrimeModulus::new(p).expect("prime");
        let Some(sp) = s.iter().map(|c| reduce_rational(m, c)).collect::<Option<Vec<Fp>>>() else {
            continue;
        };
        let Some((col, v)) = first_free_kernel_vector(&m, system(&m, &sp, b, order), ncols) else {
            // full column rank modulo p forces it over the rationals
            return Err(GuessError::NoSolution);
        };
        acc = match acc.take() {
            Some((c, imgs)) if c == col => Some((
                c,
                imgs.iter()
                    .zip(&v)
                    .map(|(x, r)| crt_pair(x, &ModularImage::new(r.value(), p)).expect("distinct primes"))
                    .collect(),
            )),
            // the rank drops modulo unlucky primes, moving the free column left
            Some((c, imgs)) if c > col => Some((c, imgs)),
            _ => Some((col, v.iter().map(|r| ModularImage::new(r.value(), p)).collect())),
        };
        let (_, imgs) = acc.as_ref().expect("set above");
        let rec: Option<Vec<Rational>> = imgs.iter().map(rational_reconstruct).collect();
        match rec {
            Some(rec) if previous.as_ref() == Some(&rec) => {
                let cand = to_poly(b, &rec);
                if check_annihilation(&cand, &UniSeries { coeffs: s.to_vec() }) >= order {
                    return Ok(cand);
                }
                previous = None;
            }
            other => previous = other,
        }
    }
    exact_guess(prob)
}

fn exact_guess(prob: &GuessProblem) -> Result<QPoly, GuessError> {
    let b = prob.bounds;
    let ncols = (b.b_t + 1) * (b.b_z0 + 1);
    let rows = system(&(), &prob.series.coeffs, b, prob.matching_order);
    first_free_kernel_vector(&(), rows, ncols)
        .map(|(_, v)| to_poly(b, &v))
        .ok_or(GuessError::NoSolution)
}

/// Outcome of [`prove_guess`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub certified: bool,
    /// Largest `n` with `M(t, s) = O(t^n)` within the truncation.
    pub order: usize,
}

/// Certify `m` when `M(t, s) = O(t^threshold)`.
pub fn prove_guess(m: &QPoly, series: &UniSeries<Rational>, threshold: usize) -> Verdict {
    let order = check_annihilation(m, series);
    Verdict {
        certified: !m.is_zero() && order >= threshold && series.coeffs.len() >= threshold,
        order,
    }
}

#[cfg(test)]
mod tests;

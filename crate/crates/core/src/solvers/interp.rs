//! Sampling a family of monic univariate images at random points and
//! fitting their coefficients as rational functions of the point.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::PointRecord;
use crate::poly::{rational_interpolate, UniPoly};
use crate::{Field, Fp, PrimeModulus};

/// Points kept aside to check a fit.
const HOLDOUT: usize = 2;

/// `coeff_j(v) = num[j](v) / den(v)`, with `den` monic.
#[derive(Clone, Debug)]
pub struct Fit {
    pub den: UniPoly<Fp>,
    pub num: Vec<UniPoly<Fp>>,
}

impl Fit {
    /// Points that sufficed for this fit, used as a first guess next time.
    pub fn points_needed(&self, margin: usize) -> usize {
        let dd = self.den.degree().unwrap_or(0);
        let dn = self.num.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
        dn + dd + margin + 2 + HOLDOUT
    }
}

pub struct FitRequest<'a> {
    pub m: &'static PrimeModulus,
    pub seed: u64,
    pub excluded: &'a [Fp],
    pub initial: usize,
    pub max_points: usize,
    pub margin: usize,
}

pub enum FitFailure {
    /// The point budget ran out before a fit was confirmed.
    Budget,
    /// No good point at all.
    NoGoodPoints,
}

/// Evaluate `f` at fresh random points until each coordinate of the
/// (majority-length) result vectors is confirmed as a rational function.
/// Points whose vector length differs from the majority are reported bad.
pub fn sample_and_fit<E>(
    req: &FitRequest<'_>,
    f: E,
    log: &mut Vec<PointRecord>,
) -> Result<Fit, FitFailure>
where
    E: Fn(&Fp) -> Result<Vec<Fp>, String> + Sync,
{
    let m = req.m;
    let p = m.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed ^ p.rotate_left(17));
    let mut used: HashSet<u64> = req.excluded.iter().map(Fp::value).collect();
    let mut samples: Vec<(Fp, Result<Vec<Fp>, String>, u64)> = Vec::new();
    let mut want = req.initial.max(HOLDOUT + 2);
    loop {
        let budget_hit = want > req.max_points;
        want = want.min(req.max_points);
        let mut fresh = Vec::new();
        while samples.len() + fresh.len() < want {
            if used.len() as u64 >= p - 1 {
                break;
            }
            let v = rng.gen_range(1..p);
            if used.insert(v) {
                fresh.push(m.elem(v));
            }
        }
        let results: Vec<(Fp, Result<Vec<Fp>, String>, u64)> = fresh
            .into_par_iter()
            .map(|v| {
                let start = Instant::now();
                let r = f(&v);
                (v, r, start.elapsed().as_micros() as u64)
            })
            .collect();
        samples.extend(results);
        if let Some(fit) = try_fit(m, &samples, req.margin) {
            record(log, p, &samples, Some(fit.1));
            return Ok(fit.0);
        }
        if budget_hit || samples.len() >= req.max_points || used.len() as u64 >= p - 1 {
            let len = majority_len(&samples);
            record(log, p, &samples, len);
            return Err(if len.is_none() { FitFailure::NoGoodPoints } else { FitFailure::Budget });
        }
        want = samples.len() + (samples.len() / 2).max(2);
    }
}

fn record(log: &mut Vec<PointRecord>, p: u64, samples: &[(Fp, Result<Vec<Fp>, String>, u64)], len: Option<usize>) {
    for (v, r, micros) in samples {
        let (good, reason) = match r {
            Err(e) => (false, Some(e.clone())),
            Ok(c) if Some(c.len()) != len => (
                false,
                Some(format!("degree {} differs from the majority", c.len().saturating_sub(1))),
            ),
            Ok(_) => (true, None),
        };
        log.push(PointRecord {
            prime: p,
            value: v.value(),
            good,
            reason,
            micros: *micros,
        });
    }
}

/// Most common vector length among good samples; ties go to the longer one.
fn majority_len(samples: &[(Fp, Result<Vec<Fp>, String>, u64)]) -> Option<usize> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for (_, r, _) in samples {
        if let Ok(c) = r {
            match counts.iter_mut().find(|(l, _)| *l == c.len()) {
                Some(e) => e.1 += 1,
                None => counts.push((c.len(), 1)),
            }
        }
    }
    counts.into_iter().max_by_key(|&(l, n)| (n, l)).map(|(l, _)| l)
}

fn try_fit(
    m: &'static PrimeModulus,
    samples: &[(Fp, Result<Vec<Fp>, String>, u64)],
    margin: usize,
) -> Option<(Fit, usize)> {
    let len = majority_len(samples)?;
    let good: Vec<(&Fp, &Vec<Fp>)> = samples
        .iter()
        .filter_map(|(v, r, _)| match r {
            Ok(c) if c.len() == len => Some((v, c)),
            _ => None,
        })
        .collect();
    if good.len() < HOLDOUT + 2 {
        return None;
    }
    let (fit_pts, check) = good.split_at(good.len() - HOLDOUT);
    let mut parts = Vec::with_capacity(len);
    for j in 0..len {
        let pts: Vec<(Fp, Fp)> = fit_pts.iter().map(|(v, c)| (**v, c[j])).collect();
        let (n, d) = rational_interpolate(&m, &pts, margin).ok()??;
        parts.push((n, d));
    }
    let mut den = UniPoly::one(&m);
    for (_, d) in &parts {
        let g = den.gcd(d);
        den = &den * &d.exact_div(&g).ok()?;
    }
    let num: Vec<UniPoly<Fp>> = parts
        .iter()
        .map(|(n, d)| Some(n * &den.exact_div(d).ok()?))
        .collect::<Option<_>>()?;
    for (v, c) in check {
        let dv = den.eval(v);
        if num.iter().zip(c.iter()).any(|(n, cj)| n.eval(v) != dv.mul(cj)) {
            return None;
        }
    }
    Some((Fit { den, num }, len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_rational_coefficients() {
        let m = PrimeModulus::new(1_000_003).unwrap();
        // coefficients (v^2 + 1)/(v - 3) and 5 v
        let f = |v: &Fp| -> Result<Vec<Fp>, String> {
            let d = v.sub(&m.elem(3));
            let a = v.mul(v).add(&m.elem(1));
            Ok(vec![Field::div(&a, &d).ok_or("pole")?, v.mul(&m.elem(5)), m.elem(1)])
        };
        let req = FitRequest {
            m,
            seed: 1,
            excluded: &[],
            initial: 4,
            max_points: 100,
            margin: 2,
        };
        let mut log = Vec::new();
        let fit = sample_and_fit(&req, f, &mut log).ok().unwrap();
        assert_eq!(fit.den, UniPoly::from_i64s(&m, &[-3, 1]));
        assert_eq!(fit.num[0], UniPoly::from_i64s(&m, &[1, 0, 1]));
        assert_eq!(fit.num[1], UniPoly::from_i64s(&m, &[0, -15, 5]));
        assert_eq!(fit.num[2], fit.den);
        assert!(log.iter().all(|r| r.good));
    }

    #[test]
    fn minority_lengths_are_bad_points() {
        let m = PrimeModulus::new(10_007).unwrap();
        let f = |v: &Fp| -> Result<Vec<Fp>, String> {
            if v.value() % 7 == 0 {
                Ok(vec![m.elem(1)])
            } else if v.value() % 11 == 0 {
                Err("planted failure".into())
            } else {
                Ok(vec![v.clone(), m.elem(1)])
            }
        };
        let req = FitRequest {
            m,
            seed: 3,
            excluded: &[],
            initial: 40,
            max_points: 200,
            margin: 2,
        };
        let mut log = Vec::new();
        let fit = sample_and_fit(&req, f, &mut log).ok().unwrap();
        assert_eq!(fit.num.len(), 2);
        for r in &log {
            assert_eq!(r.good, r.value % 7 != 0 && r.value % 11 != 0);
        }
    }

    #[test]
    fn budget_is_respected() {
        let m = PrimeModulus::new(10_007).unwrap();
        // degree 30 numerator cannot be fitted from 20 points
        let f = |v: &Fp| -> Result<Vec<Fp>, String> { Ok(vec![v.pow(30), m.elem(1)]) };
        let req = FitRequest {
            m,
            seed: 5,
            excluded: &[],
            initial: 4,
            max_points: 20,
            margin: 2,
        };
        let mut log = Vec::new();
        assert!(matches!(sample_and_fit(&req, f, &mut log), Err(FitFailure::Budget)));
        assert_eq!(log.len(), 20);
    }
}

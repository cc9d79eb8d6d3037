//! Univariate interpolation and rational function reconstruction.

use super::{PolyError, UniPoly};
use crate::numeric::Field;

/// The unique polynomial of degree `< points.len()` through `points`
/// (Newton form).
pub fn interpolate<F: Field>(ctx: &F::Ctx, points: &[(F, F)]) -> Result<UniPoly<F>, PolyError> {
    let n = points.len();
    let xs: Vec<&F> = points.iter().map(|(x, _)| x).collect();
    // divided differences in place
    let mut dd: Vec<F> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = xs[i].sub(xs[i - j]);
            let inv = den.inv().ok_or(PolyError::RepeatedAbscissa)?;
            dd[i] = dd[i].sub(&dd[i - 1]).mul(&inv);
        }
    }
    let mut acc = UniPoly::zero(ctx);
    for i in (0..n).rev() {
        acc = &(&acc * &UniPoly::linear(xs[i])) + &UniPoly::constant(dd[i].clone());
    }
    Ok(acc)
}

/// Rational reconstruction of `f mod m` by maximal-quotient selection.
///
/// Among the remainder/cofactor pairs `(r, t)` of the extended Euclidean
/// sequence of `(m, f)`, picks the one preceding the quotient of largest
/// degree, and returns `(r, t)` scaled so that `t` is monic. Returns `None`
/// when no quotient has degree above `margin` or `t` is not invertible
/// modulo `m`.
pub fn rational_reconstruct_poly<F: Field>(
    f: &UniPoly<F>,
    m: &UniPoly<F>,
    margin: usize,
) -> Option<(UniPoly<F>, UniPoly<F>)> {
    let ctx = f.ctx();
    if f.is_zero() {
        return Some((UniPoly::zero(ctx), UniPoly::one(ctx)));
    }
    let (mut r0, mut r1) = (m.clone(), f.rem(m).ok()?);
    let (mut t0, mut t1) = (UniPoly::zero(ctx), UniPoly::one(ctx));
    let mut best: Option<(usize, UniPoly<F>, UniPoly<F>)> = None;
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).ok()?;
        let qd = q.degree().unwrap_or(0);
        // candidate (r1, t1) sits just before quotient q
        if best.as_ref().is_none_or(|(d, _, _)| qd > *d) {
            best = Some((qd, r1.clone(), t1.clone()));
        }
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t);
    }
    let (qd, num, den) = best?;
    if qd <= margin {
        return None;
    }
    if !den.gcd(m).degree().is_some_and(|d| d == 0) {
        return None;
    }
    let inv = den.lc()?.inv()?;
    Some((num.scale(&inv), den.scale(&inv)))
}

/// Rational function through the given points, by interpolation followed
/// by [`rational_reconstruct_poly`].
pub fn rational_interpolate<F: Field>(
    ctx: &F::Ctx,
    points: &[(F, F)],
    margin: usize,
) -> Result<Option<(UniPoly<F>, UniPoly<F>)>, PolyError> {
    let f = interpolate(ctx, points)?;
    let mut m = UniPoly::one(ctx);
    for (x, _) in points {
        m = &m * &UniPoly::linear(x);
    }
    Ok(rational_reconstruct_poly(&f, &m, margin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Fp, PrimeModulus};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_cases() {
        let m = PrimeModulus::new(101).unwrap();
        let p = interpolate(&m, &[(m.elem(0), m.elem(1)), (m.elem(1), m.elem(2))]).unwrap();
        assert_eq!(p, UniPoly::from_i64s(&m, &[1, 1]));
        let pts: Vec<_> = (0..5).map(|i| (m.elem(i), m.elem(9))).collect();
        assert_eq!(interpolate(&m, &pts).unwrap(), UniPoly::constant(m.elem(9)));
        let dup = [(m.elem(3), m.elem(1)), (m.elem(3), m.elem(2))];
        assert_eq!(interpolate(&m, &dup), Err(PolyError::RepeatedAbscissa));
    }

    #[test]
    fn sample_and_recover() {
        let m = PrimeModulus::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let d = rng.gen_range(0..12);
            let coeffs: Vec<Fp> = (0..=d).map(|_| m.elem(rng.gen_range(0..m.modulus()))).collect();
            let p = UniPoly::from_coeffs(&m, coeffs);
            let pts: Vec<(Fp, Fp)> = (0..=d)
                .map(|i| {
                    let x = m.elem(i as u64 * 7919 + 3);
                    (x, p.eval(&x))
                })
                .collect();
            assert_eq!(interpolate(&m, &pts).unwrap(), p);
        }
    }

    #[test]
    fn rational_functions_are_recovered() {
        let m = PrimeModulus::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let dn = rng.gen_range(0..6);
            let dd = rng.gen_range(0..6);
            let mut rand_poly = |d: usize| {
                let mut c: Vec<Fp> = (0..=d).map(|_| m.elem(rng.gen_range(1..m.modulus()))).collect();
                c[d] = m.elem(1);
                UniPoly::from_coeffs(&m, c)
            };
            let num = rand_poly(dn);
            let den = rand_poly(dd);
            let g = num.gcd(&den);
            let (num, den) = (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap());
            let npts = num.degree().unwrap() + den.degree().unwrap() + 3;
            let pts: Vec<(Fp, Fp)> = (0..npts)
                .filter_map(|i| {
                    let x = m.elem(i as u64 * 101 + 17);
                    let dv = den.eval(&x);
                    Field::div(&num.eval(&x), &dv).map(|y| (x, y))
                })
                .collect();
            let (rn, rd) = rational_interpolate(&m, &pts, 1).unwrap().unwrap();
            assert_eq!((rn, rd), (num.clone(), den.clone()));
        }
    }
}

//! Random instances shared by unit tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::numeric::{Field, Fp, PrimeModulus};
use crate::poly::{Monomial, MultiPoly, UniPoly};

pub type M = &'static PrimeModulus;

pub fn rand_poly(m: M, n: usize, deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> MultiPoly<Fp> {
    let mut ts = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        let mut left = rng.gen_range(0..=deg);
        for x in e.iter_mut() {
            let k = rng.gen_range(0..=left);
            *x = k;
            left -= k;
        }
        ts.push((Monomial::from_exps(&e), m.elem(rng.gen_range(0..m.modulus()))));
    }
    MultiPoly::from_terms(&m, n, ts)
}

pub fn constant(m: M, n: usize, a: u64) -> MultiPoly<Fp> {
    MultiPoly::constant(m.elem(a), n)
}

/// Lagrange interpolant through (xs[i], ys[i]) as a polynomial in variable 0.
pub fn lagrange(m: M, n: usize, xs: &[u64], ys: &[u64]) -> MultiPoly<Fp> {
    let x = MultiPoly::var(&m, n, 0);
    let mut out = MultiPoly::zero(&m, n);
    for i in 0..xs.len() {
        let mut term = constant(m, n, ys[i]);
        for j in 0..xs.len() {
            if i != j {
                let d = m.elem(xs[i]).sub(&m.elem(xs[j])).inv().unwrap();
                term = &term * &(&x - &constant(m, n, xs[j])).scale(&d);
            }
        }
        out = &out + &term;
    }
    out
}

pub struct PointSystem {
    pub points: Vec<Vec<u64>>,
    pub gens: Vec<MultiPoly<Fp>>,
}

/// Random generators of the vanishing ideal of a point set with distinct
/// first coordinates, disguised by invertible mixing.
pub fn point_system(m: M, n: usize, npts: usize, rng: &mut ChaCha8Rng) -> PointSystem {
    let p = m.modulus();
    let mut xs: Vec<u64> = Vec::new();
    while xs.len() < npts {
        let a = rng.gen_range(0..p);
        if !xs.contains(&a) {
            xs.push(a);
        }
    }
    let coords: Vec<Vec<u64>> = (1..n).map(|_| (0..npts).map(|_| rng.gen_range(0..p)).collect()).collect();
    let x = MultiPoly::var(&m, n, 0);
    let mut base = vec![xs.iter().fold(MultiPoly::one(&m, n), |acc, &a| &acc * &(&x - &constant(m, n, a)))];
    for (v, c) in coords.iter().enumerate() {
        base.push(&MultiPoly::var(&m, n, v + 1) - &lagrange(m, n, &xs, c));
    }
    // unitriangular mixing keeps the ideal
    let mut gens = base.clone();
    for i in 0..gens.len() {
        for j in 0..i {
            let c = rand_poly(m, n, 1, 2, rng);
            gens[i] = &gens[i] + &(&c * &base[j]);
        }
    }
    gens.push(&rand_poly(m, n, 2, 3, rng) * &base[0] + &rand_poly(m, n, 1, 2, rng) * &base[n - 1]);
    gens.reverse();
    let points = (0..npts)
        .map(|i| std::iter::once(xs[i]).chain(coords.iter().map(|c| c[i])).collect())
        .collect();
    PointSystem { points, gens }
}

pub fn root_product(m: M, roots: impl Iterator<Item = u64>) -> UniPoly<Fp> {
    roots.fold(UniPoly::one(&m), |acc, r| &acc * &UniPoly::linear(&m.elem(r)))
}


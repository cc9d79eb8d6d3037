//! Hermite quadratic forms and root-count conditions.

use super::SystemsError;
use crate::numeric::Field;
use crate::poly::MultiPoly;

/// Trace form of `K(params)[z]/<g>` in the basis `1, z, .., z^{d-1}`, with
/// entries scaled by `lc^(2d-2)` so that they are polynomials.
#[derive(Clone, Debug)]
pub struct HermiteForm<F: Field> {
    pub var: usize,
    pub degree: usize,
    /// `LC_z(g)`.
    pub lc: MultiPoly<F>,
    /// `lc^(2d-2) * Trace(z^(i+j))`.
    pub cleared: Vec<Vec<MultiPoly<F>>>,
}

impl<F: Field> HermiteForm<F> {
    /// Exponent of `lc` by which every entry was scaled.
    pub fn scale_power(&self) -> usize {
        2 * self.degree - 2
    }

    /// Entries at a specialization of the parameters, divided back by the
    /// power of `lc`. `None` if `lc` vanishes there.
    pub fn eval(&self, values: &[F]) -> Option<Vec<Vec<F>>> {
        let lc = self.lc.eval(values);
        let inv = lc.inv()?.pow(self.scale_power() as u64);
        Some(
            self.cleared
                .iter()
                .map(|row| row.iter().map(|e| e.eval(values).mul(&inv)).collect())
                .collect(),
        )
    }
}

/// Hermite matrix of `g` with respect to `var`, via cleared Newton sums.
pub fn hermite_matrix<F: Field>(g: &MultiPoly<F>, var: usize) -> Result<HermiteForm<F>, SystemsError> {
    let c = g.coeffs_in(var);
    let d = c.len().saturating_sub(1);
    if d == 0 {
        return Err(SystemsError::Degenerate("Hermite form of a polynomial of degree 0".into()));
    }
    let ctx = g.ctx().clone();
    let n = g.nvars();
    let lc = c[d].clone();
    let mut lc_pow = vec![MultiPoly::one(&ctx, n)];
    for i in 1..2 * d {
        lc_pow.push(&lc_pow[i - 1] * &lc);
    }
    // N_m = lc^m * (sum of m-th powers of the roots)
    let mut big_n: Vec<MultiPoly<F>> = vec![MultiPoly::from_i64(&ctx, n, d as i64)];
    for m in 1..=2 * d - 2 {
        let mut acc = MultiPoly::zero(&ctx, n);
        for j in 1..=m.min(d) {
            let term = if j == m {
                (&c[d - m] * &lc_pow[m - 1]).scale(&F::from_i64(&ctx, m as i64))
            } else {
                &(&c[d - j] * &lc_pow[j - 1]) * &big_n[m - j]
            };
            acc = &acc + &term;
        }
        big_n.push(-acc);
    }
    let cleared = (0..d)
        .map(|i| (0..d).map(|j| &big_n[i + j] * &lc_pow[2 * d - 2 - i - j]).collect())
        .collect();
    Ok(HermiteForm {
        var,
        degree: d,
        lc,
        cleared,
    })
}

/// Determinant by fraction-free elimination.
pub fn determinant<F: Field>(mut a: Vec<Vec<MultiPoly<F>>>) -> MultiPoly<F> {
    let n = a.len();
    if n == 0 {
        panic!("determinant of an empty matrix");
    }
    let ctx = a[0][0].ctx().clone();
    let nv = a[0][0].nvars();
    let mut sign = false;
    let mut prev = MultiPoly::one(&ctx, nv);
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return MultiPoly::zero(&ctx, nv);
        };
        if piv != k {
            a.swap(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_divide(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// All `l x l` minors of the cleared Hermite matrix, followed by `LC_z(g)`.
/// Off `V(lc)`, `g` has at least `l` distinct roots iff some minor is nonzero.
pub fn count_roots_conditions<F: Field>(h: &HermiteForm<F>, l: usize) -> Result<Vec<MultiPoly<F>>, SystemsError> {
    if l == 0 || l > h.degree {
        return Err(SystemsError::Shape(format!("l = {l} outside 1..={}", h.degree)));
    }
    let mut out = Vec::new();
    for rows in subsets(h.degree, l) {
        for cols in subsets(h.degree, l) {
            let sub = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| h.cleared[r][c].clone()).collect())
                .collect();
            let m = determinant(sub);
            if !m.is_zero() && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out.push(h.lc.clone());
    Ok(out)
}

/// `det(A H B)` for random `A` (`l x d`) and `B` (`d x l`): a random linear
/// combination of the `l x l` minors, nonzero at a given point iff some
/// minor is, except for a probability of order `d/p`.
pub fn random_minor_combination<F: Field>(
    h: &HermiteForm<F>,
    l: usize,
    mut sample: impl FnMut() -> F,
) -> Result<MultiPoly<F>, SystemsError> {
    if l == 0 || l > h.degree {
        return Err(SystemsError::Shape(format!("l = {l} outside 1..={}", h.degree)));
    }
    let d = h.degree;
    let ctx = h.lc.ctx().clone();
    let n = h.lc.nvars();
    if l == d {
        return Ok(determinant(h.cleared.clone()));
    }
    let a: Vec<Vec<F>> = (0..l).map(|_| (0..d).map(|_| sample()).collect()).collect();
    let b: Vec<Vec<F>> = (0..d).map(|_| (0..l).map(|_| sample()).collect()).collect();
    // H B
    let hb: Vec<Vec<MultiPoly<F>>> = (0..d)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let mut acc = MultiPoly::zero(&ctx, n);
                    for r in 0..d {
                        acc = &acc + &h.cleared[i][r].scale(&b[r][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let ahb: Vec<Vec<MultiPoly<F>>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let mut acc = MultiPoly::zero(&ctx, n);
                    for r in 0..d {
                        acc = &acc + &hb[r][j].scale(&a[i][r]);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(determinant(ahb))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `[chi|_{T=var}, d/dT chi|_{T=var}, ..]` (`l` polynomials), where `chi`
/// is given over a universe in which `tvar` stands for `T`. The result
/// lives in the same universe, free of `tvar`.
pub fn stickelberger_conditions<F: Field>(chi: &MultiPoly<F>, tvar: usize, var: usize, l: usize) -> Vec<MultiPoly<F>> {
    let n = chi.nvars();
    let ctx = chi.ctx().clone();
    let images: Vec<MultiPoly<F>> = (0..n)
        .map(|i| MultiPoly::var(&ctx, n, if i == tvar { var } else { i }))
        .collect();
    let mut cur = chi.clone();
    let mut out = Vec::with_capacity(l);
    for _ in 0..l {
        out.push(cur.compose(&images).expect("same universe"));
        cur = cur.differentiate(tvar);
    }
    out
}

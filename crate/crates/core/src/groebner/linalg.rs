//! Dense linear algebra over a field.

use crate::numeric::Field;
use crate::poly::UniPoly;

/// Row-major square or rectangular matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(ctx: &F::Ctx, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(ctx); rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero(&v[0].ctx());
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc.add_mul_assign(a, x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self, ctx: &F::Ctx) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(ctx), |acc, i| acc.add(self.get(i, i)))
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            for k in 0..m.cols {
                m.data.swap(p * m.cols + k, rank * m.cols + k);
            }
            let inv = m.get(rank, c).inv().unwrap();
            for r in rank + 1..m.rows {
                let f = m.get(r, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let v = m.get(rank, k).mul(&f);
                    let cur = m.get(r, k).sub(&v);
                    m.set(r, k, cur);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Characteristic polynomial `det(T I - M)` by reduction to Hessenberg form.
    pub fn char_poly(&self, ctx: &F::Ctx) -> UniPoly<F> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for k in 0..n {
                    h.data.swap(i * n + k, m * n + k);
                }
                for k in 0..n {
                    h.data.swap(k * n + i, k * n + m);
                }
            }
            let inv = h.get(m, m - 1).inv().unwrap();
            for i in m + 1..n {
                let u = h.get(i, m - 1).mul(&inv);
                if u.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let v = h.get(m, k).mul(&u);
                    let cur = h.get(i, k).sub(&v);
                    h.set(i, k, cur);
                }
                for k in 0..n {
                    let v = h.get(k, i).mul(&u);
                    let cur = h.get(k, m).add(&v);
                    h.set(k, m, cur);
                }
            }
        }
        // p_m = (T - h_mm) p_{m-1} - sum_i (prod of subdiagonal) h_{m-i, m} p_{m-i-1}
        let mut ps: Vec<UniPoly<F>> = vec![UniPoly::one(ctx)];
        for m in 0..n {
            let lin = UniPoly::linear(h.get(m, m));
            let mut pm = &lin * &ps[m];
            let mut t = F::one(ctx);
            for i in 1..=m {
                t.mul_assign(h.get(m - i + 1, m - i));
                let coef = t.mul(h.get(m - i, m));
                if !coef.is_zero() {
                    pm.add_scaled(&coef.neg(), &ps[m - i]);
                }
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }
}

/// Incremental echelon form that also tracks how each stored vector was
/// obtained from the inserted ones.
pub(crate) struct Echelon<F: Field> {
    ctx: F::Ctx,
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(ctx: &F::Ctx) -> Self {
        Echelon {
            ctx: ctx.clone(),
            rows: Vec::new(),
            inserted: 0,
        }
    }

    /// Try to insert `v`. On linear dependence returns `c` with
    /// `v = sum_j c_j * inserted_j`.
    pub fn insert(&mut self, mut v: Vec<F>) -> Option<Vec<F>> {
        let ctx = self.ctx.clone();
        // combination expressing current v as inserted_new - sum(...)
        let mut comb: Vec<F> = vec![F::zero(&ctx); self.inserted + 1];
        comb[self.inserted] = F::one(&ctx);
        for (p, row, rc) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            let nf = f.neg();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    x.add_mul_assign(&nf, y);
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                if !y.is_zero() {
                    x.add_mul_assign(&nf, y);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                // 0 = new - sum(..) so new = -(comb without the new entry)
                comb.pop();
                Some(comb.into_iter().map(|c| c.neg()).collect())
            }
            Some(p) => {
                let inv = v[p].inv().unwrap();
                for x in v.iter_mut() {
                    x.mul_assign(&inv);
                }
                for x in comb.iter_mut() {
                    x.mul_assign(&inv);
                }
                // eliminate the new pivot from older rows to keep them reduced
                for (_, row, rc) in self.rows.iter_mut() {
                    let f = row[p].clone();
                    if f.is_zero() {
                        continue;
                    }
                    let nf = f.neg();
                    for (x, y) in row.iter_mut().zip(&v) {
                        if !y.is_zero() {
                            x.add_mul_assign(&nf, y);
                        }
                    }
                    rc.resize(comb.len(), F::zero(&ctx));
                    for (x, y) in rc.iter_mut().zip(&comb) {
                        if !y.is_zero() {
                            x.add_mul_assign(&nf, y);
                        }
                    }
                }
                self.rows.push((p, v, comb));
                self.inserted += 1;
                None
            }
        }
    }
}

/// Minimal polynomial of the vector `v` under `m`: the monic `p` of least
/// degree with `p(m) v = 0`.
pub fn krylov_minpoly<F: Field>(ctx: &F::Ctx, m: &Matrix<F>, v: Vec<F>) -> UniPoly<F> {
    let mut ech = Echelon::new(ctx);
    let mut cur = v;
    loop {
        let next = m.mul_vec(&cur);
        if let Some(c) = ech.insert(cur) {
            // cur = sum c_j m^j v  => T^d - sum c_j T^j
            let d = c.len();
            let mut coeffs: Vec<F> = c.into_iter().map(|x| x.neg()).collect();
            coeffs.push(F::one(ctx));
            debug_assert_eq!(coeffs.len(), d + 1);
            return UniPoly::from_coeffs(ctx, coeffs);
        }
        cur = next;
    }
}

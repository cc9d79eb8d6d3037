//! Groebner bases and zero-dimensional quotient algebras.

mod buchberger;
mod f4;
mod linalg;

pub use buchberger::BuchbergerStats;
pub use linalg::{krylov_minpoly, Matrix};

use std::collections::HashMap;

use thiserror::Error;

use buchberger::{buchberger_terms, make_monic, sorted_terms, Reducer, Terms};
use linalg::Echelon;

use crate::numeric::Field;
use crate::poly::{Monomial, MonomialOrder, MultiPoly, UniPoly};
use crate::Fp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("the ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("the monomial order does not eliminate the first {0} variables")]
    NotEliminating(usize),
    #[error("empty generator list")]
    NoGenerators,
}

/// A reduced Groebner basis; generators are monic and sorted by increasing
/// leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ctx: F::Ctx,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<Terms<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0][0].0.is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p[0].0).collect()
    }

    pub fn generators(&self) -> Vec<MultiPoly<F>> {
        self.polys
            .iter()
            .map(|p| MultiPoly::from_terms(&self.ctx, self.nvars, p.clone()))
            .collect()
    }

    fn reducer(&self) -> (Reducer<F>, Vec<usize>) {
        let mut r = Reducer::new();
        let idx = self.polys.iter().map(|p| r.push(p.clone())).collect();
        (r, idx)
    }

    fn reduce_terms(&self, red: &(Reducer<F>, Vec<usize>), p: Terms<F>) -> Terms<F> {
        red.0.reduce(&self.order, &red.1, p, true)
    }

    /// Normal form (fully reduced remainder).
    pub fn normal_form(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        let red = self.reducer();
        let t = self.reduce_terms(&red, sorted_terms(p, &self.order));
        MultiPoly::from_terms(&self.ctx, self.nvars, t)
    }

    pub fn contains(&self, p: &MultiPoly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Generators free of the first `drop` variables; a Groebner basis of the
    /// elimination ideal when the order eliminates them.
    pub fn eliminate(&self, drop: usize) -> Result<Vec<MultiPoly<F>>, GroebnerError> {
        if !self.order.eliminates_prefix(drop) {
            return Err(GroebnerError::NotEliminating(drop));
        }
        Ok(self
            .generators()
            .into_iter()
            .filter(|g| (0..drop).all(|v| !g.involves(v)))
            .collect())
    }

    /// Standard monomials, sorted increasing under the basis order.
    pub fn quotient_basis(&self) -> Result<Vec<Monomial>, GroebnerError> {
        let lms = self.leading_monomials();
        if self.is_unit() {
            return Ok(Vec::new());
        }
        for v in 0..self.nvars {
            let pure = lms.iter().any(|m| m.exp(v) > 0 && m.deg() == m.exp(v));
            if !pure {
                return Err(GroebnerError::NotZeroDimensional);
            }
        }
        let masks: Vec<u64> = lms.iter().map(buchberger::divmask).collect();
        let standard = |m: &Monomial| {
            let mm = buchberger::divmask(m);
            !lms.iter().zip(&masks).any(|(l, &lk)| lk & !mm == 0 && l.divides(m))
        };
        let mut out = vec![Monomial::one(self.nvars)];
        let mut seen: std::collections::HashSet<Monomial> = out.iter().copied().collect();
        let mut frontier = out.clone();
        while let Some(m) = frontier.pop() {
            for v in 0..self.nvars {
                let n = m.mul(&Monomial::var(self.nvars, v, 1));
                if !seen.contains(&n) && standard(&n) {
                    seen.insert(n);
                    out.push(n);
                    frontier.push(n);
                }
            }
        }
        out.sort_by(|a, b| self.order.cmp(a, b));
        Ok(out)
    }

    /// Dimension of the quotient algebra.
    pub fn quotient_dimension(&self) -> Result<usize, GroebnerError> {
        self.quotient_basis().map(|b| b.len())
    }

    /// Matrix of multiplication by variable `var` on the quotient basis:
    /// column `j` holds the coordinates of `var * basis[j]`.
    pub fn multiplication_matrix(&self, var: usize) -> Result<(Vec<Monomial>, Matrix<F>), GroebnerError> {
        let basis = self.quotient_basis()?;
        let m = self.mult_matrix_on(&basis, var);
        Ok((basis, m))
    }

    fn mult_matrix_on(&self, basis: &[Monomial], var: usize) -> Matrix<F> {
        let d = basis.len();
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let red = self.reducer();
        let mut mat = Matrix::zeros(&self.ctx, d, d);
        let x = Monomial::var(self.nvars, var, 1);
        for (j, b) in basis.iter().enumerate() {
            let xb = b.mul(&x);
            if let Some(&i) = index.get(&xb) {
                mat.set(i, j, F::one(&self.ctx));
                continue;
            }
            let nf = self.reduce_terms(&red, vec![(xb, F::one(&self.ctx))]);
            for (m, c) in nf {
                mat.set(index[&m], j, c);
            }
        }
        mat
    }

    /// Characteristic polynomial of multiplication by `var`.
    pub fn char_poly(&self, var: usize) -> Result<UniPoly<F>, GroebnerError> {
        let (_, m) = self.multiplication_matrix(var)?;
        Ok(m.char_poly(&self.ctx))
    }

    /// Monic generator of the elimination ideal `I ∩ K[var]` of a
    /// zero-dimensional ideal (the constant 1 for the unit ideal).
    pub fn minimal_polynomial(&self, var: usize) -> Result<UniPoly<F>, GroebnerError> {
        if self.is_unit() {
            return Ok(UniPoly::one(&self.ctx));
        }
        let (basis, m) = self.multiplication_matrix(var)?;
        let mut e = vec![F::zero(&self.ctx); basis.len()];
        e[0] = F::one(&self.ctx);
        Ok(krylov_minpoly(&self.ctx, &m, e))
    }

    /// Reduced lex Groebner basis of the same zero-dimensional ideal (FGLM).
    pub fn change_order_to_lex(&self) -> Result<GroebnerBasis<F>, GroebnerError> {
        self.change_order(&MonomialOrder::Lex)
    }

    /// Reduced Groebner basis of the same zero-dimensional ideal under
    /// `target` (FGLM).
    pub fn change_order(&self, target: &MonomialOrder) -> Result<GroebnerBasis<F>, GroebnerError> {
        if &self.order == target {
            return Ok(self.clone());
        }
        if self.is_unit() {
            return Ok(GroebnerBasis {
                order: target.clone(),
                ..self.clone()
            });
        }
        let basis = self.quotient_basis()?;
        let d = basis.len();
        let mats: Vec<Matrix<F>> = (0..self.nvars).map(|v| self.mult_matrix_on(&basis, v)).collect();
        let lex = target;
        let mut ech = Echelon::new(&self.ctx);
        let mut staircase: Vec<(Monomial, Vec<F>)> = Vec::new();
        let mut new_g: Vec<Terms<F>> = Vec::new();
        let mut unit = vec![F::zero(&self.ctx); d];
        unit[0] = F::one(&self.ctx);
        // candidates carry the vector of their normal form
        let mut cands: Vec<(Monomial, Vec<F>)> = vec![(Monomial::one(self.nvars), unit)];
        let mut seen: std::collections::HashSet<Monomial> = std::collections::HashSet::new();
        while !cands.is_empty() {
            let best = (0..cands.len())
                .min_by(|&a, &b| lex.cmp(&cands[a].0, &cands[b].0))
                .unwrap();
            let (mono, vec) = cands.swap_remove(best);
            if new_g.iter().any(|g| g[0].0.divides(&mono)) {
                continue;
            }
            match ech.insert(vec.clone()) {
                Some(comb) => {
                    let mut g: Terms<F> = vec![(mono, F::one(&self.ctx))];
                    for (c, (m, _)) in comb.iter().zip(&staircase) {
                        if !c.is_zero() {
                            g.push((*m, c.neg()));
                        }
                    }
                    g.sort_by(|a, b| lex.cmp(&b.0, &a.0));
                    new_g.push(g);
                }
                None => {
                    for v in 0..self.nvars {
                        let n = mono.mul(&Monomial::var(self.nvars, v, 1));
                        if seen.insert(n) {
                            cands.push((n, mats[v].mul_vec(&vec)));
                        }
                    }
                    staircase.push((mono, vec));
                }
            }
        }
        new_g.sort_by(|a, b| lex.cmp(&a[0].0, &b[0].0));
        for g in new_g.iter_mut() {
            make_monic(g);
        }
        Ok(GroebnerBasis {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            order: target.clone(),
            polys: new_g,
        })
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Orders that are not degree compatible go through a grevlex basis and
/// FGLM when the ideal turns out zero-dimensional; lex Buchberger alone
/// can blow up even on small point ideals.
pub fn buchberger<F: Field>(gens: &[MultiPoly<F>], order: &MonomialOrder) -> Result<GroebnerBasis<F>, GroebnerError> {
    let mut stats = BuchbergerStats::default();
    if *order == MonomialOrder::Grevlex {
        return buchberger_with_stats(gens, order, &mut stats);
    }
    let g = buchberger_with_stats(gens, &MonomialOrder::Grevlex, &mut stats)?;
    match g.change_order(order) {
        Ok(h) => Ok(h),
        Err(GroebnerError::NotZeroDimensional) => buchberger_with_stats(gens, order, &mut stats),
        Err(e) => Err(e),
    }
}

/// Plain Buchberger run directly in `order`.
pub fn buchberger_with_stats<F: Field>(
    gens: &[MultiPoly<F>],
    order: &MonomialOrder,
    stats: &mut BuchbergerStats,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::NoGenerators)?;
    let ctx = first.ctx().clone();
    let nvars = first.nvars();
    let terms: Vec<Terms<F>> = gens.iter().map(|g| sorted_terms(g, order)).collect();
    let polys = if terms.iter().all(|t| t.is_empty()) {
        Vec::new()
    } else {
        buchberger_terms(order, terms, stats)
    };
    Ok(GroebnerBasis {
        ctx,
        nvars,
        order: order.clone(),
        polys,
    })
}

/// Reduced Groebner basis over a prime field by F4, run directly in `order`.
pub fn f4(gens: &[MultiPoly<Fp>], order: &MonomialOrder) -> Result<GroebnerBasis<Fp>, GroebnerError> {
    let mut stats = BuchbergerStats::default();
    f4_with_stats(gens, order, &mut stats)
}

pub fn f4_with_stats(
    gens: &[MultiPoly<Fp>],
    order: &MonomialOrder,
    stats: &mut BuchbergerStats,
) -> Result<GroebnerBasis<Fp>, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::NoGenerators)?;
    let ctx = *first.ctx();
    let polys = f4::f4_terms(ctx, order, gens, stats);
    Ok(GroebnerBasis {
        ctx,
        nvars: first.nvars(),
        order: order.clone(),
        polys,
    })
}

/// Like [`buchberger`] over a prime field, with F4 for the grevlex basis
/// and for the direct run when FGLM does not apply.
pub fn groebner_fp(gens: &[MultiPoly<Fp>], order: &MonomialOrder) -> Result<GroebnerBasis<Fp>, GroebnerError> {
    let g = f4(gens, &MonomialOrder::Grevlex)?;
    if *order == MonomialOrder::Grevlex {
        return Ok(g);
    }
    match g.change_order(order) {
        Ok(h) => Ok(h),
        Err(GroebnerError::NotZeroDimensional) => f4(&g.generators(), order),
        Err(e) => Err(e),
    }
}

/// Normal form of `p` with respect to `g`.
pub fn normal_form<F: Field>(p: &MultiPoly<F>, g: &GroebnerBasis<F>) -> MultiPoly<F> {
    g.normal_form(p)
}

#[cfg(test)]
mod tests;

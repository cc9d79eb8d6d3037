//! Multivariate gcd by recursive primitive remainder sequences.

use super::resultant::Dense;
use super::MultiPoly;
use crate::numeric::Field;

fn first_var<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> Option<usize> {
    (0..a.nvars()).find(|&v| a.involves(v) || b.involves(v))
}

/// Content of `p` with respect to `var` (gcd of its coefficients).
pub fn content_in<F: Field>(p: &MultiPoly<F>, var: usize) -> MultiPoly<F> {
    let mut g = MultiPoly::zero(p.ctx(), p.nvars());
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_part_dense<F: Field>(d: &Dense<F>) -> Dense<F> {
    let mut g = MultiPoly::zero(d.c[0].ctx(), d.c[0].nvars());
    for c in &d.c {
        if !c.is_zero() {
            g = gcd(&g, c);
            if g.is_constant() {
                break;
            }
        }
    }
    d.exact_div_scalar(&g).expect("content divides")
}

/// Greatest common divisor, normalized to lex-leading coefficient one.
/// `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let v = match first_var(a, b) {
        None => return MultiPoly::one(a.ctx(), a.nvars()),
        Some(v) => v,
    };
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.ctx(), a.nvars());
    }
    let sv = |p: &MultiPoly<F>| p.support_vars();
    if sv(a).iter().chain(sv(b).iter()).all(|&w| w == v) {
        let (ua, ub) = (a.to_univariate(v).unwrap(), b.to_univariate(v).unwrap());
        return MultiPoly::from_univariate(&ua.gcd(&ub), v, a.nvars());
    }
    if !a.involves(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return gcd(&content_in(a, v), b);
    }
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let cont = gcd(&ca, &cb);
    let mut x = Dense::new(&a.exact_divide(&ca).unwrap(), v);
    let mut y = Dense::new(&b.exact_divide(&cb).unwrap(), v);
    if x.deg() < y.deg() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        if y.deg() == 0 {
            return cont.monic();
        }
        let r = x.prem(&y);
        x = y;
        y = if r.is_zero() { r } else { primitive_part_dense(&r) };
    }
    let g = primitive_part_dense(&x).to_poly(v, a);
    (&cont * &g).monic()
}

/// Product of the distinct factors of `p` that involve `var`, each with
/// multiplicity one; factors free of `var` are dropped.
pub fn squarefree_part<F: Field>(p: &MultiPoly<F>, var: usize) -> MultiPoly<F> {
    if !p.involves(var) {
        return MultiPoly::one(p.ctx(), p.nvars());
    }
    let g = gcd(p, &p.differentiate(var));
    p.exact_divide(&g).expect("gcd divides").monic()
}

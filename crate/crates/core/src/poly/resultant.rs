//! Resultants and discriminants via the subresultant remainder sequence.

use super::{MultiPoly, PolyError};
use crate::numeric::Field;

/// Polynomial in one distinguished variable with coefficients in the others,
/// constant coefficient first.
pub(crate) struct Dense<F: Field> {
    pub c: Vec<MultiPoly<F>>,
}

impl<F: Field> Dense<F> {
    pub fn new(p: &MultiPoly<F>, var: usize) -> Self {
        let mut d = Dense { c: p.coeffs_in(var) };
        d.trim();
        d
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &MultiPoly<F> {
        self.c.last().expect("nonzero")
    }

    pub fn to_poly(&self, var: usize, template: &MultiPoly<F>) -> MultiPoly<F> {
        MultiPoly::from_coeffs_in(template.ctx(), template.nvars(), var, &self.c)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &Dense<F>) -> Dense<F> {
        let db = b.deg();
        let lb = b.lc();
        let mut r: Vec<MultiPoly<F>> = self.c.clone();
        let mut steps = 0usize;
        let delta = self.deg() + 1 - db;
        while r.len() > db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for x in r.iter_mut() {
                *x = &*x * lb;
            }
            for (j, bj) in b.c.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&lr * bj);
            }
            debug_assert!(r.last().unwrap().is_zero());
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
            steps += 1;
        }
        if steps < delta {
            let f = lb.pow((delta - steps) as u32);
            for x in r.iter_mut() {
                *x = &*x * &f;
            }
        }
        let mut d = Dense { c: r };
        d.trim();
        d
    }

    pub fn exact_div_scalar(&self, s: &MultiPoly<F>) -> Result<Dense<F>, PolyError> {
        Ok(Dense {
            c: self
                .c
                .iter()
                .map(|x| x.exact_divide(s))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// Resultant of `p` and `q` in `var`, equal to the Sylvester determinant
/// with the rows of `p` first.
pub fn resultant<F: Field>(p: &MultiPoly<F>, q: &MultiPoly<F>, var: usize) -> Result<MultiPoly<F>, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let one = MultiPoly::one(p.ctx(), p.nvars());
    let (mut a, mut b) = (Dense::new(p, var), Dense::new(q, var));
    let mut s = 1i64;
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -1;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return Ok(b.lc().pow(a.deg() as u32).scale(&F::from_i64(p.ctx(), s)));
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.prem(&b);
        a = b;
        let divisor = &g * &h.pow(delta as u32);
        b = r.exact_div_scalar(&divisor)?;
        g = a.lc().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32).exact_divide(&h.pow(delta as u32 - 1))?,
        };
        if b.is_zero() {
            return Ok(MultiPoly::zero(p.ctx(), p.nvars()));
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let res = b.lc().pow(da).exact_divide(&h.pow(da - 1))?;
    Ok(res.scale(&F::from_i64(p.ctx(), s)))
}

/// `(-1)^(d(d-1)/2) * res(p, dp/dvar) / lc(p)` with `d = deg_var(p) >= 2`.
pub fn discriminant<F: Field>(p: &MultiPoly<F>, var: usize) -> Result<MultiPoly<F>, PolyError> {
    let d = p.degree_in(var) as u64;
    if d < 2 {
        return Err(PolyError::DegreeTooSmall);
    }
    let dp = p.differentiate(var);
    if dp.is_zero() {
        return Ok(MultiPoly::zero(p.ctx(), p.nvars()));
    }
    let r = resultant(p, &dp, var)?;
    let r = r.exact_divide(&p.leading_coeff_in(var))?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { r.neg() } else { r })
}

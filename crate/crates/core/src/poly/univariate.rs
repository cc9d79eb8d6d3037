//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::PolyError;
use crate::numeric::Field;

/// Dense coefficient vector, constant term first, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F: Field> {
    ctx: F::Ctx,
    c: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn zero(ctx: &F::Ctx) -> Self {
        UniPoly {
            ctx: ctx.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(F::one(ctx))
    }

    pub fn constant(a: F) -> Self {
        Self::from_coeffs(&a.ctx(), vec![a])
    }

    /// `x - a`.
    pub fn linear(a: &F) -> Self {
        let ctx = a.ctx();
        Self::from_coeffs(&ctx, vec![a.neg(), F::one(&ctx)])
    }

    /// `c * x^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        let ctx = c.ctx();
        let mut v = vec![F::zero(&ctx); n];
        v.push(c);
        Self::from_coeffs(&ctx, v)
    }

    pub fn from_coeffs(ctx: &F::Ctx, mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { ctx: ctx.clone(), c }
    }

    pub fn from_i64s(ctx: &F::Ctx, c: &[i64]) -> Self {
        Self::from_coeffs(ctx, c.iter().map(|&n| F::from_i64(ctx, n)).collect())
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        for a in self.c.iter().rev() {
            acc.mul_assign(x);
            acc.add_assign(a);
        }
        acc
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::from_coeffs(&self.ctx, self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero")),
        }
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.mul(&F::from_i64(&self.ctx, i as i64)))
            .collect();
        Self::from_coeffs(&self.ctx, c)
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![F::zero(&self.ctx); n];
        c.extend(self.c.iter().cloned());
        UniPoly { ctx: self.ctx.clone(), c }
    }

    /// Keep the coefficients of `x^0 .. x^(n-1)`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(&self.ctx, self.c.iter().take(n).cloned().collect())
    }

    fn add_poly(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(&self.ctx, c)
    }

    fn sub_poly(&self, o: &Self) -> Self {
        self.add_poly(&o.neg())
    }

    fn mul_poly(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut c = vec![F::zero(&self.ctx); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j].add_mul_assign(a, b);
            }
        }
        Self::from_coeffs(&self.ctx, c)
    }

    /// `self += a * other`.
    pub fn add_scaled(&mut self, a: &F, other: &Self) {
        if self.c.len() < other.c.len() {
            self.c.resize(other.c.len(), F::zero(&self.ctx));
        }
        for (x, y) in self.c.iter_mut().zip(&other.c) {
            x.add_mul_assign(a, y);
        }
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            ctx: self.ctx.clone(),
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        if self.c.len() <= dd {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let inv = d.lc().unwrap().inv().expect("nonzero");
        let mut r = self.c.clone();
        let mut q = vec![F::zero(&self.ctx); r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = r[i + dd].mul(&inv);
            if !coef.is_zero() {
                let neg = coef.neg();
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j].add_mul_assign(&neg, b);
                }
            }
            q[i] = coef;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(&self.ctx, q), Self::from_coeffs(&self.ctx, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, PolyError> {
        self.div_rem(d).map(|(_, r)| r)
    }

    pub fn exact_div(&self, d: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Synthetic division by `x - a`: returns `(q, p(a))` with `p = (x - a) q + p(a)`.
    pub fn div_linear(&self, a: &F) -> (Self, F) {
        if self.is_zero() {
            return (self.clone(), F::zero(&self.ctx));
        }
        let n = self.c.len();
        let mut q = vec![F::zero(&self.ctx); n - 1];
        let mut acc = F::zero(&self.ctx);
        for i in (0..n).rev() {
            acc.mul_assign(a);
            acc.add_assign(&self.c[i]);
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        (Self::from_coeffs(&self.ctx, q), acc)
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &F) -> Self {
        let n = self.c.len();
        let mut c = self.c.clone();
        // repeated synthetic division, in place
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let v = c[j + 1].mul(a);
                c[j].add_assign(&v);
            }
        }
        Self::from_coeffs(&self.ctx, c)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Product of the distinct irreducible factors, made monic.
    ///
    /// Assumes the characteristic exceeds the degree (no p-th power factors).
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Roots by exhaustive search over a small prime field.
    pub fn roots_by_enumeration(&self, elements: impl IntoIterator<Item = F>) -> Vec<F> {
        elements
            .into_iter()
            .filter(|x| self.eval(x).is_zero())
            .collect()
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| match i {
                0 => format!("{a}"),
                1 => format!("({a})*x"),
                _ => format!("({a})*x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a, F: Field> $tr<&'a UniPoly<F>> for &'a UniPoly<F> {
            type Output = UniPoly<F>;
            fn $method(self, rhs: &'a UniPoly<F>) -> UniPoly<F> {
                self.$inner(rhs)
            }
        }
        impl<F: Field> $tr<UniPoly<F>> for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $method(self, rhs: UniPoly<F>) -> UniPoly<F> {
                (&self).$inner(&rhs)
            }
        }
    };
}

binop!(Add, add, add_poly);
binop!(Sub, sub, sub_poly);
binop!(Mul, mul, mul_poly);

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly::neg(self)
    }
}

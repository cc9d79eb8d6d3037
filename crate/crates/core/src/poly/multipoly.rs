//! Sparse distributed multivariate polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{Monomial, MonomialOrder, PolyError, UniPoly};
use crate::numeric::{denominator_lcm, numerator_gcd, reduce_rational, Field, Fp, PrimeModulus};

/// A polynomial over a [`Field`] in a fixed, ordered list of variables.
///
/// Terms are stored once, sorted by lex descending with no zero
/// coefficients, so equality is structural.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<F: Field> {
    ctx: F::Ctx,
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(ctx: &F::Ctx, nvars: usize) -> Self {
        MultiPoly {
            ctx: ctx.clone(),
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: F, nvars: usize) -> Self {
        let ctx = c.ctx();
        if c.is_zero() {
            return Self::zero(&ctx, nvars);
        }
        MultiPoly {
            ctx,
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn one(ctx: &F::Ctx, nvars: usize) -> Self {
        Self::constant(F::one(ctx), nvars)
    }

    pub fn from_i64(ctx: &F::Ctx, nvars: usize, n: i64) -> Self {
        Self::constant(F::from_i64(ctx, n), nvars)
    }

    /// The variable with index `i`.
    pub fn var(ctx: &F::Ctx, nvars: usize, i: usize) -> Self {
        Self::monomial(F::one(ctx), Monomial::var(nvars, i, 1))
    }

    pub fn monomial(c: F, m: Monomial) -> Self {
        let nvars = m.nvars();
        let ctx = c.ctx();
        if c.is_zero() {
            return Self::zero(&ctx, nvars);
        }
        MultiPoly {
            ctx,
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Build from arbitrary terms; duplicates are summed and zeros dropped.
    pub fn from_terms(ctx: &F::Ctx, nvars: usize, mut terms: Vec<(Monomial, F)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        MultiPoly {
            ctx: ctx.clone(),
            nvars,
            terms: out,
        }
    }

    /// Terms already sorted lex descending, distinct, and nonzero.
    pub(crate) fn from_sorted_terms(ctx: &F::Ctx, nvars: usize, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MultiPoly {
            ctx: ctx.clone(),
            nvars,
            terms,
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in lex-descending order.
    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero(&self.ctx)),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        match self.terms.binary_search_by(|(tm, _)| m.cmp(tm)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => F::zero(&self.ctx),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0)
    }

    /// Degree in variable `var` (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    /// Variables occurring in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    /// Leading coefficient in lex order.
    pub fn lex_lc(&self) -> Option<&F> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficients with respect to `var`: entry `i` multiplies `var^i`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly<F>> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = mm.exp(var) as usize;
            mm.set(var, 0);
            buckets[e].push((mm, c.clone()));
        }
        // within a bucket the zeroed exponent was equal, so lex order survives
        buckets
            .into_iter()
            .map(|b| MultiPoly::from_sorted_terms(&self.ctx, self.nvars, b))
            .collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(ctx: &F::Ctx, nvars: usize, var: usize, coeffs: &[MultiPoly<F>]) -> Self {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut mm = *m;
                mm.set(var, m.exp(var) + i as u32);
                terms.push((mm, v.clone()));
            }
        }
        Self::from_terms(ctx, nvars, terms)
    }

    /// Leading coefficient with respect to `var`, as a polynomial.
    pub fn leading_coeff_in(&self, var: usize) -> MultiPoly<F> {
        let d = self.degree_in(var);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) == d)
            .map(|(m, c)| {
                let mut mm = *m;
                mm.set(var, 0);
                (mm, c.clone())
            })
            .collect();
        Self::from_terms(&self.ctx, self.nvars, terms)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (*m, v.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &F, mono: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.mul(c))).collect(),
        }
    }

    /// Make the lex leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.lex_lc() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero")),
        }
    }

    /// `self + c * mono * q` by a linear merge.
    fn add_scaled_shifted(&self, c: &F, mono: &Monomial, q: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + q.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = q.terms.iter().map(|(m, v)| (m.mul(mono), v.mul(c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let s = x.add(&y);
                        if !s.is_zero() {
                            out.push((*m, s));
                        }
                    }
                },
            }
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: out,
        }
    }

    fn add_poly(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different universes");
        self.add_scaled_shifted(&F::one(&self.ctx), &Monomial::one(self.nvars), other)
    }

    fn sub_poly(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different universes");
        self.add_scaled_shifted(&F::one(&self.ctx).neg(), &Monomial::one(self.nvars), other)
    }

    fn mul_poly(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different universes");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_monomial(c, m);
        }
        let mut prods = Vec::with_capacity(small.len() * big.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                prods.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Self::from_terms(&self.ctx, self.nvars, prods)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ctx, self.nvars);
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

    /// Formal partial derivative in `var`.
    pub fn differentiate(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                let mut mm = *m;
                mm.set(var, e - 1);
                (mm, c.mul(&F::from_i64(&self.ctx, e as i64)))
            })
            .collect();
        Self::from_terms(&self.ctx, self.nvars, terms)
    }

    /// Substitute field values for some variables; the universe is kept and
    /// the bound variables simply no longer occur.
    pub fn specialize(&self, bindings: &[(usize, F)]) -> Self {
        let mut pow_cache: Vec<Vec<F>> = vec![Vec::new(); bindings.len()];
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mm = *m;
            let mut cc = c.clone();
            for (bi, (v, val)) in bindings.iter().enumerate() {
                let e = m.exp(*v) as usize;
                if e == 0 {
                    continue;
                }
                let cache = &mut pow_cache[bi];
                if cache.is_empty() {
                    cache.push(F::one(&self.ctx));
                }
                while cache.len() <= e {
                    let next = cache.last().unwrap().mul(val);
                    cache.push(next);
                }
                cc.mul_assign(&cache[e]);
                mm.set(*v, 0);
            }
            if !cc.is_zero() {
                terms.push((mm, cc));
            }
        }
        Self::from_terms(&self.ctx, self.nvars, terms)
    }

    /// Evaluate at a full point.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let bindings: Vec<(usize, F)> = point.iter().cloned().enumerate().collect();
        self.specialize(&bindings)
            .constant_value()
            .expect("all variables bound")
    }

    /// Substitute a polynomial (in a possibly different universe) for every
    /// variable.
    pub fn compose(&self, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::UniverseMismatch(images.len(), self.nvars));
        }
        let target = images
            .first()
            .map(|p| p.nvars)
            .unwrap_or(0);
        if images.iter().any(|p| p.nvars != target) {
            return Err(PolyError::UniverseMismatch(target, target));
        }
        let mut caches: Vec<Vec<MultiPoly<F>>> = vec![Vec::new(); self.nvars];
        let mut acc = MultiPoly::zero(&self.ctx, target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target);
            for v in 0..self.nvars {
                let e = m.exp(v) as usize;
                if e == 0 {
                    continue;
                }
                let cache = &mut caches[v];
                if cache.is_empty() {
                    cache.push(MultiPoly::one(&self.ctx, target));
                }
                while cache.len() <= e {
                    let next = cache.last().unwrap() * &images[v];
                    cache.push(next);
                }
                t = &t * &cache[e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Move into another universe: old variable `i` becomes `map[i]`.
    /// Variables mapped to `None` must not occur.
    pub fn reindex(&self, new_nvars: usize, map: &[Option<usize>]) -> Result<MultiPoly<F>, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(new_nvars);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map.get(i).copied().flatten() {
                    Some(j) => nm.set(j, nm.exp(j) + e as u32),
                    None => return Err(PolyError::DroppedVariable(i)),
                }
            }
            terms.push((nm, c.clone()));
        }
        Ok(Self::from_terms(&self.ctx, new_nvars, terms))
    }

    /// Exact quotient `self / q`.
    pub fn exact_divide(&self, q: &Self) -> Result<Self, PolyError> {
        let (lmq, lcq) = q.terms.first().ok_or(PolyError::DivisionByZero)?;
        if q.len() == 1 {
            let inv = lcq.inv().expect("nonzero");
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                let mm = lmq.quotient_of(m).ok_or(PolyError::InexactDivision)?;
                terms.push((mm, c.mul(&inv)));
            }
            return Ok(MultiPoly::from_sorted_terms(&self.ctx, self.nvars, terms));
        }
        let inv = lcq.inv().expect("nonzero");
        let mut r = self.clone();
        let mut quot = Vec::new();
        while let Some((lm, lc)) = r.terms.first() {
            let mono = lmq.quotient_of(lm).ok_or(PolyError::InexactDivision)?;
            let c = lc.mul(&inv);
            r = r.add_scaled_shifted(&c.neg(), &mono, q);
            quot.push((mono, c));
        }
        Ok(MultiPoly::from_sorted_terms(&self.ctx, self.nvars, quot))
    }

    /// View as a univariate polynomial in `var`; fails if another variable occurs.
    pub fn to_univariate(&self, var: usize) -> Result<UniPoly<F>, PolyError> {
        let d = self.degree_in(var) as usize;
        let mut c = vec![F::zero(&self.ctx); d + 1];
        for (m, v) in &self.terms {
            if m.deg() != m.exp(var) {
                return Err(PolyError::NotUnivariate(var));
            }
            c[m.exp(var) as usize] = v.clone();
        }
        Ok(UniPoly::from_coeffs(&self.ctx, c))
    }

    pub fn from_univariate(u: &UniPoly<F>, var: usize, nvars: usize) -> Self {
        let terms: Vec<_> = u
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(nvars, var, i as u32), c.clone()))
            .collect();
        Self::from_terms(u.ctx(), nvars, terms)
    }

    pub fn map_coeffs<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly::from_sorted_terms(ctx, self.nvars, terms)
    }

    /// Terms sorted by `order`, largest first.
    pub fn terms_by(&self, order: &MonomialOrder) -> Vec<(Monomial, F)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    /// Text form with the given variable names, terms listed largest first
    /// under `order`.
    pub fn to_string_with(&self, names: &[&str], order: &MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms_by(order).iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    fn default_names(&self) -> Vec<String> {
        (0..self.nvars).map(|i| format!("x{i}")).collect()
    }
}

impl MultiPoly<BigRational> {
    /// The primitive integer polynomial that is a positive rational multiple
    /// of `self` (lex leading coefficient positive).
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<&BigRational> = self.terms.iter().map(|(_, c)| c).collect();
        let l = denominator_lcm(coeffs.iter().copied());
        let scaled: Vec<BigRational> = coeffs
            .iter()
            .map(|c| *c * BigRational::from_integer(l.clone()))
            .collect();
        let g = numerator_gcd(scaled.iter());
        let mut g = BigRational::from_integer(g);
        if scaled[0].is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .zip(scaled)
            .map(|((m, _), c)| (*m, c / &g))
            .collect();
        MultiPoly::from_sorted_terms(&(), self.nvars, terms)
    }

    /// Image modulo a prime, `None` if a denominator vanishes.
    pub fn reduce_mod(&self, m: &'static PrimeModulus) -> Option<MultiPoly<Fp>> {
        let mut terms = Vec::with_capacity(self.len());
        for (mono, c) in &self.terms {
            let v = reduce_rational(m, c)?;
            if !Field::is_zero(&v) {
                terms.push((*mono, v));
            }
        }
        Some(MultiPoly::from_sorted_terms(&m, self.nvars, terms))
    }

    /// Integer coefficients, when all coefficients are integers.
    pub fn integer_coeffs(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (*m, c.to_integer())))
            .collect()
    }

    /// Largest absolute numerator or denominator, in bits.
    pub fn height_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.to_string_with(&refs, &MonomialOrder::Lex))
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a, F: Field> $tr<&'a MultiPoly<F>> for &'a MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $method(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
                self.$inner(rhs)
            }
        }
        impl<F: Field> $tr<MultiPoly<F>> for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $method(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
                (&self).$inner(&rhs)
            }
        }
    };
}

binop!(Add, add, add_poly);
binop!(Sub, sub, sub_poly);
binop!(Mul, mul, mul_poly);

impl<F: Field> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly::neg(&self)
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly::neg(self)
    }
}

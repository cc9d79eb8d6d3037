//! Univariate rational functions as a coefficient field.

use std::fmt;

use num_rational::BigRational;

use super::UniPoly;
use crate::numeric::Field;

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Option<Self> {
        den.lc()?;
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        } else {
            (num, den)
        };
        let dl = den.lc().unwrap().inv().unwrap();
        Some(RatFunc {
            num: num.scale(&dl),
            den: den.scale(&dl),
        })
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        let one = UniPoly::one(p.ctx());
        RatFunc { num: p, den: one }
    }

    /// The variable itself.
    pub fn variable(ctx: &F::Ctx) -> Self {
        Self::from_poly(UniPoly::monomial(F::one(ctx), 1))
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        self.num.eval(x).div(&self.den.eval(x))
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> Field for RatFunc<F> {
    type Ctx = F::Ctx;

    fn ctx(&self) -> F::Ctx {
        self.num.ctx().clone()
    }

    fn zero(ctx: &F::Ctx) -> Self {
        Self::from_poly(UniPoly::zero(ctx))
    }

    fn one(ctx: &F::Ctx) -> Self {
        Self::from_poly(UniPoly::one(ctx))
    }

    fn from_i64(ctx: &F::Ctx, n: i64) -> Self {
        Self::from_poly(UniPoly::constant(F::from_i64(ctx, n)))
    }

    fn from_rational(ctx: &F::Ctx, q: &BigRational) -> Option<Self> {
        F::from_rational(ctx, q).map(|c| Self::from_poly(UniPoly::constant(c)))
    }

    fn characteristic(ctx: &F::Ctx) -> u64 {
        F::characteristic(ctx)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Self::new(self.den.clone(), self.num.clone())
        }
    }
}

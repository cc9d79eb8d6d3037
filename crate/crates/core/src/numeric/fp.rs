//! Word-size prime fields in Montgomery representation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::Field;
use super::primes::is_prime_u64;
use super::NumericError;

/// Precomputed constants for arithmetic modulo an odd prime `p < 2^63`.
#[derive(Debug, PartialEq, Eq)]
pub struct PrimeModulus {
    p: u64,
    /// `-p^{-1} mod 2^64`
    p_neg_inv: u64,
    /// `2^128 mod p`
    r2: u64,
    /// `2^64 mod p`, the Montgomery form of one.
    r1: u64,
}

static MODULI: OnceLock<Mutex<HashMap<u64, &'static PrimeModulus>>> = OnceLock::new();

impl PrimeModulus {
    /// Interned modulus for the prime `p`. Contexts are leaked once per prime,
    /// which keeps [`Fp`] a two-word `Copy` value.
    pub fn new(p: u64) -> Result<&'static PrimeModulus, NumericError> {
        if p < 3 || p >= 1 << 63 || !is_prime_u64(p) {
            return Err(NumericError::NotAPrime(p));
        }
        let table = MODULI.get_or_init(|| Mutex::new(HashMap::new()));
        let mut table = table.lock().expect("modulus table poisoned");
        if let Some(m) = table.get(&p) {
            return Ok(m);
        }
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r1 = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r1 as u128 * r1 as u128) % p as u128) as u64;
        let m: &'static PrimeModulus = Box::leak(Box::new(PrimeModulus {
            p,
            p_neg_inv: inv.wrapping_neg(),
            r2,
            r1,
        }));
        table.insert(p, m);
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    /// Element with standard representative `a mod p`.
    pub fn elem(&'static self, a: u64) -> Fp {
        Fp {
            v: self.to_mont(a % self.p),
            m: self,
        }
    }

    /// Element from a Montgomery representative.
    #[inline]
    pub(crate) fn from_raw(&'static self, v: u64) -> Fp {
        Fp { v, m: self }
    }

    /// Montgomery product of two Montgomery representatives.
    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    pub fn from_i64(&'static self, a: i64) -> Fp {
        self.elem((a as i128).rem_euclid(self.p as i128) as u64)
    }

    pub fn from_bigint(&'static self, a: &BigInt) -> Fp {
        let r = a.mod_floor(&BigInt::from(self.p));
        self.elem(r.to_u64().expect("reduced residue fits in u64"))
    }
}

/// An element of the prime field attached to its modulus.
#[derive(Clone, Copy)]
pub struct Fp {
    v: u64,
    m: &'static PrimeModulus,
}

impl Fp {
    pub fn modulus(&self) -> &'static PrimeModulus {
        self.m
    }

    pub fn prime(&self) -> u64 {
        self.m.p
    }

    /// Montgomery representative.
    #[inline]
    pub(crate) fn raw(&self) -> u64 {
        self.v
    }

    /// Standard representative in `[0, p)`.
    pub fn value(&self) -> u64 {
        self.m.redc(self.v as u128)
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.m.p == other.m.p
    }
}

impl Eq for Fp {}

impl std::hash::Hash for Fp {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value(), self.m.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

impl Field for Fp {
    type Ctx = &'static PrimeModulus;

    fn ctx(&self) -> Self::Ctx {
        self.m
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Fp { v: 0, m: ctx }
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Fp { v: ctx.r1, m: ctx }
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        let r = (n as i128).rem_euclid(ctx.p as i128) as u64;
        ctx.elem(r)
    }

    fn from_rational(ctx: &Self::Ctx, q: &BigRational) -> Option<Self> {
        let den = ctx.from_bigint(q.denom());
        let num = ctx.from_bigint(q.numer());
        num.div(&den)
    }

    fn characteristic(ctx: &Self::Ctx) -> u64 {
        ctx.p
    }

    #[inline]
    fn is_zero(&self) -> bool {
        self.v == 0
    }

    #[inline]
    fn is_one(&self) -> bool {
        self.v == self.m.r1
    }

    #[inline]
    fn add(&self, other: &Self) -> Self {
        let p = self.m.p;
        let s = self.v + other.v;
        Fp {
            v: if s >= p { s - p } else { s },
            m: self.m,
        }
    }

    #[inline]
    fn sub(&self, other: &Self) -> Self {
        let v = if self.v >= other.v {
            self.v - other.v
        } else {
            self.v + self.m.p - other.v
        };
        Fp { v, m: self.m }
    }

    #[inline]
    fn mul(&self, other: &Self) -> Self {
        Fp {
            v: self.m.redc(self.v as u128 * other.v as u128),
            m: self.m,
        }
    }

    #[inline]
    fn neg(&self) -> Self {
        Fp {
            v: if self.v == 0 { 0 } else { self.m.p - self.v },
            m: self.m,
        }
    }

    fn inv(&self) -> Option<Self> {
        inv_mod(self.value(), self.m.p).map(|i| self.m.elem(i))
    }

    #[inline]
    fn add_assign(&mut self, other: &Self) {
        *self = Field::add(self, other);
    }

    #[inline]
    fn sub_assign(&mut self, other: &Self) {
        *self = Field::sub(self, other);
    }

    #[inline]
    fn mul_assign(&mut self, other: &Self) {
        *self = Field::mul(self, other);
    }

    #[inline]
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = self.m.redc(a.v as u128 * b.v as u128);
        let s = self.v + prod;
        self.v = if s >= self.m.p { s - self.m.p } else { s };
    }
}

/// Reduce a rational modulo `p`; `None` if `p` divides the denominator.
pub fn reduce_rational(m: &'static PrimeModulus, q: &BigRational) -> Option<Fp> {
    if (q.denom() % BigInt::from(m.modulus())).is_zero() {
        return None;
    }
    Fp::from_rational(&m, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_small_prime() {
        let m = PrimeModulus::new(101).unwrap();
        let a = m.elem(57);
        let b = m.elem(83);
        assert_eq!(a.add(&b).value(), (57 + 83) % 101);
        assert_eq!(a.sub(&b).value(), (57 + 101 - 83) % 101);
        assert_eq!(a.mul(&b).value(), (57 * 83) % 101);
        assert_eq!(a.mul(&a.inv().unwrap()).value(), 1);
        assert!(m.elem(0).inv().is_none());
        assert_eq!(Fp::from_i64(&m, -1).value(), 100);
    }

    #[test]
    fn arithmetic_large_prime() {
        let p = 4611686018427387847u64; // 2^62 - 57
        let m = PrimeModulus::new(p).unwrap();
        let a = m.elem(p - 1);
        assert_eq!(a.mul(&a).value(), 1);
        let x = m.elem(123456789123456789);
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(x.pow(p - 1).value(), 1);
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeModulus::new(91).is_err());
        assert!(PrimeModulus::new(2).is_err());
    }

    #[test]
    fn rational_reduction() {
        let m = PrimeModulus::new(7).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(reduce_rational(m, &half).unwrap().value(), 4);
        let seventh = BigRational::new(1.into(), 7.into());
        assert!(reduce_rational(m, &seventh).is_none());
    }
}

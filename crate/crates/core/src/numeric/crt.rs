//! Chinese remaindering and rational number reconstruction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumericError;

/// A residue class `residue mod modulus` with `0 <= residue < modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularImage {
    pub residue: BigInt,
    pub modulus: BigInt,
}

impl ModularImage {
    pub fn new(residue: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Self {
        let modulus = modulus.into();
        let residue = residue.into().mod_floor(&modulus);
        ModularImage { residue, modulus }
    }
}

/// Combine residues modulo pairwise-coprime moduli into one residue modulo
/// their product.
pub fn crt_combine(images: &[ModularImage]) -> Result<ModularImage, NumericError> {
    let mut acc = match images.first() {
        Some(first) => first.clone(),
        None => return Err(NumericError::EmptyCrt),
    };
    for img in &images[1..] {
        acc = crt_pair(&acc, img)?;
    }
    Ok(acc)
}

/// Two-modulus CRT step.
pub fn crt_pair(a: &ModularImage, b: &ModularImage) -> Result<ModularImage, NumericError> {
    let g = a.modulus.extended_gcd(&b.modulus);
    if !g.gcd.is_one() {
        return Err(NumericError::NotCoprime);
    }
    // x = a.r + a.m * ((b.r - a.r) * a.m^{-1} mod b.m)
    let inv = g.x.mod_floor(&b.modulus);
    let diff = (&b.residue - &a.residue).mod_floor(&b.modulus);
    let k = (diff * inv).mod_floor(&b.modulus);
    let modulus = &a.modulus * &b.modulus;
    let residue = (&a.residue + &a.modulus * k).mod_floor(&modulus);
    Ok(ModularImage { residue, modulus })
}

/// Recover `n/d` with `|n|, d <= floor(sqrt(m/2))` and `d * r = n (mod m)`.
///
/// Returns `None` when no such fraction exists (or it is not unique enough to
/// satisfy the bound with `gcd(d, m) = 1`).
pub fn rational_reconstruct(image: &ModularImage) -> Option<BigRational> {
    let m = &image.modulus;
    if m <= &BigInt::one() {
        return None;
    }
    let bound: BigInt = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), image.residue.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !t1.gcd(m).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(BigRational::new(n, d))
}

/// Symmetric representative of `r mod m` in `(-m/2, m/2]`.
pub fn symmetric_residue(image: &ModularImage) -> BigInt {
    let half = &image.modulus >> 1;
    if image.residue > half {
        &image.residue - &image.modulus
    } else {
        image.residue.clone()
    }
}

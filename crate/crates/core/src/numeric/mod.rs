//! Exact arithmetic substrate: rationals, word-size prime fields, Chinese
//! remaindering and rational reconstruction.

mod crt;
mod field;
mod fp;
mod primes;

pub use crt::{crt_combine, crt_pair, rational_reconstruct, symmetric_residue, ModularImage};
pub use field::{denominator_lcm, numerator_gcd, Field};
pub use fp::{reduce_rational, Fp, PrimeModulus};
pub use primes::{is_prime_u64, PrimeStream};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("{0} is not an odd prime below 2^63")]
    NotAPrime(u64),
    #[error("prime bit size {0} outside 16..=62")]
    BitSize(u32),
    #[error("no primes of the requested size remain")]
    PrimesExhausted,
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("nothing to combine")]
    EmptyCrt,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        /// Rationals of height <= 2^40 survive CRT over three 31-bit primes
        /// followed by reconstruction.
        #[test]
        fn crt_then_reconstruct_round_trip(n in -(1i64 << 40)..(1i64 << 40), d in 1i64..(1i64 << 40)) {
            let q = BigRational::new(BigInt::from(n), BigInt::from(d));
            let primes = [2147483647u64, 2147483629, 2147483587, 2147483579];
            let images: Vec<ModularImage> = primes.iter().map(|&p| {
                let m = PrimeModulus::new(p).unwrap();
                let r = reduce_rational(m, &q).unwrap();
                ModularImage::new(r.value(), p)
            }).collect();
            let combined = crt_combine(&images).unwrap();
            prop_assert_eq!(rational_reconstruct(&combined), Some(q));
        }

        #[test]
        fn fp_agrees_with_rationals(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let m = PrimeModulus::new(1_000_003).unwrap();
            let x = BigRational::new(a.into(), b.into());
            let y = BigRational::new(c.into(), d.into());
            let fx = reduce_rational(m, &x).unwrap();
            let fy = reduce_rational(m, &y).unwrap();
            prop_assert_eq!(reduce_rational(m, &(&x * &y)).unwrap(), fx.mul(&fy));
            prop_assert_eq!(reduce_rational(m, &(&x + &y)).unwrap(), fx.add(&fy));
            prop_assert_eq!(reduce_rational(m, &(&x - &y)).unwrap(), fx.sub(&fy));
            if c != 0 {
                prop_assert_eq!(reduce_rational(m, &(&x / &y)).unwrap(), fx.div(&fy).unwrap());
            }
        }
    }
}

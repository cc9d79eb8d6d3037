//! Deterministic primality testing and reproducible prime streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::NumericError;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Miller-Rabin with the first twelve prime bases, exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct primes of a fixed bit size, in an order fixed by a seed.
///
/// The stream starts at a seeded random odd offset inside
/// `[2^(bits-1), 2^bits)` and walks upward, wrapping once; explicitly
/// injected primes are yielded first.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    lo: u64,
    hi: u64,
    start: u64,
    cursor: u64,
    wrapped: bool,
    injected: Vec<u64>,
    yielded: Vec<u64>,
}

impl PrimeStream {
    pub fn new(bit_size: u32, seed: u64) -> Result<Self, NumericError> {
        if !(16..=62).contains(&bit_size) {
            return Err(NumericError::BitSize(bit_size));
        }
        let lo = 1u64 << (bit_size - 1);
        let hi = 1u64 << bit_size;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = rng.gen_range(lo..hi) | 1;
        Ok(PrimeStream {
            lo,
            hi,
            start,
            cursor: start,
            wrapped: false,
            injected: Vec::new(),
            yielded: Vec::new(),
        })
    }

    /// Yield these primes (in order) before the generated ones.
    pub fn with_injected(mut self, primes: &[u64]) -> Result<Self, NumericError> {
        for &p in primes {
            if !is_prime_u64(p) {
                return Err(NumericError::NotAPrime(p));
            }
        }
        self.injected = primes.iter().rev().copied().collect();
        Ok(self)
    }

    pub fn next_prime(&mut self) -> Result<u64, NumericError> {
        while let Some(p) = self.injected.pop() {
            if !self.yielded.contains(&p) {
                self.yielded.push(p);
                return Ok(p);
            }
        }
        loop {
            if self.wrapped && self.cursor >= self.start {
                return Err(NumericError::PrimesExhausted);
            }
            let c = self.cursor;
            self.cursor += 2;
            if self.cursor >= self.hi {
                self.cursor = self.lo | 1;
                if self.wrapped {
                    return Err(NumericError::PrimesExhausted);
                }
                self.wrapped = true;
            }
            if is_prime_u64(c) && !self.yielded.contains(&c) {
                self.yielded.push(c);
                return Ok(c);
            }
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        self.next_prime().ok()
    }
}

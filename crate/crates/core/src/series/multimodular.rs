//! Rational series through word-size primes.

use rayon::prelude::*;

use super::{expand_specializations, SeriesError, UniSeries};
use crate::numeric::{crt_pair, rational_reconstruct, ModularImage, PrimeModulus, PrimeStream};
use crate::parser::DdeSpec;
use crate::Rational;

const PRIME_BITS: u32 = 62;


/// `d^i/du^i F(t, a) mod t^(order+1)` over the rationals for
/// `i = 0 .. count-1`, computed modulo 62-bit primes and lifted by CRT and
/// rational reconstruction. Lifting stops once the reconstruction is
/// unchanged by a further batch of primes.
pub fn expand_specializations_rational(
    dde: &DdeSpec,
    order: usize,
    count: usize,
) -> Result<Vec<UniSeries<Rational>>, SeriesError> {
    if dde.rhs.is_none() {
        return Err(SeriesError::MissingRhs);
    }
    let mut primes = PrimeStream::new(PRIME_BITS, 0x5e71e5).expect("valid bit size");
    let mut acc: Option<Vec<ModularImage>> = None;
    let mut previous: Option<Vec<Rational>> = None;
    loop {
        let batch: Vec<u64> = (0..rayon::current_num_threads().max(1))
            .map(|_| primes.next_prime().expect("62-bit primes are plentiful"))
            .collect();
        let images: Vec<Option<Vec<u64>>> = batch
            .par_iter()
            .map(|&p| {
                let m = PrimeModulus::new(p).expect("prime");
                match expand_specializations::<crate::Fp>(dde, &m, order, count) {
                    Ok(s) => Some(s.iter().flat_map(|u| u.coeffs.iter().map(|c| c.value())).collect()),
                    Err(_) => None,
                }
            })
            .collect();
        for (p, img) in batch.iter().zip(images) {
            let Some(img) = img else { continue };
            acc = Some(match acc {
                None => img.into_iter().map(|r| ModularImage::new(r, *p)).collect(),
                Some(a) => a
                    .iter()
                    .zip(img)
                    .map(|(x, r)| crt_pair(x, &ModularImage::new(r, *p)).expect("distinct primes"))
                    .collect(),
            });
        }
        let Some(a) = &acc else { continue };
        let rec: Option<Vec<Rational>> = a.iter().map(rational_reconstruct).collect();
        if let Some(rec) = rec {
            if previous.as_ref() == Some(&rec) {
                let n = order + 1;
                return Ok((0..count)
                    .map(|i| UniSeries {
                        coeffs: rec[i * n..(i + 1) * n].to_vec(),
                    })
                    .collect());
            }
            previous = Some(rec);
        } else {
            previous = None;
        }
    }
}

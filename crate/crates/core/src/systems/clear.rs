//! From a right-hand side in divided differences to a polynomial equation.

use super::SystemsError;
use crate::parser::DdeSpec;
use crate::{Field, QPoly, Rational};

/// The polynomial `P(x, z0, .., z_{k-1}, t, u)` obtained by substituting
///
/// `Dl = (x - sum_{i<l} z_i (u-a)^i / i!) / (u-a)^l`
///
/// into `x - rhs` and multiplying by the least power of `u - a` that makes
/// it a polynomial. Normalized to a primitive integer polynomial with
/// positive lex-leading coefficient.
pub fn clear_denominators(dde: &DdeSpec) -> Result<QPoly, SystemsError> {
    let rhs = dde.rhs.as_ref().ok_or(SystemsError::MissingRhs)?;
    let k = dde.k;
    let n = k + 3;
    if rhs.nvars() != 2 * k + 3 {
        return Err(SystemsError::Shape("rhs has the wrong number of variables".into()));
    }
    let x = QPoly::var(&(), n, dde.x());
    let w = &QPoly::var(&(), n, dde.u()) - &QPoly::constant(dde.a.clone(), n);

    // numerators N_l
    let mut numers = Vec::with_capacity(k);
    let mut fact = Rational::one(&());
    let mut taylor = QPoly::zero(&(), n);
    for l in 1..=k {
        let i = l - 1;
        if i > 0 {
            fact = fact * Rational::from_i64(&(), i as i64);
        }
        let zi = QPoly::var(&(), n, dde.z(i));
        taylor = &taylor + &(&zi * &w.pow(i as u32)).scale(&fact.inv().unwrap());
        numers.push(&x - &taylor);
    }

    // weight of each rhs term = total power of 1/(u-a) it carries
    let weight = |m: &crate::Monomial| (1..=k).map(|l| l as u32 * m.exp(dde.rhs_d(l))).sum::<u32>();
    let big_m = rhs.terms().iter().map(|(m, _)| weight(m)).max().unwrap_or(0);

    let mut p = &x * &w.pow(big_m);
    for (m, c) in rhs.terms() {
        let mut base = crate::Monomial::one(n);
        for i in 0..n {
            base.set(i, m.exp(dde.rhs_index(i)));
        }
        let mut term = QPoly::monomial(c.clone(), base);
        for l in 1..=k {
            let e = m.exp(dde.rhs_d(l));
            if e > 0 {
                term = &term * &numers[l - 1].pow(e);
            }
        }
        term = &term * &w.pow(big_m - weight(m));
        p = &p - &term;
    }
    for _ in 0..big_m {
        match p.exact_divide(&w) {
            Ok(q) => p = q,
            Err(_) => break,
        }
    }
    if p.is_zero() {
        return Err(SystemsError::Degenerate("x - rhs clears to zero".into()));
    }
    Ok(p.primitive_integer())
}

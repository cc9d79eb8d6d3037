use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::parser::{parse_dde, parse_poly};
use crate::series::expand_specializations_rational;

fn q(s: &str) -> QPoly {
    parse_poly(s, &["t", "z0"]).unwrap()
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn series(c: &[i64], len: usize) -> UniSeries<Rational> {
    let mut coeffs: Vec<Rational> = c.iter().map(|&n| int(n)).collect();
    coeffs.resize(len, int(0));
    UniSeries { coeffs }
}

fn bd(b_t: usize, b_z0: usize) -> Bidegree {
    Bidegree { b_t, b_z0 }
}

fn same_up_to_sign(a: &QPoly, b: &QPoly) -> bool {
    a == b || *a == b.neg()
}

/// Valuation of `M(t, s)` by plain truncated products.
fn naive_order(m: &QPoly, s: &[Rational]) -> usize {
    let n = s.len();
    let mul = |a: &[Rational], b: &[Rational]| {
        let mut out = vec![int(0); n];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut total = vec![int(0); n];
    for (mono, c) in m.terms() {
        let (i, j) = (mono.exp(0) as usize, mono.exp(1) as usize);
        let mut p = vec![int(0); n];
        p[0] = int(1);
        for _ in 0..j {
            p = mul(&p, s);
        }
        for k in (0..n).rev() {
            let v = if k >= i { p[k - i].clone() } else { int(0) };
            total[k] += c * v;
        }
    }
    total.iter().position(|c| !c.is_zero()).unwrap_or(n)
}

fn constellations(order: usize) -> UniSeries<Rational> {
    let dde = parse_dde(include_str!("../../../../data/3constellations.dde")).unwrap();
    expand_specializations_rational(&dde, order, 1).unwrap().remove(0)
}

#[test]
fn identity_series() {
    let prob = GuessProblem::new(series(&[0, 1], 6), bd(1, 1)).unwrap();
    assert!(same_up_to_sign(&guess_algebraic(&prob).unwrap(), &q("z0 - t")));
}

#[test]
fn geometric_series() {
    let prob = GuessProblem::new(series(&[1; 8], 8), bd(1, 1)).unwrap();
    assert!(same_up_to_sign(&guess_algebraic(&prob).unwrap(), &q("(1-t)*z0 - 1")));
}

#[test]
fn constellations_cubic() {
    let s = constellations(31);
    assert_eq!(s.coeffs.len(), 32);
    let prob = GuessProblem::new(s.clone(), bd(3, 5)).unwrap().with_matching_order(32).unwrap();
    let m = guess_algebraic(&prob).unwrap();
    let expected = q("81*t^2*z0^3 - 9*t*(9*t-2)*z0^2 + (27*t^2-66*t+1)*z0 - 3*t^2 + 47*t - 1");
    assert!(same_up_to_sign(&m, &expected), "{m:?}");
    let v = prove_guess(&m, &s, 31);
    assert!(v.certified);
    assert!(v.order >= 31);
    assert_eq!(v.order, naive_order(&m, &s.coeffs));
}

#[test]
fn short_match_is_not_certified() {
    let s = constellations(12);
    // bounds too small for the true equation, matched one short of the threshold
    let prob = GuessProblem::new(s.clone(), bd(2, 2)).unwrap();
    let prob = prob.clone().with_matching_order(prob.threshold - 1).unwrap();
    let m = guess_algebraic(&prob).unwrap();
    let order = naive_order(&m, &s.coeffs);
    assert_eq!(order, prob.threshold - 1);
    let v = prove_guess(&m, &s, prob.threshold);
    assert_eq!(v.order, order);
    assert!(!v.certified);
}

#[test]
fn nonannihilating_guess_is_rejected() {
    let s = constellations(12);
    let v = prove_guess(&q("z0"), &s, 5);
    assert!(!v.certified);
    assert_eq!(v.order, 0);
    assert!(!prove_guess(&QPoly::zero(&(), 2), &s, 5).certified);
}

#[test]
fn short_series_is_refused() {
    assert!(matches!(
        GuessProblem::new(series(&[1, 1], 3), bd(3, 5)),
        Err(GuessError::TooShort { .. })
    ));
}

#[test]
fn no_solution_when_bounds_too_small() {
    let s = constellations(20);
    let prob = GuessProblem::new(s, bd(1, 1)).unwrap().with_matching_order(20).unwrap();
    assert_eq!(guess_algebraic(&prob), Err(GuessError::NoSolution));
}

#[test]
fn modular_and_exact_guesses_agree() {
    let s = constellations(31);
    let prob = GuessProblem::new(s, bd(3, 5)).unwrap().with_matching_order(32).unwrap();
    assert_eq!(guess_algebraic(&prob).unwrap(), exact_guess(&prob).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_series_is_recovered(c in prop::collection::vec(-20i64..20, 1..4)) {
        let s = series(&c, 10);
        let prob = GuessProblem::new(s, bd(3, 1)).unwrap().with_matching_order(10).unwrap();
        let m = guess_algebraic(&prob).unwrap();
        let mut text = String::from("z0");
        for (i, a) in c.iter().enumerate() {
            text += &format!(" - ({a})*t^{i}");
        }
        prop_assert!(same_up_to_sign(&m, &q(&text)));
    }

    #[test]
    fn guesses_match_to_the_requested_order(c in prop::collection::vec(-5i64..5, 10)) {
        let s = series(&c, 10);
        let prob = GuessProblem::new(s.clone(), bd(2, 1)).unwrap().with_matching_order(7).unwrap();
        if let Ok(m) = guess_algebraic(&prob) {
            prop_assert!(!m.is_zero());
            prop_assert!(m.degree_in(0) <= 2 && m.degree_in(1) <= 1);
            prop_assert!(naive_order(&m, &s.coeffs) >= 7);
        }
    }
}


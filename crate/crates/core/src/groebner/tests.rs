use super::*;
use crate::numeric::{Fp, PrimeModulus};
use crate::testutil::{point_system, rand_poly, root_product};
use crate::parser::parse_poly;
use crate::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(s: &str, names: &[&str]) -> MultiPoly<Rational> {
    parse_poly(s, names).unwrap()
}

#[test]
fn circle_and_line_lex() {
    let names = ["x", "y"];
    let g = buchberger(&[q("x^2 + y^2 - 1", &names), q("x - y", &names)], &MonomialOrder::Lex).unwrap();
    assert!(g.contains(&q("2*y^2 - 1", &names)));
    let gens = g.generators();
    assert_eq!(gens, vec![q("y^2 - 1/2", &names), q("x - y", &names)]);
    assert_eq!(g.quotient_dimension().unwrap(), 2);
}

#[test]
fn normal_form_small() {
    let names = ["x"];
    let g = buchberger(&[q("x - 1", &names)], &MonomialOrder::Grevlex).unwrap();
    assert_eq!(normal_form(&q("x^2", &names), &g), q("1", &names));
}

#[test]
fn unit_and_empty_ideals() {
    let names = ["x", "y"];
    let g = buchberger(&[q("x", &names), q("x - 1", &names)], &MonomialOrder::Grevlex).unwrap();
    assert!(g.is_unit());
    assert_eq!(g.quotient_dimension().unwrap(), 0);
    assert_eq!(g.minimal_polynomial(1).unwrap(), UniPoly::one(&()));
    let z = buchberger(&[q("0", &names)], &MonomialOrder::Lex).unwrap();
    assert!(z.is_empty());
    assert!(matches!(z.quotient_basis(), Err(GroebnerError::NotZeroDimensional)));
    assert!(matches!(
        buchberger::<Rational>(&[], &MonomialOrder::Lex),
        Err(GroebnerError::NoGenerators)
    ));
}

#[test]
fn positive_dimensional_detected() {
    let names = ["x", "y"];
    let g = buchberger(&[q("x*y - 1", &names)], &MonomialOrder::Grevlex).unwrap();
    assert_eq!(g.quotient_basis(), Err(GroebnerError::NotZeroDimensional));
}

#[test]
fn multiplicity_shows_in_char_poly() {
    let names = ["x", "y"];
    let g = buchberger(&[q("x^2", &names), q("y - x", &names)], &MonomialOrder::Grevlex).unwrap();
    assert_eq!(g.char_poly(1).unwrap(), UniPoly::from_i64s(&(), &[0, 0, 1]));
    assert_eq!(g.minimal_polynomial(1).unwrap(), UniPoly::from_i64s(&(), &[0, 0, 1]));
    let g = buchberger(&[q("x^2 - x", &names), q("y^2", &names)], &MonomialOrder::Grevlex).unwrap();
    assert_eq!(g.quotient_dimension().unwrap(), 4);
    assert_eq!(g.char_poly(0).unwrap(), UniPoly::from_i64s(&(), &[0, 0, 1, -2, 1]));
    assert_eq!(g.minimal_polynomial(0).unwrap(), UniPoly::from_i64s(&(), &[0, -1, 1]));
}

#[test]
fn normal_form_is_ring_morphism() {
    let m = PrimeModulus::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let sys = point_system(m, 3, rng.gen_range(1..5), &mut rng);
        let g = buchberger(&sys.gens, &MonomialOrder::Grevlex).unwrap();
        let a = rand_poly(m, 3, 4, 5, &mut rng);
        let b = rand_poly(m, 3, 4, 5, &mut rng);
        let na = g.normal_form(&a);
        let nb = g.normal_form(&b);
        assert_eq!(g.normal_form(&(&a + &b)), &na + &nb);
        assert_eq!(g.normal_form(&(&a * &b)), g.normal_form(&(&na * &nb)));
        assert!(g.contains(&(&a - &na)));
        // normal forms are built from standard monomials only
        let basis = g.quotient_basis().unwrap();
        assert!(na.terms().iter().all(|(mono, _)| basis.contains(mono)));
    }
}

#[test]
fn stickelberger_against_brute_force() {
    let m = PrimeModulus::new(31).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..60 {
        let n = 2 + trial % 2;
        let npts = rng.gen_range(1..7);
        let sys = point_system(m, n, npts, &mut rng);
        // enumerate the variety over the prime field
        let p = m.modulus();
        let mut found = Vec::new();
        let total = p.pow(n as u32);
        for code in 0..total {
            let pt: Vec<u64> = (0..n).map(|i| (code / p.pow(i as u32)) % p).collect();
            let vals: Vec<Fp> = pt.iter().map(|&c| m.elem(c)).collect();
            if sys.gens.iter().all(|g| g.eval(&vals).is_zero()) {
                found.push(pt);
            }
        }
        let mut expected = sys.points.clone();
        expected.sort();
        found.sort();
        assert_eq!(found, expected);
        let g = buchberger(&sys.gens, &MonomialOrder::Grevlex).unwrap();
        assert_eq!(g.quotient_dimension().unwrap(), npts);
        for v in 0..n {
            let cp = g.char_poly(v).unwrap();
            assert_eq!(cp, root_product(m, sys.points.iter().map(|pt| pt[v])), "trial {trial} var {v}");
            let mut distinct: Vec<u64> = sys.points.iter().map(|pt| pt[v]).collect();
            distinct.sort();
            distinct.dedup();
            assert_eq!(g.minimal_polynomial(v).unwrap(), root_product(m, distinct.into_iter()));
        }
    }
}

#[test]
fn fglm_matches_direct_lex() {
    let m = PrimeModulus::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..25 {
        // small systems keep direct lex Buchberger cheap
        let sys = point_system(m, 3, rng.gen_range(1..4), &mut rng);
        let grev = buchberger(&sys.gens, &MonomialOrder::Grevlex).unwrap();
        let conv = grev.change_order_to_lex().unwrap();
        let lex = buchberger_with_stats(&sys.gens, &MonomialOrder::Lex, &mut Default::default()).unwrap();
        assert_eq!(conv.generators(), lex.generators());
        let block = MonomialOrder::block2(1, 3);
        let direct = buchberger_with_stats(&sys.gens, &block, &mut Default::default()).unwrap();
        assert_eq!(grev.change_order(&block).unwrap().generators(), direct.generators());
        // the smallest lex element is univariate in the last variable
        let last = lex.generators()[0].clone();
        let mp = grev.minimal_polynomial(2).unwrap();
        assert_eq!(last, MultiPoly::from_univariate(&mp, 2, 3));
    }
}

#[test]
fn fglm_over_rationals() {
    let names = ["x", "y"];
    let gens = [q("x^2 + y^2 - 1", &names), q("x*y - 1/3", &names)];
    let grev = buchberger(&gens, &MonomialOrder::Grevlex).unwrap();
    let lex = buchberger(&gens, &MonomialOrder::Lex).unwrap();
    assert_eq!(grev.change_order_to_lex().unwrap().generators(), lex.generators());
    assert_eq!(grev.quotient_dimension().unwrap(), 4);
}

#[test]
fn reduced_basis_independent_of_generator_order() {
    let m = PrimeModulus::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let mut sys = point_system(m, 3, rng.gen_range(1..5), &mut rng);
        let a = buchberger(&sys.gens, &MonomialOrder::Grevlex).unwrap();
        sys.gens.rotate_left(1);
        sys.gens.swap(0, 1);
        let b = buchberger(&sys.gens, &MonomialOrder::Grevlex).unwrap();
        assert_eq!(a.generators(), b.generators());
    }
}

#[test]
fn elimination_with_block_order() {
    let m = PrimeModulus::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let sys = point_system(m, 3, rng.gen_range(1..5), &mut rng);
        let g = buchberger(&sys.gens, &MonomialOrder::block2(1, 3)).unwrap();
        assert_eq!(g.eliminate(2), Err(GroebnerError::NotEliminating(2)));
        let elim = g.eliminate(1).unwrap();
        assert!(!elim.is_empty());
        for e in &elim {
            assert!(!e.involves(0));
            for pt in &sys.points {
                let vals: Vec<Fp> = pt.iter().map(|&c| m.elem(c)).collect();
                assert!(e.eval(&vals).is_zero());
            }
        }
        let lex = buchberger(&sys.gens, &MonomialOrder::Lex).unwrap();
        let eg = buchberger(&elim, &MonomialOrder::Lex).unwrap();
        assert_eq!(eg.generators(), lex.eliminate(1).unwrap());
    }
    let g = buchberger(&[q("x - 1", &["x", "y"])], &MonomialOrder::Grevlex).unwrap();
    assert_eq!(g.eliminate(1), Err(GroebnerError::NotEliminating(1)));
}


#[test]
fn f4_matches_buchberger() {
    let m = PrimeModulus::new(32003).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let orders = [
        MonomialOrder::Grevlex,
        MonomialOrder::block2(1, 3),
        MonomialOrder::block2(2, 4),
    ];
    for round in 0..60 {
        let order = &orders[round % orders.len()];
        let n = match order {
            MonomialOrder::Block(s) => s.iter().sum(),
            _ => 3,
        };
        let ngens = rng.gen_range(1..=n + 1);
        let gens: Vec<MultiPoly<Fp>> = (0..ngens)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                let t = rng.gen_range(1..=5);
                rand_poly(m, n, d, t, &mut rng)
            })
            .collect();
        let a = buchberger_with_stats(&gens, order, &mut BuchbergerStats::default()).unwrap();
        let b = f4(&gens, order).unwrap();
        assert_eq!(a.generators(), b.generators(), "round {round}");
    }
    // point ideals, including positive-dimensional pieces
    for _ in 0..20 {
        let sys = point_system(m, 3, rng.gen_range(1..8), &mut rng);
        let a = buchberger(&sys.gens, &MonomialOrder::Grevlex).unwrap();
        let b = f4(&sys.gens, &MonomialOrder::Grevlex).unwrap();
        assert_eq!(a.generators(), b.generators());
        let l = groebner_fp(&sys.gens, &MonomialOrder::Lex).unwrap();
        assert_eq!(l.generators(), buchberger(&sys.gens, &MonomialOrder::Lex).unwrap().generators());
    }
}

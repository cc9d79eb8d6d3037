use super::*;
use crate::groebner::{buchberger, Matrix};
use crate::numeric::{Fp, PrimeModulus};
use crate::parser::{parse_dde, parse_poly, DdeSpec};
use crate::poly::{MonomialOrder, MultiPoly, UniPoly};
use crate::testutil::{point_system, rand_poly, M};
use crate::{Field, QPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn constellations() -> DdeSpec {
    parse_dde(include_str!("../../../../data/3constellations.dde")).unwrap()
}

const P3C: &str = "(u-1)^2*(1-x+t*u*x^3) + t*u*(u-1)*(2*x+z0)*(x-z0) + t*u*(x-z0-(u-1)*z1)";

fn q(s: &str, names: &[&str]) -> QPoly {
    parse_poly(s, names).unwrap()
}

#[test]
fn kernel_system_of_constellations() {
    let dde = constellations();
    let sys = build_kernel_system(&dde.p, 2, &dde.a).unwrap();
    let names = sys.var_names();
    assert_eq!(names, ["m", "x", "u", "z0", "z1", "t"]);
    assert_eq!(sys.equations.len(), 4);
    let p = q(P3C, &names);
    assert_eq!(sys.equations[0], p);
    let px = q("(u-1)^2*(-1+3*t*u*x^2) + t*u*(u-1)*(4*x-z0) + t*u", &names);
    let pu = q(
        "2*(u-1)*(1-x+t*u*x^3) + (u-1)^2*t*x^3 + t*(2*u-1)*(2*x+z0)*(x-z0) + t*(x-z0-(u-1)*z1) - t*u*z1",
        &names,
    );
    assert_eq!(sys.equations[1], px);
    assert_eq!(sys.equations[2], pu);
    assert_eq!(sys.equations[3], q("m*u*(u-1) - 1", &names));
    assert_eq!(sys.roles.z, vec![3, 4]);
    assert_eq!(sys.roles.t, 5);
    assert!(sys.diagnostics.is_empty());
}

#[test]
fn kernel_derivatives_match_differentiate() {
    let m = PrimeModulus::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 1..4 {
        for _ in 0..10 {
            let p = rand_poly(m, k + 3, 4, 8, &mut rng);
            if p.is_zero() {
                continue;
            }
            let sys = build_kernel_system(&p, k, &m.elem(3)).unwrap();
            let mut map = vec![Some(1), None, None];
            map.splice(1..1, (0..k).map(|i| Some(3 + i)));
            map[k + 1] = Some(k + 3);
            map[k + 2] = Some(2);
            let emb = |q: &MultiPoly<Fp>| q.reindex(k + 4, &map).unwrap();
            assert_eq!(sys.equations[0], emb(&p));
            assert_eq!(sys.equations[1], emb(&p).differentiate(1));
            assert_eq!(sys.equations[2], emb(&p).differentiate(2));
        }
    }
}

#[test]
fn degenerate_generators_are_flagged() {
    let names = ["x", "z0", "t", "u"];
    let p = q("x - 1 - t*x^2", &names);
    let sys = build_kernel_system(&p, 1, &Rational::from_i64(&(), 0)).unwrap();
    assert!(sys.equations[2].is_zero());
    assert_eq!(sys.diagnostics.len(), 1);
    assert!(build_kernel_system(&p, 2, &Rational::from_i64(&(), 0)).is_err());
}

#[test]
fn duplicated_system_of_constellations() {
    let dde = constellations();
    let sys = build_duplicated_system(&dde.p, 2, &dde.a).unwrap();
    let names = sys.var_names();
    assert_eq!(names, ["m", "x1", "x2", "u1", "u2", "z0", "z1", "t"]);
    assert_eq!(sys.equations.len(), 7);
    let p1 = q(&P3C.replace('x', "x1").replace('u', "u1"), &names);
    let p2 = q(&P3C.replace('x', "x2").replace('u', "u2"), &names);
    assert_eq!(sys.equations[0], p1);
    assert_eq!(sys.equations[3], p2);
    assert_eq!(sys.equations[4], p2.differentiate(2));
    assert_eq!(sys.equations[5], p2.differentiate(4));
    assert_eq!(sys.equations[6], q("m*(u1-u2)*(u1-1)*(u2-1)*u1*u2 - 1", &names));
}

#[test]
fn duplicated_system_is_square() {
    let m = PrimeModulus::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 1..=4 {
        let p = rand_poly(m, k + 3, 3, 6, &mut rng) + MultiPoly::var(&m, k + 3, 0);
        let sys = build_duplicated_system(&p, k, &m.elem(1)).unwrap();
        assert_eq!(sys.equations.len(), 3 * k + 1);
        assert_eq!(sys.unknowns(), 3 * k + 1);
        let roles = &sys.roles;
        assert_eq!(roles.m.len() + roles.x.len() + roles.u.len() + roles.z.len(), 3 * k + 1);
    }
}

#[test]
fn hermite_small_cases() {
    let names = ["z", "y"];
    let h = hermite_matrix(&q("z^2 - y", &names), 0).unwrap();
    assert_eq!(h.cleared, vec![vec![q("2", &names), q("0", &names)], vec![q("0", &names), q("2*y", &names)]]);
    let h = hermite_matrix(&q("z - y", &names), 0).unwrap();
    assert_eq!(h.cleared, vec![vec![q("1", &names)]]);
    assert!(hermite_matrix(&q("y", &names), 0).is_err());

    let h = hermite_matrix(&q("z^2 - y", &names), 0).unwrap();
    let c = count_roots_conditions(&h, 2).unwrap();
    assert_eq!(c, vec![q("4*y", &names), q("1", &names)]);
    let c = count_roots_conditions(&h, 1).unwrap();
    assert!(c.contains(&q("2", &names)));
    assert!(count_roots_conditions(&h, 3).is_err());
    assert!(count_roots_conditions(&h, 0).is_err());
}

#[test]
fn hermite_with_parametric_leading_coefficient() {
    // y z^2 - 1: traces are 2 and 2/y
    let names = ["z", "y"];
    let h = hermite_matrix(&q("y*z^2 - 1", &names), 0).unwrap();
    assert_eq!(h.cleared[0][0], q("2*y^2", &names));
    assert_eq!(h.cleared[1][1], q("2*y", &names));
    assert_eq!(h.cleared[0][1], q("0", &names));
}

/// Trace of `C^m` for the companion matrix of a monic polynomial.
fn companion_traces(m: M, g: &UniPoly<Fp>, upto: usize) -> Vec<Fp> {
    let d = g.degree().unwrap();
    let mut c = Matrix::zeros(&m, d, d);
    for i in 1..d {
        c.set(i, i - 1, m.elem(1));
    }
    for i in 0..d {
        c.set(i, d - 1, g.coeff(i).neg());
    }
    let mut out = Vec::new();
    // columns of C^j applied to each basis vector
    let mut basis: Vec<Vec<Fp>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { m.elem(1) } else { m.elem(0) }).collect())
        .collect();
    for _ in 0..=upto {
        let mut tr = m.elem(0);
        for (i, v) in basis.iter().enumerate() {
            tr = tr.add(&v[i]);
        }
        out.push(tr);
        basis = basis.iter().map(|v| c.mul_vec(v)).collect();
    }
    out
}

#[test]
fn hermite_rank_counts_distinct_roots() {
    let m = PrimeModulus::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 2;
    let y = MultiPoly::var(&m, n, 1);
    let z = MultiPoly::var(&m, n, 0);
    let mut trials = 0;
    while trials < 120 {
        // lc(y) * prod (z - alpha_i - beta_i y)^e_i
        let nroots = rng.gen_range(1..4);
        let mut g = &MultiPoly::constant(m.elem(rng.gen_range(1..101)), n)
            + &y.scale(&m.elem(rng.gen_range(0..101)));
        let mut roots = Vec::new();
        for _ in 0..nroots {
            let (al, be) = (m.elem(rng.gen_range(0..101)), m.elem(rng.gen_range(0..101)));
            let e = rng.gen_range(1..3);
            let r = &MultiPoly::constant(al, n) + &y.scale(&be);
            g = &g * &(&z - &r).pow(e);
            roots.push((al, be));
        }
        let h = hermite_matrix(&g, 0).unwrap();
        let y0 = m.elem(rng.gen_range(0..101));
        let vals = [m.elem(0), y0];
        let Some(mat) = h.eval(&vals) else { continue };
        trials += 1;
        let d = h.degree;
        let mut mm = Matrix::zeros(&m, d, d);
        for i in 0..d {
            for j in 0..d {
                mm.set(i, j, mat[i][j]);
            }
        }
        let mut distinct: Vec<u64> = roots.iter().map(|(a, b)| a.add(&b.mul(&y0)).value()).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(mm.rank(), distinct.len());
        // entries against traces of the companion matrix
        let gu = g.specialize(&[(1, y0)]).to_univariate(0).unwrap().monic();
        let traces = companion_traces(m, &gu, 2 * d - 2);
        for i in 0..d {
            for j in 0..d {
                assert_eq!(mat[i][j], traces[i + j]);
            }
        }
        // the random combination detects the rank threshold
        for l in 1..=d {
            let comb = random_minor_combination(&h, l, || m.elem(rng.gen_range(0..101))).unwrap();
            let v = comb.eval(&vals);
            if distinct.len() < l {
                assert!(v.is_zero());
            }
        }
        let all = count_roots_conditions(&h, distinct.len().max(1)).unwrap();
        assert!(all[..all.len() - 1].iter().any(|c| !c.eval(&vals).is_zero()));
        if distinct.len() < d {
            let above = count_roots_conditions(&h, distinct.len() + 1).unwrap();
            assert!(above[..above.len() - 1].iter().all(|c| c.eval(&vals).is_zero()));
        }
    }
}

#[test]
fn determinant_matches_expansion() {
    let m = PrimeModulus::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let a: Vec<Vec<MultiPoly<Fp>>> = (0..3).map(|_| (0..3).map(|_| rand_poly(m, 2, 2, 3, &mut rng)).collect()).collect();
        let e = |i: usize, j: usize| &a[i][j];
        let expected = &(&(e(0, 0) * &(&(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1))))
            - &(e(0, 1) * &(&(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0)))))
            + &(e(0, 2) * &(&(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0))));
        assert_eq!(determinant(a.clone()), expected);
    }
}

#[test]
fn rabinowitsch_small_cases() {
    let names = ["m", "u"];
    assert_eq!(rabinowitsch(&q("u", &names), 0), q("m*u - 1", &names));
    assert_eq!(rabinowitsch(&q("1", &names), 0), q("m - 1", &names));
}

#[test]
fn rabinowitsch_removes_the_zero_set() {
    let m = PrimeModulus::new(31).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        // points in (x, y), embedded in [m, x, y]
        let sys = point_system(m, 2, rng.gen_range(1..6), &mut rng);
        let emb = |p: &MultiPoly<Fp>| p.reindex(3, &[Some(1), Some(2)]).unwrap();
        let ineq = rand_poly(m, 2, 2, 3, &mut rng);
        let mut gens: Vec<MultiPoly<Fp>> = sys.gens.iter().map(emb).collect();
        gens.push(rabinowitsch(&emb(&ineq), 0));
        let g = buchberger(&gens, &MonomialOrder::block2(1, 3)).unwrap();
        let elim = g.eliminate(1).unwrap();
        for x in 0..31u64 {
            for yv in 0..31u64 {
                let pt = [m.elem(0), m.elem(x), m.elem(yv)];
                let in_elim = elim.iter().all(|e| e.eval(&pt).is_zero());
                let expected = sys.points.contains(&vec![x, yv]) && !ineq.eval(&pt[1..]).is_zero();
                assert_eq!(in_elim, expected);
            }
        }
    }
}

#[test]
fn stickelberger_conditions_detect_fibers() {
    let m = PrimeModulus::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let ys = [5u64, 17, 40];
    for _ in 0..20 {
        // points (w, y) with distinct w and few y values
        let npts = rng.gen_range(2..7);
        let mut ws: Vec<u64> = Vec::new();
        while ws.len() < npts {
            let w = rng.gen_range(0..101);
            if !ws.contains(&w) {
                ws.push(w);
            }
        }
        let pts: Vec<(u64, u64)> = ws.iter().map(|&w| (w, ys[rng.gen_range(0..3)])).collect();
        let chi = pts.iter().fold(UniPoly::one(&m), |acc, p| &acc * &UniPoly::linear(&m.elem(p.1)));
        // chi over [T, y]
        let chi = MultiPoly::from_univariate(&chi, 0, 2);
        for l in 1..4 {
            let conds = stickelberger_conditions(&chi, 0, 1, l);
            assert_eq!(conds.len(), l);
            for &yv in &ys {
                let count = pts.iter().filter(|p| p.1 == yv).count();
                let vals = [m.elem(0), m.elem(yv)];
                let holds = conds.iter().all(|c| c.eval(&vals).is_zero());
                assert_eq!(holds, count >= l, "l = {l}, fiber {count}");
            }
        }
    }
}

//! Per-point computations modulo a prime: the eval variable is fixed and
//! a univariate polynomial in the other variable comes out.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::interp::{sample_and_fit, FitFailure, FitRequest};
use super::{Algorithm, EvalVariable, SolveError, SolveOptions};
use crate::groebner::{f4, GroebnerBasis};
use crate::numeric::reduce_rational;
use crate::parser::DdeSpec;
use crate::poly::{discriminant, MonomialOrder, MultiPoly};
use crate::systems::{
    build_duplicated_system, build_kernel_system, hermite_matrix, rabinowitsch, random_minor_combination,
    ConstraintSystem,
};
use crate::{Fp, FpPoly, PrimeModulus, QPoly, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("the eliminant vanishes identically")]
    ZeroEliminant,
    #[error("{0}")]
    Bad(String),
}

/// A DDE prepared for modular evaluation.
#[derive(Clone, Debug)]
pub struct Instance {
    pub k: usize,
    pub a: Rational,
    pub p: QPoly,
    /// Fiber multiplicity used by the elimination algorithm.
    pub fiber: usize,
    /// Extra inequation over the `P` layout `[x, z0, .., t, u]`.
    pub extra: Option<QPoly>,
    pub variable: EvalVariable,
    pub seed: u64,
    pub margin: usize,
    pub max_points: usize,
}

impl Instance {
    pub fn new(dde: &DdeSpec, opts: &SolveOptions) -> Result<Self, SolveError> {
        let fiber = opts.fiber.unwrap_or(dde.k);
        if fiber == 0 {
            return Err(SolveError::AssumptionViolated("fiber multiplicity must be positive".into()));
        }
        if let Some(e) = &opts.extra_saturation {
            if e.nvars() != dde.k + 3 {
                return Err(SolveError::Unsupported(
                    "the extra saturation must be written in the DDE variables".into(),
                ));
            }
            if e.is_zero() {
                return Err(SolveError::AssumptionViolated("the extra saturation is zero".into()));
            }
        }
        Ok(Instance {
            k: dde.k,
            a: dde.a.clone(),
            p: dde.p.clone(),
            fiber,
            extra: opts.extra_saturation.clone(),
            variable: opts.variable,
            seed: opts.seed,
            margin: opts.margin,
            max_points: opts.max_points,
        })
    }

    /// `P` and `a` modulo `p`; `None` for primes dividing a denominator or
    /// killing a coefficient.
    pub fn reduce(&self, m: &'static PrimeModulus) -> Option<Reduced> {
        let p = self.p.reduce_mod(m)?;
        if p.len() != self.p.len() {
            return None;
        }
        let a = reduce_rational(m, &self.a)?;
        let extra = match &self.extra {
            Some(e) => {
                let r = e.reduce_mod(m)?;
                if r.len() != e.len() {
                    return None;
                }
                Some(r)
            }
            None => None,
        };
        Some(Reduced { m, p, a, extra })
    }

    /// Points excluded from evaluation: `0`, and `a` (for `z0` the saturation
    /// does not depend on it, but small values are cheap to skip).
    pub fn excluded(&self, r: &Reduced) -> Vec<Fp> {
        vec![r.m.elem(0), r.a]
    }

    /// Index of the evaluation and the free variable in the kernel universe
    /// `[m, x, u, z0, .., t]`.
    fn kernel_slots(&self) -> (usize, usize) {
        let t = self.k + 3;
        match self.variable {
            EvalVariable::T => (t, 3),
            EvalVariable::Z0 => (3, t),
        }
    }

    fn kernel_system(&self, r: &Reduced) -> Result<ConstraintSystem<Fp>, PointError> {
        let mut sys = build_kernel_system(&r.p, self.k, &r.a).map_err(|e| PointError::Bad(e.to_string()))?;
        if let Some(e) = &r.extra {
            let n = sys.nvars();
            let mut map = vec![None; self.k + 3];
            map[0] = Some(1);
            for i in 0..self.k {
                map[1 + i] = Some(3 + i);
            }
            map[self.k + 1] = Some(self.k + 3);
            map[self.k + 2] = Some(2);
            let e = e.reindex(n, &map).expect("full map");
            let sat = &sys.inequations[0] * &e;
            sys.equations[3] = rabinowitsch(&sat, 0);
            sys.inequations = vec![sat];
        }
        Ok(sys)
    }

    /// Evaluate the chosen algorithm at `v`: a monic squarefree polynomial
    /// in the free variable.
    pub fn eval(&self, alg: Algorithm, r: &Reduced, v: &Fp) -> Result<UniPoly<Fp>, PointError> {
        let out = match alg {
            Algorithm::Elimination | Algorithm::Hybrid => self.elimination_point(r, v)?,
            Algorithm::Duplication => self.duplication_point(r, v)?,
            Algorithm::Geometry => self.geometry_point(r, v)?,
        };
        if out.is_zero() {
            return Err(PointError::ZeroEliminant);
        }
        Ok(out.squarefree_part().monic())
    }

    pub fn duplication_point(&self, r: &Reduced, v: &Fp) -> Result<UniPoly<Fp>, PointError> {
        let k = self.k;
        let mut sys = build_duplicated_system(&r.p, k, &r.a).map_err(|e| PointError::Bad(e.to_string()))?;
        let t = 3 * k + 1;
        let z0 = 2 * k + 1;
        if let Some(e) = &r.extra {
            // one copy of the extra inequation per branch
            let n = sys.nvars();
            let mut sat = sys.inequations[0].clone();
            for i in 0..k {
                let mut map = vec![None; k + 3];
                map[0] = Some(1 + i);
                for j in 0..k {
                    map[1 + j] = Some(z0 + j);
                }
                map[k + 1] = Some(t);
                map[k + 2] = Some(k + 1 + i);
                sat = &sat * &e.reindex(n, &map).expect("full map");
            }
            let last = sys.equations.len() - 1;
            sys.equations[last] = rabinowitsch(&sat, 0);
        }
        let (ev, free) = match self.variable {
            EvalVariable::T => (t, z0),
            EvalVariable::Z0 => (z0, t),
        };
        let gens = specialize_drop(&sys.equations, ev, v);
        eliminant(&gens, shift_after(free, ev))
    }

    pub fn elimination_point(&self, r: &Reduced, v: &Fp) -> Result<UniPoly<Fp>, PointError> {
        let sys = self.kernel_system(r)?;
        let (ev, free) = self.kernel_slots();
        let gens = specialize_drop(&sys.equations, ev, v);
        let n = gens[0].nvars();
        let free = shift_after(free, ev);
        // project away m and x
        let Some(proj) = eliminate_leading(gens, 2)? else {
            return Ok(UniPoly::one(&r.m));
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ v.value().rotate_left(29) ^ r.m.modulus());
        branch_and_eliminate(r.m, proj, n - 2, free - 2, self.fiber, &mut rng)
    }

    pub fn geometry_point(&self, r: &Reduced, v: &Fp) -> Result<UniPoly<Fp>, PointError> {
        if self.k != 2 {
            return Err(PointError::Bad("geometry needs k = 2".into()));
        }
        let sys = self.kernel_system(r)?;
        let (ev, free) = self.kernel_slots();
        let gens = specialize_drop(&sys.equations, ev, v);
        // [m, x, u, z1, w] after moving the free variable w last
        let free = shift_after(free, ev);
        let n = gens[0].nvars();
        let perm: Vec<Option<usize>> = (0..n)
            .map(|i| {
                Some(match i.cmp(&free) {
                    std::cmp::Ordering::Less => i,
                    std::cmp::Ordering::Equal => n - 1,
                    std::cmp::Ordering::Greater => i - 1,
                })
            })
            .collect();
        let gens: Vec<FpPoly> = gens.iter().map(|g| g.reindex(n, &perm).expect("permutation")).collect();
        let z1 = n - 2;
        let req = FitRequest {
            m: r.m,
            seed: self.seed ^ v.value().rotate_left(7),
            excluded: &[r.m.elem(0)],
            initial: 8,
            max_points: self.max_points,
            margin: self.margin,
        };
        let mut log = Vec::new();
        let inner = |w: &Fp| -> Result<Vec<Fp>, String> {
            let g = specialize_drop(&gens, n - 1, w);
            let gb = f4(&g, &MonomialOrder::Grevlex).map_err(|e| e.to_string())?;
            if gb.is_unit() {
                return Err("empty fiber".into());
            }
            let chi = gb.char_poly(z1).map_err(|e| e.to_string())?;
            Ok(chi.monic().into_coeffs())
        };
        let fit = sample_and_fit(&req, inner, &mut log).map_err(|e| match e {
            FitFailure::Budget => PointError::Bad("inner interpolation ran out of points".into()),
            FitFailure::NoGoodPoints => PointError::Bad("no inner point has a finite fiber".into()),
        })?;
        // chi(w, T) over [w, T]
        let mut chi = FpPoly::zero(&r.m, 2);
        for (j, c) in fit.num.iter().enumerate() {
            let cw = MultiPoly::from_univariate(c, 0, 2);
            chi = &chi + &(&cw * &MultiPoly::var(&r.m, 2, 1).pow(j as u32));
        }
        let d = discriminant(&chi, 1).map_err(|e| PointError::Bad(e.to_string()))?;
        d.to_univariate(0).map_err(|e| PointError::Bad(e.to_string()))
    }
}

/// `P`, `a` and the extra inequation modulo one prime.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub m: &'static PrimeModulus,
    pub p: FpPoly,
    pub a: Fp,
    pub extra: Option<FpPoly>,
}

fn shift_after(i: usize, removed: usize) -> usize {
    if i > removed {
        i - 1
    } else {
        i
    }
}

/// Substitute `var = v` and drop `var` from the universe.
pub(crate) fn specialize_drop(gens: &[FpPoly], var: usize, v: &Fp) -> Vec<FpPoly> {
    let n = gens[0].nvars();
    let map: Vec<Option<usize>> = (0..n)
        .map(|i| match i.cmp(&var) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        })
        .collect();
    gens.iter()
        .map(|g| g.specialize(&[(var, *v)]).reindex(n - 1, &map).expect("variable eliminated"))
        .collect()
}

/// Move variable `var` to the front of the universe.
fn to_front(gens: &[FpPoly], var: usize) -> Vec<FpPoly> {
    let n = gens[0].nvars();
    let perm: Vec<Option<usize>> = (0..n)
        .map(|i| {
            Some(match i.cmp(&var) {
                std::cmp::Ordering::Less => i + 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => i,
            })
        })
        .collect();
    gens.iter().map(|g| g.reindex(n, &perm).expect("permutation")).collect()
}

/// Basis of `<gens> ∩ K[x1, ..]` over the universe without `x0`; `None`
/// for the unit ideal. Starts from a grevlex basis, which keeps the block
/// order run small.
fn eliminate_first(gens: &[FpPoly]) -> Result<Option<Vec<FpPoly>>, PointError> {
    let n = gens[0].nvars();
    let g = f4(gens, &MonomialOrder::Grevlex).map_err(|e| PointError::Bad(e.to_string()))?;
    if g.is_unit() {
        return Ok(None);
    }
    let gb = f4(&g.generators(), &MonomialOrder::block2(1, n))
        .map_err(|e| PointError::Bad(e.to_string()))?;
    let map: Vec<Option<usize>> = (0..n).map(|i| i.checked_sub(1)).collect();
    Ok(Some(
        gb.eliminate(1)
            .expect("block order")
            .iter()
            .map(|p| p.reindex(n - 1, &map).expect("free of x0"))
            .collect(),
    ))
}

/// Eliminate the first `count` variables one at a time; eliminating them
/// together under one block order is far slower in practice.
fn eliminate_leading(mut gens: Vec<FpPoly>, count: usize) -> Result<Option<Vec<FpPoly>>, PointError> {
    for _ in 0..count {
        let ctx = *gens[0].ctx();
        let n = gens[0].nvars();
        if gens.iter().all(|g| g.is_zero()) {
            gens = vec![FpPoly::zero(&ctx, n - 1)];
            continue;
        }
        match eliminate_first(&gens)? {
            None => return Ok(None),
            Some(e) if e.is_empty() => gens = vec![FpPoly::zero(&ctx, n - 1)],
            Some(e) => gens = e,
        }
    }
    Ok(Some(gens))
}

/// Generator of `<gens> ∩ K[target]`; `1` for the unit ideal.
pub(crate) fn eliminant(gens: &[FpPoly], target: usize) -> Result<UniPoly<Fp>, PointError> {
    let ctx = *gens[0].ctx();
    let mut gens = gens.to_vec();
    let mut target = target;
    loop {
        if gens.iter().all(|g| g.is_zero()) {
            return Err(PointError::ZeroEliminant);
        }
        let gb = f4(&gens, &MonomialOrder::Grevlex).map_err(|e| PointError::Bad(e.to_string()))?;
        if gb.is_unit() {
            return Ok(UniPoly::one(&ctx));
        }
        if gb.quotient_dimension().is_ok() {
            return gb.minimal_polynomial(target).map_err(|e| PointError::Bad(e.to_string()));
        }
        let n = gens[0].nvars();
        if n == 1 {
            return Err(PointError::ZeroEliminant);
        }
        // drop the first variable other than the target
        let var = if target == 0 { 1 } else { 0 };
        let front = to_front(&gb.generators(), var);
        match eliminate_first(&front)? {
            None => return Ok(UniPoly::one(&ctx)),
            Some(e) if e.is_empty() => return Err(PointError::ZeroEliminant),
            Some(e) => gens = e,
        }
        if target > var {
            target -= 1;
        }
    }
}

/// Branch on the `u`-structure of `gens` over `[u, q..]` and eliminate each
/// branch down to `target`, keeping only points whose `u`-fiber has at
/// least `fiber` distinct elements. Returns the product of the branch
/// eliminants.
fn branch_and_eliminate(
    m: &'static PrimeModulus,
    gens: Vec<FpPoly>,
    n: usize,
    target: usize,
    fiber: usize,
    rng: &mut ChaCha8Rng,
) -> Result<UniPoly<Fp>, PointError> {
    let order = MonomialOrder::block2(1, n);
    let one = FpPoly::one(&m, n);
    let mut work = vec![(gens, one.clone())];
    let mut product = UniPoly::one(&m);
    let mut branches = 0usize;
    while let Some((eqs, ineq)) = work.pop() {
        branches += 1;
        if branches > 64 {
            return Err(PointError::Bad("too many branches".into()));
        }
        let gb: GroebnerBasis<Fp> = f4(&eqs, &order).map_err(|e| PointError::Bad(e.to_string()))?;
        if gb.is_unit() {
            continue;
        }
        let polys = gb.generators();
        // fewer than `fiber` roots unless the polynomial vanishes in u
        let low: Vec<&FpPoly> = polys
            .iter()
            .filter(|g| (1..fiber as u32).contains(&g.degree_in(0)))
            .collect();
        if !low.is_empty() {
            let mut next = polys.clone();
            for g in low {
                next.extend(g.coeffs_in(0).into_iter().filter(|c| !c.is_zero()));
            }
            work.push((next, ineq));
            continue;
        }
        let mut cands: Vec<&FpPoly> = polys.iter().filter(|g| g.degree_in(0) >= fiber as u32).collect();
        cands.sort_by_key(|g| g.degree_in(0));
        let Some(g) = cands.first() else {
            product = &product * &finalize(&polys, &ineq, target)?;
            continue;
        };
        let c = g.leading_coeff_in(0);
        let h = hermite_matrix(g, 0).map_err(|e| PointError::Bad(e.to_string()))?;
        let p = m.modulus();
        let comb = random_minor_combination(&h, fiber, || m.elem(rng.gen_range(1..p)))
            .map_err(|e| PointError::Bad(e.to_string()))?;
        let ineq_a = &(&ineq * &c) * &comb;
        if !ineq_a.is_zero() {
            product = &product * &finalize(&polys, &ineq_a, target)?;
        }
        if !c.is_constant() {
            let mut next = polys.clone();
            next.push(c);
            work.push((next, ineq));
        }
    }
    Ok(product)
}

/// Eliminant in `target` of `eqs` with `ineq != 0`.
fn finalize(eqs: &[FpPoly], ineq: &FpPoly, target: usize) -> Result<UniPoly<Fp>, PointError> {
    let n = ineq.nvars();
    let map: Vec<Option<usize>> = (0..n).map(|i| Some(i + 1)).collect();
    let mut gens: Vec<FpPoly> = eqs.iter().map(|g| g.reindex(n + 1, &map).expect("shift")).collect();
    gens.push(rabinowitsch(&ineq.reindex(n + 1, &map).expect("shift"), 0));
    eliminant(&gens, target + 1)
}

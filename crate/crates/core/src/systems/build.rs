//! The kernel system and the duplicated system.

use super::SystemsError;
use crate::numeric::Field;
use crate::poly::MultiPoly;

/// Roles of the variables of a [`ConstraintSystem`] universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roles {
    /// Rabinowitsch variables.
    pub m: Vec<usize>,
    pub x: Vec<usize>,
    pub u: Vec<usize>,
    /// `z0 .. z_{k-1}`.
    pub z: Vec<usize>,
    pub t: usize,
}

/// Equations plus the inequations they encode, over a named universe.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<F: Field> {
    pub vars: Vec<String>,
    pub equations: Vec<MultiPoly<F>>,
    /// Inequations already encoded through the `m` variables.
    pub inequations: Vec<MultiPoly<F>>,
    pub roles: Roles,
    /// Warnings about degenerate generators (kept in `equations`).
    pub diagnostics: Vec<String>,
}

impl<F: Field> ConstraintSystem<F> {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    /// Number of unknowns, i.e. all variables but `t`.
    pub fn unknowns(&self) -> usize {
        self.vars.len() - 1
    }
}

/// `m * ineq - 1`, with `m` a variable of the universe of `ineq`.
pub fn rabinowitsch<F: Field>(ineq: &MultiPoly<F>, m: usize) -> MultiPoly<F> {
    let mv = MultiPoly::var(ineq.ctx(), ineq.nvars(), m);
    &(&mv * ineq) - &MultiPoly::one(ineq.ctx(), ineq.nvars())
}

fn check_p<F: Field>(p: &MultiPoly<F>, k: usize) -> Result<(), SystemsError> {
    if k == 0 {
        return Err(SystemsError::Shape("k must be at least 1".into()));
    }
    if p.nvars() != k + 3 {
        return Err(SystemsError::Shape(format!(
            "P has {} variables, expected {} for k = {k}",
            p.nvars(),
            k + 3
        )));
    }
    if p.is_zero() {
        return Err(SystemsError::Degenerate("P is zero".into()));
    }
    Ok(())
}

/// `[P, dP/dx, dP/du]` with degeneracy notes. `P` uses the layout
/// `[x, z0, .., z_{k-1}, t, u]`.
fn kernel_triple<F: Field>(p: &MultiPoly<F>, k: usize, diags: &mut Vec<String>) -> [MultiPoly<F>; 3] {
    let px = p.differentiate(0);
    let pu = p.differentiate(k + 2);
    if px.is_zero() {
        diags.push("dP/dx is identically zero".into());
    }
    if pu.is_zero() {
        diags.push("dP/du is identically zero".into());
    }
    [p.clone(), px, pu]
}

fn z_names(k: usize) -> impl Iterator<Item = String> {
    (0..k).map(|i| format!("z{i}"))
}

/// `{P, dP/dx, dP/du, m*u*(u-a) - 1}` over `[m, x, u, z0, .., z_{k-1}, t]`.
pub fn build_kernel_system<F: Field>(p: &MultiPoly<F>, k: usize, a: &F) -> Result<ConstraintSystem<F>, SystemsError> {
    check_p(p, k)?;
    let n = k + 4;
    let ctx = p.ctx().clone();
    let mut map = vec![None; k + 3];
    map[0] = Some(1);
    for i in 0..k {
        map[1 + i] = Some(3 + i);
    }
    map[k + 1] = Some(k + 3);
    map[k + 2] = Some(2);
    let mut diagnostics = Vec::new();
    let mut equations: Vec<MultiPoly<F>> = kernel_triple(p, k, &mut diagnostics)
        .iter()
        .map(|q| q.reindex(n, &map).expect("full map"))
        .collect();
    let u = MultiPoly::var(&ctx, n, 2);
    let sat = &u * &(&u - &MultiPoly::constant(a.clone(), n));
    equations.push(rabinowitsch(&sat, 0));
    let vars = ["m", "x", "u"]
        .iter()
        .map(|s| s.to_string())
        .chain(z_names(k))
        .chain(std::iter::once("t".to_string()))
        .collect();
    Ok(ConstraintSystem {
        vars,
        equations,
        inequations: vec![sat],
        roles: Roles {
            m: vec![0],
            x: vec![1],
            u: vec![2],
            z: (3..3 + k).collect(),
            t: k + 3,
        },
        diagnostics,
    })
}

/// The duplicated system over `[m, x1..xk, u1..uk, z0..z_{k-1}, t]`: the
/// kernel triple at `(x_i, u_i)` for each `i`, and
/// `m * prod_{i<j}(u_i - u_j) * prod_i u_i (u_i - a) - 1`.
pub fn build_duplicated_system<F: Field>(
    p: &MultiPoly<F>,
    k: usize,
    a: &F,
) -> Result<ConstraintSystem<F>, SystemsError> {
    check_p(p, k)?;
    let n = 3 * k + 2;
    let ctx = p.ctx().clone();
    let xs: Vec<usize> = (1..=k).collect();
    let us: Vec<usize> = (k + 1..=2 * k).collect();
    let zs: Vec<usize> = (2 * k + 1..=3 * k).collect();
    let t = 3 * k + 1;
    let mut diagnostics = Vec::new();
    let triple = kernel_triple(p, k, &mut diagnostics);
    let mut equations = Vec::with_capacity(3 * k + 1);
    for i in 0..k {
        let mut map = vec![None; k + 3];
        map[0] = Some(xs[i]);
        for (j, &z) in zs.iter().enumerate() {
            map[1 + j] = Some(z);
        }
        map[k + 1] = Some(t);
        map[k + 2] = Some(us[i]);
        for q in &triple {
            equations.push(q.reindex(n, &map).expect("full map"));
        }
    }
    let uv: Vec<MultiPoly<F>> = us.iter().map(|&v| MultiPoly::var(&ctx, n, v)).collect();
    let ac = MultiPoly::constant(a.clone(), n);
    let mut sat = MultiPoly::one(&ctx, n);
    for i in 0..k {
        for j in i + 1..k {
            sat = &sat * &(&uv[i] - &uv[j]);
        }
    }
    for ui in &uv {
        sat = &sat * &(ui * &(ui - &ac));
    }
    equations.push(rabinowitsch(&sat, 0));
    let mut vars = vec!["m".to_string()];
    vars.extend((1..=k).map(|i| format!("x{i}")));
    vars.extend((1..=k).map(|i| format!("u{i}")));
    vars.extend(z_names(k));
    vars.push("t".into());
    Ok(ConstraintSystem {
        vars,
        equations,
        inequations: vec![sat],
        roles: Roles {
            m: vec![0],
            x: xs,
            u: us,
            z: zs,
            t,
        },
        diagnostics,
    })
}

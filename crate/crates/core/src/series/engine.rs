//! Order-by-order expansion of the fixed point `F = rhs(F, Delta F, .., t, u)`.
//!
//! Coefficients are kept in powers of `w = u - a`. In that basis the
//! divided difference drops the constant coefficient and the `i`-th
//! derivative at `a` is `i!` times coefficient `i`.

use std::collections::HashMap;

use super::{BivariateSeries, SeriesError, UniSeries};
use crate::numeric::Field;
use crate::parser::DdeSpec;
use crate::poly::UniPoly;
use crate::Rational;

/// A product of atoms, built from its parent times one atom.
struct Node<C> {
    parent: usize,
    atom: usize,
    coeffs: Vec<C>,
}

/// Memoized products of atom series, with node 0 the constant series 1.
struct Products<C> {
    index: HashMap<Vec<u32>, usize>,
    nodes: Vec<Node<C>>,
}

impl<C> Products<C> {
    fn new(natoms: usize) -> Self {
        let mut index = HashMap::new();
        index.insert(vec![0; natoms], 0);
        Products {
            index,
            nodes: vec![Node {
                parent: usize::MAX,
                atom: usize::MAX,
                coeffs: Vec::new(),
            }],
        }
    }

    fn get(&mut self, exps: &[u32]) -> usize {
        if let Some(&i) = self.index.get(exps) {
            return i;
        }
        let atom = exps.iter().position(|&e| e > 0).expect("nonzero exponent");
        let mut pe = exps.to_vec();
        pe[atom] -= 1;
        let parent = self.get(&pe);
        self.nodes.push(Node {
            parent,
            atom,
            coeffs: Vec::new(),
        });
        let i = self.nodes.len() - 1;
        self.index.insert(exps.to_vec(), i);
        i
    }
}

struct Group<F: Field> {
    j: usize,
    poly: usize,
    scalar: usize,
    g: UniPoly<F>,
}

struct Engine<F: Field> {
    ctx: F::Ctx,
    k: usize,
    groups: Vec<Group<F>>,
    c0: UniPoly<F>,
    /// coefficients of F in powers of w
    c: Vec<UniPoly<F>>,
    /// series of x, D1..Dk
    atoms: Vec<Vec<UniPoly<F>>>,
    /// series of z0..z_{k-1}
    zs: Vec<Vec<F>>,
    polys: Products<UniPoly<F>>,
    scalars: Products<F>,
    factorials: Vec<F>,
}

impl<F: Field> Engine<F> {
    fn new(dde: &DdeSpec, ctx: &F::Ctx) -> Result<Self, SeriesError> {
        let rhs = dde.rhs.as_ref().ok_or(SeriesError::MissingRhs)?;
        let k = dde.k;
        let a = F::from_rational(ctx, &dde.a).ok_or(SeriesError::BadPrime)?;
        let (ti, ui) = (dde.rhs_index(dde.t()), dde.rhs_index(dde.u()));
        let mut polys = Products::new(k + 1);
        let mut scalars = Products::new(k);
        let mut grouped: HashMap<(usize, usize, usize), Vec<F>> = HashMap::new();
        for (m, c) in rhs.terms() {
            let pe: Vec<u32> = (0..=k).map(|i| m.exp(i)).collect();
            let se: Vec<u32> = (0..k).map(|i| m.exp(dde.rhs_index(dde.z(i)))).collect();
            let j = m.exp(ti) as usize;
            let key = (j, polys.get(&pe), scalars.get(&se));
            let e = m.exp(ui) as usize;
            let v = F::from_rational(ctx, c).ok_or(SeriesError::BadPrime)?;
            let entry = grouped.entry(key).or_default();
            if entry.len() <= e {
                entry.resize(e + 1, F::zero(ctx));
            }
            entry[e].add_assign(&v);
        }
        let mut keys: Vec<_> = grouped.keys().copied().collect();
        keys.sort_unstable();
        let mut groups = Vec::new();
        let mut c0 = UniPoly::zero(ctx);
        for key in keys {
            let g = UniPoly::from_coeffs(ctx, grouped.remove(&key).unwrap()).taylor_shift(&a);
            if g.is_zero() {
                continue;
            }
            let (j, poly, scalar) = key;
            if j == 0 {
                if poly != 0 || scalar != 0 {
                    return Err(SeriesError::NotFixedPoint);
                }
                c0 = &c0 + &g;
            } else {
                groups.push(Group { j, poly, scalar, g });
            }
        }
        let mut factorials = vec![F::one(ctx)];
        for i in 1..k {
            let f = factorials[i - 1].mul(&F::from_i64(ctx, i as i64));
            factorials.push(f);
        }
        Ok(Engine {
            ctx: ctx.clone(),
            k,
            groups,
            c0,
            c: Vec::new(),
            atoms: vec![Vec::new(); k + 1],
            zs: vec![Vec::new(); k],
            polys,
            scalars,
            factorials,
        })
    }

    /// Record `c_n` and extend every derived series to index `n`.
    fn push(&mut self, cn: UniPoly<F>) {
        let n = self.c.len();
        for l in 0..=self.k {
            let shifted = UniPoly::from_coeffs(&self.ctx, cn.coeffs().iter().skip(l).cloned().collect());
            self.atoms[l].push(shifted);
        }
        for i in 0..self.k {
            self.zs[i].push(cn.coeff(i).mul(&self.factorials[i]));
        }
        self.c.push(cn);

        let one = F::one(&self.ctx);
        let zero = F::zero(&self.ctx);
        for idx in 0..self.polys.nodes.len() {
            let v = if idx == 0 {
                if n == 0 { UniPoly::one(&self.ctx) } else { UniPoly::zero(&self.ctx) }
            } else {
                let (p, a) = (self.polys.nodes[idx].parent, self.polys.nodes[idx].atom);
                if p == 0 {
                    self.atoms[a][n].clone()
                } else {
                    let mut acc = UniPoly::zero(&self.ctx);
                    let par = &self.polys.nodes[p].coeffs;
                    for i in 0..=n {
                        if !par[i].is_zero() && !self.atoms[a][n - i].is_zero() {
                            acc = &acc + &(&par[i] * &self.atoms[a][n - i]);
                        }
                    }
                    acc
                }
            };
            self.polys.nodes[idx].coeffs.push(v);
        }
        for idx in 0..self.scalars.nodes.len() {
            let v = if idx == 0 {
                if n == 0 { one.clone() } else { zero.clone() }
            } else {
                let (p, a) = (self.scalars.nodes[idx].parent, self.scalars.nodes[idx].atom);
                let mut acc = zero.clone();
                let par = &self.scalars.nodes[p].coeffs;
                for i in 0..=n {
                    acc.add_mul_assign(&par[i], &self.zs[a][n - i]);
                }
                acc
            };
            self.scalars.nodes[idx].coeffs.push(v);
        }
    }

    fn next_coeff(&self) -> UniPoly<F> {
        let n = self.c.len();
        if n == 0 {
            return self.c0.clone();
        }
        let mut out = UniPoly::zero(&self.ctx);
        for g in &self.groups {
            if g.j > n {
                continue;
            }
            let m = n - g.j;
            let s = &self.scalars.nodes[g.scalar].coeffs;
            let p = &self.polys.nodes[g.poly].coeffs;
            let mut acc = UniPoly::zero(&self.ctx);
            for i in 0..=m {
                if !s[i].is_zero() {
                    acc.add_scaled(&s[i], &p[m - i]);
                }
            }
            out = &out + &(&g.g * &acc);
        }
        out
    }

    fn run(&mut self, order: usize) {
        while self.c.len() <= order {
            let cn = self.next_coeff();
            self.push(cn);
        }
    }
}

/// `F(t, u) mod t^(order+1)` over the rationals.
pub fn expand_bivariate(dde: &DdeSpec, order: usize) -> Result<BivariateSeries<Rational>, SeriesError> {
    expand_bivariate_in::<Rational>(dde, &(), order)
}

/// `F(t, u) mod t^(order+1)` over any field containing the DDE's constants.
pub fn expand_bivariate_in<F: Field>(dde: &DdeSpec, ctx: &F::Ctx, order: usize) -> Result<BivariateSeries<F>, SeriesError> {
    let mut e = Engine::<F>::new(dde, ctx)?;
    e.run(order);
    let a = F::from_rational(ctx, &dde.a).ok_or(SeriesError::BadPrime)?.neg();
    Ok(BivariateSeries {
        coeffs: e.c.iter().map(|p| p.taylor_shift(&a)).collect(),
    })
}

/// `d^i/du^i F(t, a) mod t^(order+1)` for `i = 0 .. count-1`.
pub fn expand_specializations<F: Field>(
    dde: &DdeSpec,
    ctx: &F::Ctx,
    order: usize,
    count: usize,
) -> Result<Vec<UniSeries<F>>, SeriesError> {
    let mut e = Engine::<F>::new(dde, ctx)?;
    e.run(order);
    let mut fact = F::one(ctx);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        if i > 0 {
            fact.mul_assign(&F::from_i64(ctx, i as i64));
        }
        out.push(UniSeries {
            coeffs: e.c.iter().map(|p| p.coeff(i).mul(&fact)).collect(),
        });
    }
    Ok(out)
}

//! Faugère's F4 over word-size prime fields: batches of S-pairs are reduced
//! together as rows of a sparse matrix.

use std::rc::Rc;

use rustc_hash::{FxHashMap, FxHashSet};

use super::buchberger::{divmask, BuchbergerStats, Terms};
use crate::poly::{Monomial, MonomialOrder, MultiPoly};
use crate::{Fp, PrimeModulus};

/// Terms as (monomial id, Montgomery coefficient), descending, monic.
type Row = Vec<(u32, u64)>;

struct Table {
    ids: FxHashMap<Monomial, u32>,
    monos: Vec<Monomial>,
}

impl Table {
    fn id(&mut self, m: Monomial) -> u32 {
        if let Some(&i) = self.ids.get(&m) {
            return i;
        }
        let i = self.monos.len() as u32;
        self.monos.push(m);
        self.ids.insert(m, i);
        i
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Input rows, all reduced.
    Inputs,
    /// S-pair halves; the first row per leading monomial is a pivot.
    Pairs,
    /// Interreduction of a minimal basis.
    Tails,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<'a> {
    m: &'static PrimeModulus,
    p: u64,
    order: &'a MonomialOrder,
    table: Table,
    basis: Vec<Row>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    sugar: Vec<u32>,
    /// Indices of basis elements whose leading monomial is not a multiple
    /// of a later one.
    active: Vec<usize>,
    pairs: Vec<Pair>,
    /// Reducer rows `q * basis[g]` keyed by (leading monomial, g); later
    /// batches mostly need the same ones.
    reducers: FxHashMap<(u32, u32), Rc<Row>>,
    cached_terms: usize,
}

/// Upper bound on the terms kept in the reducer cache.
const CACHE_TERMS: usize = 1 << 25;

impl State<'_> {
    fn lm(&self, r: &Row) -> Monomial {
        self.table.monos[r[0].0 as usize]
    }

    fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        let mm = divmask(m);
        let mut best: Option<usize> = None;
        for &g in &self.active {
            if self.masks[g] & !mm == 0 && self.lms[g].divides(m) {
                // shorter reducers keep the matrix sparse
                if best.is_none_or(|b| self.basis[g].len() < self.basis[b].len()) {
                    best = Some(g);
                }
            }
        }
        best
    }

    fn multiply(&mut self, g: usize, q: &Monomial) -> Row {
        let mut out = Vec::with_capacity(self.basis[g].len());
        for k in 0..self.basis[g].len() {
            let (mi, c) = self.basis[g][k];
            let mono = self.table.monos[mi as usize].mul(q);
            out.push((self.table.id(mono), c));
        }
        out
    }

    /// Insert a monic row and update the pair list (Gebauer-Moller).
    fn insert(&mut self, row: Row, sugar: u32) {
        let hm = self.lm(&row);
        let hi = self.basis.len();
        self.masks.push(divmask(&hm));
        self.lms.push(hm);
        self.basis.push(row);
        self.sugar.push(sugar);

        let mut cand: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let gm = self.lms[g];
                let lcm = hm.lcm(&gm);
                let s = (self.sugar[g] + lcm.deg() - gm.deg()).max(sugar + lcm.deg() - hm.deg());
                Pair { i: g, j: hi, lcm, sugar: s }
            })
            .collect();
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            if self.lms[cand[a].i].coprime(&hm) {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cand[b].lcm.divides(&cand[a].lcm) && (cand[b].lcm != cand[a].lcm || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        for (a, c) in cand.iter().enumerate() {
            if self.lms[c.i].coprime(&hm) {
                keep[a] = false;
            }
        }
        let mut idx = 0;
        cand.retain(|_| {
            let k = keep[idx];
            idx += 1;
            k
        });
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm) && hm.lcm(&lms[p.i]) != p.lcm && hm.lcm(&lms[p.j]) != p.lcm)
        });
        self.pairs.extend(cand);
        self.active.retain(|&g| !hm.divides(&lms[g]));
        self.active.push(hi);
    }

    /// Reduce `rows` against the basis and each other; returns the new
    /// monic rows, i.e. those whose leading monomial is not a leading
    /// monomial of the basis. In [`Mode::Tails`] every row keeps its leading
    /// term and comes back with a fully reduced tail.
    fn reduce_batch(&mut self, rows: Vec<Row>, mode: Mode) -> Vec<Row> {
        let full_tail = mode == Mode::Tails;
        let mut pivot_of: FxHashMap<u32, Rc<Row>> = FxHashMap::default();
        let mut todo: Vec<Row> = Vec::new();
        for r in rows {
            match mode {
                Mode::Pairs if !pivot_of.contains_key(&r[0].0) => {
                    pivot_of.insert(r[0].0, Rc::new(r));
                }
                Mode::Tails => {
                    pivot_of.insert(r[0].0, Rc::new(r.clone()));
                    todo.push(r);
                }
                _ => todo.push(r),
            }
        }
        // symbolic preprocessing
        let mut seen: FxHashSet<u32> = FxHashSet::default();
        let mut queue: Vec<u32> = Vec::new();
        for r in pivot_of.values().map(|r| &**r).chain(todo.iter()) {
            for &(mi, _) in r {
                if seen.insert(mi) {
                    queue.push(mi);
                }
            }
        }
        while let Some(mi) = queue.pop() {
            if pivot_of.contains_key(&mi) {
                continue;
            }
            let mono = self.table.monos[mi as usize];
            let Some(g) = self.find_divisor(&mono) else { continue };
            let r = match self.reducers.get(&(mi, g as u32)) {
                Some(r) => r.clone(),
                None => {
                    let q = self.lms[g].quotient_of(&mono).expect("divisor");
                    let r = Rc::new(self.multiply(g, &q));
                    if self.cached_terms + r.len() > CACHE_TERMS {
                        self.reducers.clear();
                        self.cached_terms = 0;
                    }
                    self.cached_terms += r.len();
                    self.reducers.insert((mi, g as u32), r.clone());
                    r
                }
            };
            for &(mj, _) in r.iter() {
                if seen.insert(mj) {
                    queue.push(mj);
                }
            }
            pivot_of.insert(mi, r);
        }
        // columns, descending
        let mut cols: Vec<u32> = seen.into_iter().collect();
        let monos = &self.table.monos;
        let order = self.order;
        cols.sort_unstable_by(|a, b| order.cmp(&monos[*b as usize], &monos[*a as usize]));
        let mut col_of = vec![u32::MAX; monos.len()];
        for (c, &mi) in cols.iter().enumerate() {
            col_of[mi as usize] = c as u32;
        }
        let ncols = cols.len();
        // pivot rows split into column and value arrays, leading entry dropped
        let split = |r: &Row| -> (Vec<u32>, Vec<u64>) { r[1..].iter().map(|&(mi, c)| (col_of[mi as usize], c)).unzip() };
        let mut pivots: Vec<Option<(Vec<u32>, Vec<u64>)>> = vec![None; ncols];
        for (mi, r) in &pivot_of {
            pivots[col_of[*mi as usize] as usize] = Some(split(r));
        }
        let m = self.m;
        let p = self.p;
        // below 2^62 the entries of `dense` live in [0, 2p) and are only
        // reduced when read
        let lazy = p < 1 << 62;
        let p2 = p.wrapping_mul(2);
        let mut dense = vec![0u64; ncols];
        let mut out = Vec::new();
        for r in &todo {
            let first = col_of[r[0].0 as usize] as usize;
            let start = if full_tail { first + 1 } else { first };
            for &(mi, v) in r {
                dense[col_of[mi as usize] as usize] = v;
            }
            let mut lead: Option<usize> = if full_tail { Some(first) } else { None };
            for c in start..ncols {
                let mut f = dense[c];
                if f >= p {
                    f -= p;
                }
                if f == 0 {
                    dense[c] = 0;
                    continue;
                }
                dense[c] = f;
                match &pivots[c] {
                    Some((pc, pv)) => {
                        dense[c] = 0;
                        if lazy {
                            // Shoup multiplication by the plain value of f leaves
                            // the product in [0, 2p); no data dependent branches
                            let w = m.mul_raw(f, 1);
                            let ws = (((w as u128) << 64) / p as u128) as u64;
                            for (&cc, &v) in pc.iter().zip(pv) {
                                let qh = ((v as u128 * ws as u128) >> 64) as u64;
                                let prod = v.wrapping_mul(w).wrapping_sub(qh.wrapping_mul(p));
                                let d = &mut dense[cc as usize];
                                let t = *d + p2 - prod;
                                *d = t.min(t.wrapping_sub(p2));
                            }
                        } else {
                            for (&cc, &v) in pc.iter().zip(pv) {
                                let prod = m.mul_raw(f, v);
                                let d = &mut dense[cc as usize];
                                *d = if *d >= prod { *d - prod } else { *d + p - prod };
                            }
                        }
                    }
                    None => {
                        if lead.is_none() {
                            lead = Some(c);
                        }
                    }
                }
            }
            let Some(lead) = lead else { continue };
            // collect and clear
            let inv = crate::Field::inv(&m.from_raw(dense[lead])).expect("nonzero");
            let mut row: Vec<(u32, u64)> = Vec::new();
            for (c, d) in dense.iter_mut().enumerate().skip(lead) {
                if *d >= p {
                    *d -= p;
                }
                if *d != 0 {
                    let v = m.mul_raw(*d, inv.raw());
                    row.push((c as u32, v));
                    *d = 0;
                }
            }
            if !full_tail {
                pivots[lead] = Some(row[1..].iter().copied().unzip());
            }
            out.push(row.into_iter().map(|(c, v)| (cols[c as usize], v)).collect());
        }
        out
    }
}

/// Reduced Groebner basis over a prime field, as monic [`Terms`] sorted by
/// increasing leading monomial.
pub(crate) fn f4_terms(
    m: &'static PrimeModulus,
    order: &MonomialOrder,
    gens: &[MultiPoly<Fp>],
    stats: &mut BuchbergerStats,
) -> Vec<Terms<Fp>> {
    let mut st = State {
        m,
        p: m.modulus(),
        order,
        table: Table {
            ids: FxHashMap::default(),
            monos: Vec::new(),
        },
        basis: Vec::new(),
        lms: Vec::new(),
        masks: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        reducers: FxHashMap::default(),
        cached_terms: 0,
    };
    let mut rows: Vec<Row> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut terms = g.terms_by(order);
        let inv = crate::Field::inv(&terms[0].1).expect("nonzero");
        for t in terms.iter_mut() {
            t.1 = crate::Field::mul(&t.1, &inv);
        }
        rows.push(terms.iter().map(|(mono, c)| (st.table.id(*mono), c.raw())).collect());
    }
    if rows.is_empty() {
        return Vec::new();
    }
    let nvars = st.table.monos[0].nvars();
    let mut new_rows = st.reduce_batch(rows, Mode::Inputs);
    new_rows.sort_by(|a, b| order.cmp(&st.table.monos[b[0].0 as usize], &st.table.monos[a[0].0 as usize]));
    for nr in new_rows {
        if st.table.monos[nr[0].0 as usize].is_one() {
            return vec![vec![(Monomial::one(nvars), m.elem(1))]];
        }
        let s = nr.iter().map(|(mi, _)| st.table.monos[*mi as usize].deg()).max().unwrap_or(0);
        st.insert(nr, s);
    }
    while !st.pairs.is_empty() {
        let d = st.pairs.iter().map(|p| p.sugar).min().expect("nonempty");
        let (sel, rest): (Vec<Pair>, Vec<Pair>) = std::mem::take(&mut st.pairs).into_iter().partition(|p| p.sugar == d);
        st.pairs = rest;
        let mut rows: Vec<Row> = Vec::with_capacity(2 * sel.len());
        let mut made: FxHashSet<(usize, Monomial)> = FxHashSet::default();
        for pr in &sel {
            for g in [pr.i, pr.j] {
                let q = st.lms[g].quotient_of(&pr.lcm).expect("lcm");
                if made.insert((g, q)) {
                    rows.push(st.multiply(g, &q));
                }
            }
        }
        // S-pair rows whose leading monomial appears once are pivots; the
        // batch reduction sorts that out
        rows.sort_by_key(|r| r.len());
        stats.pairs_reduced += sel.len();
        let new_rows = st.reduce_batch(rows, Mode::Pairs);
        stats.zero_reductions += sel.len().saturating_sub(new_rows.len());
        let mut new_rows = new_rows;
        new_rows.sort_by(|a, b| order.cmp(&st.table.monos[b[0].0 as usize], &st.table.monos[a[0].0 as usize]));
        for nr in new_rows {
            if st.table.monos[nr[0].0 as usize].is_one() {
                return vec![vec![(Monomial::one(nvars), m.elem(1))]];
            }
            st.insert(nr, d);
        }
    }
    // reduced basis
    // later insertions with larger leading monomials can leave
    // redundant elements behind
    let mut minimal: Vec<usize> = st
        .active
        .iter()
        .copied()
        .filter(|&g| !st.active.iter().any(|&h| h != g && st.lms[h].divides(&st.lms[g]) && (st.lms[h] != st.lms[g] || h < g)))
        .collect();
    minimal.sort_by(|&a, &b| order.cmp(&st.lms[a], &st.lms[b]));
    st.active = minimal.clone();
    let rows: Vec<Row> = minimal.iter().map(|&g| st.basis[g].clone()).collect();
    let reduced = st.reduce_batch(rows, Mode::Tails);
    reduced
        .into_iter()
        .map(|r| r.into_iter().map(|(mi, v)| (st.table.monos[mi as usize], m.from_raw(v))).collect())
        .collect()
}

//! Buchberger's algorithm with Gebauer-Moller pair pruning and the sugar
//! selection strategy.

use std::cmp::Ordering;

use crate::numeric::Field;
use crate::poly::{Monomial, MonomialOrder, MultiPoly};

/// Terms sorted descending under a fixed order, leading coefficient one
/// once in a basis.
pub(crate) type Terms<F> = Vec<(Monomial, F)>;

/// Bit signature used to reject non-divisors quickly.
#[inline]
pub(crate) fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        let b = (i % 16) * 4;
        if e >= 1 {
            mask |= 1 << b;
        }
        if e >= 2 {
            mask |= 1 << (b + 1);
        }
        if e >= 4 {
            mask |= 1 << (b + 2);
        }
        if e >= 8 {
            mask |= 1 << (b + 3);
        }
    }
    mask
}

pub(crate) struct Reducer<F: Field> {
    pub polys: Vec<Terms<F>>,
    pub masks: Vec<u64>,
}

impl<F: Field> Reducer<F> {
    pub fn new() -> Self {
        Reducer {
            polys: Vec::new(),
            masks: Vec::new(),
        }
    }

    pub fn push(&mut self, p: Terms<F>) -> usize {
        self.masks.push(divmask(&p[0].0));
        self.polys.push(p);
        self.polys.len() - 1
    }

    #[inline]
    fn find_divisor(&self, active: &[usize], m: &Monomial) -> Option<usize> {
        let mm = divmask(m);
        active
            .iter()
            .copied()
            .find(|&i| self.masks[i] & !mm == 0 && self.polys[i][0].0.divides(m))
    }

    /// Reduce `p` by the `active` elements (all monic). With `tail` false
    /// only the leading term is driven out of the leading ideal.
    pub fn reduce(&self, order: &MonomialOrder, active: &[usize], p: Terms<F>, tail: bool) -> Terms<F> {
        let mut rem: Terms<F> = Vec::new();
        let mut cur = p;
        let mut pos = 0;
        while pos < cur.len() {
            let (m, c) = &cur[pos];
            match self.find_divisor(active, m) {
                Some(gi) => {
                    let g = &self.polys[gi];
                    let q = g[0].0.quotient_of(m).unwrap();
                    let coef = c.neg();
                    cur = merge_scaled(order, &cur[pos + 1..], &coef, &q, &g[1..]);
                    pos = 0;
                }
                None => {
                    if !tail {
                        rem.extend(cur.drain(pos..));
                        break;
                    }
                    rem.push(cur[pos].clone());
                    pos += 1;
                }
            }
        }
        rem
    }
}

/// `a + c * q * b` where both inputs are sorted descending.
pub(crate) fn merge_scaled<F: Field>(
    order: &MonomialOrder,
    a: &[(Monomial, F)],
    c: &F,
    q: &Monomial,
    b: &[(Monomial, F)],
) -> Terms<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm = b.first().map(|(m, _)| m.mul(q));
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), &bm) {
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((ma, _)), Some(mb)) => order.cmp(ma, mb),
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm.unwrap(), b[j].1.mul(c)));
                j += 1;
                bm = b.get(j).map(|(m, _)| m.mul(q));
            }
            Ordering::Equal => {
                let mut v = a[i].1.clone();
                v.add_mul_assign(&b[j].1, c);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
                bm = b.get(j).map(|(m, _)| m.mul(q));
            }
        }
    }
    out
}

pub(crate) fn make_monic<F: Field>(p: &mut Terms<F>) {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            for (_, c) in p.iter_mut() {
                c.mul_assign(&inv);
            }
        }
    }
}

pub(crate) fn sorted_terms<F: Field>(p: &MultiPoly<F>, order: &MonomialOrder) -> Terms<F> {
    match order {
        MonomialOrder::Lex => p.terms().to_vec(),
        _ => p.terms_by(order),
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Statistics of one run, for logging.
#[derive(Clone, Debug, Default)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
}

/// Compute the reduced Groebner basis of `gens` under `order`.
/// Returns monic generators sorted by increasing leading monomial.
pub(crate) fn buchberger_terms<F: Field>(
    order: &MonomialOrder,
    gens: Vec<Terms<F>>,
    stats: &mut BuchbergerStats,
) -> Vec<Terms<F>> {
    let mut red = Reducer::<F>::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // inputs are inserted in increasing order of leading monomial
    let mut inputs: Vec<Terms<F>> = gens.into_iter().filter(|p| !p.is_empty()).collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut queue: Vec<(Terms<F>, u32)> = inputs
        .into_iter()
        .map(|p| {
            let s = p.iter().map(|(m, _)| m.deg()).max().unwrap();
            (p, s)
        })
        .collect();
    queue.reverse();

    loop {
        let (h, hs) = if let Some((p, s)) = queue.pop() {
            let mut r = red.reduce(order, &active, p, false);
            if r.is_empty() {
                continue;
            }
            make_monic(&mut r);
            (r, s)
        } else {
            // select a pair: minimal sugar, then minimal lcm
            if pairs.is_empty() {
                break;
            }
            let mut best = 0;
            for (idx, p) in pairs.iter().enumerate().skip(1) {
                let b = &pairs[best];
                let better = p.sugar < b.sugar
                    || (p.sugar == b.sugar && order.cmp(&p.lcm, &b.lcm) == Ordering::Less);
                if better {
                    best = idx;
                }
            }
            let pr = pairs.swap_remove(best);
            let (f, g) = (&red.polys[pr.i], &red.polys[pr.j]);
            let qf = f[0].0.quotient_of(&pr.lcm).unwrap();
            let qg = g[0].0.quotient_of(&pr.lcm).unwrap();
            // S = qf * f - qg * g; leading terms cancel
            let one = F::one(&f[0].1.ctx());
            let fpart: Terms<F> = f[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
            let s = merge_scaled(order, &fpart, &one.neg(), &qg, &g[1..]);
            stats.pairs_reduced += 1;
            let mut r = red.reduce(order, &active, s, false);
            if r.is_empty() {
                stats.zero_reductions += 1;
                continue;
            }
            make_monic(&mut r);
            (r, pr.sugar)
        };

        let hm = h[0].0;
        let hi = red.push(h);
        sugar.push(hs);
        if hm.is_one() {
            // unit ideal
            let one = red.polys[hi].clone();
            return vec![one];
        }

        // Gebauer-Moller update
        let mut cand: Vec<Pair> = active
            .iter()
            .map(|&g| {
                let gm = red.polys[g][0].0;
                let lcm = hm.lcm(&gm);
                let s = (sugar[g] + lcm.deg() - gm.deg()).max(hs + lcm.deg() - hm.deg());
                Pair { i: g, j: hi, lcm, sugar: s }
            })
            .collect();
        // chain criterion among new pairs: drop (g, h) if lcm(g2, h) properly divides
        // lcm(g, h), or equals it for an earlier coprime-free representative
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            let ga = red.polys[cand[a].i][0].0;
            if ga.coprime(&hm) {
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
        // product criterion
        for (a, c) in cand.iter().enumerate() {
            let ga = red.polys[c.i][0].0;
            if ga.coprime(&hm) {
                keep[a] = false;
            }
        }
        let mut idx = 0;
        cand.retain(|_| {
            let k = keep[idx];
            idx += 1;
            k
        });
        // old pairs made redundant by h
        pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && hm.lcm(&red.polys[p.i][0].0) != p.lcm
                && hm.lcm(&red.polys[p.j][0].0) != p.lcm)
        });
        pairs.extend(cand);
        active.retain(|&g| !hm.divides(&red.polys[g][0].0));
        active.push(hi);
    }

    // interreduce
    let mut basis: Vec<usize> = active.clone();
    basis.sort_by(|&a, &b| order.cmp(&red.polys[a][0].0, &red.polys[b][0].0));
    let mut out = Vec::with_capacity(basis.len());
    for (pos, &gi) in basis.iter().enumerate() {
        let others: Vec<usize> = basis.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &g)| g).collect();
        let g = red.polys[gi].clone();
        let lead = g[0].clone();
        let tail = red.reduce(order, &others, g[1..].to_vec(), true);
        let mut full = vec![lead];
        full.extend(tail);
        out.push(full);
    }
    out
}

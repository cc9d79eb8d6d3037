//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use super::PolyError;

/// Largest number of variables a single ambient ring may have.
pub const MAX_VARS: usize = 16;

/// An exponent vector over a fixed ambient variable list.
///
/// The derived-by-hand `Ord` is lexicographic with variable 0 most
/// significant; it is the storage order of [`super::MultiPoly`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    n: u8,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Monomial {
            deg: 0,
            n: nvars as u8,
            exps: [0; MAX_VARS],
        }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.set(i, e);
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.set(i, e);
        }
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps[..self.n as usize]
    }

    pub fn set(&mut self, i: usize, e: u32) {
        assert!(i < self.n as usize, "variable index out of range");
        let e = u16::try_from(e).expect("exponent overflow");
        self.deg = self.deg - self.exps[i] as u32 + e as u32;
        self.exps[i] = e;
    }

    #[inline]
    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for i in 0..self.n as usize {
            out.exps[i] += other.exps[i];
        }
        out.deg += other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..self.n as usize).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for i in 0..self.n as usize {
            out.exps[i] -= self.exps[i];
        }
        out.deg -= self.deg;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.n as usize {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.deg = deg;
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.n as usize {
            out.exps[i] = self.exps[i].min(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.deg = deg;
        out
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        (0..self.n as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    fn block_deg(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.exps[..self.n as usize].cmp(&other.exps[..other.n as usize]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

/// A monomial order on a fixed variable list.
///
/// `Block` splits the variables into consecutive blocks (sizes given in
/// order); each block is compared by grevlex and earlier blocks dominate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    Block(Vec<usize>),
}

fn grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let (da, db) = (a.block_deg(lo..hi), b.block_deg(lo..hi));
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            // rightmost differing entry smaller => larger monomial
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Two-block order: the first `first` variables dominate.
    pub fn block2(first: usize, nvars: usize) -> Self {
        MonomialOrder::Block(vec![first, nvars - first])
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps[..a.n as usize].cmp(&b.exps[..b.n as usize]),
            MonomialOrder::Grevlex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                for i in (0..a.n as usize).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block(sizes) => {
                let mut lo = 0;
                for &s in sizes {
                    let hi = (lo + s).min(a.n as usize);
                    let c = grevlex_range(a, b, lo, hi);
                    if c != Ordering::Equal {
                        return c;
                    }
                    lo = hi;
                }
                // trailing variables not covered by any block
                grevlex_range(a, b, lo, a.n as usize)
            }
        }
    }

    /// Whether every monomial involving one of the first `k` variables is
    /// larger than every monomial free of them.
    pub fn eliminates_prefix(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        match self {
            MonomialOrder::Lex => true,
            MonomialOrder::Grevlex => false,
            MonomialOrder::Block(sizes) => {
                let mut acc = 0;
                for &s in sizes {
                    acc += s;
                    if acc == k {
                        return true;
                    }
                    if acc > k {
                        return false;
                    }
                }
                false
            }
        }
    }
}

/// Compare two monomials under `order`, checking they share a universe.
pub fn mono_compare(
    order: &MonomialOrder,
    m1: &Monomial,
    m2: &Monomial,
) -> Result<Ordering, PolyError> {
    if m1.nvars() != m2.nvars() {
        return Err(PolyError::UniverseMismatch(m1.nvars(), m2.nvars()));
    }
    Ok(order.cmp(m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn lex_textbook_examples() {
        let lex = MonomialOrder::Lex;
        assert_eq!(mono_compare(&lex, &m(&[4, 2]), &m(&[3, 10])).unwrap(), Ordering::Greater);
        assert_eq!(lex.cmp(&m(&[2, 1]), &m(&[1, 0])), Ordering::Greater);
        assert_eq!(lex.cmp(&m(&[2, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_textbook_examples() {
        let g = MonomialOrder::Grevlex;
        assert_eq!(mono_compare(&g, &m(&[1, 4, 2]), &m(&[3, 1, 3])).unwrap(), Ordering::Greater);
        assert_eq!(g.cmp(&m(&[5, 7, 1]), &m(&[4, 2, 3])), Ordering::Greater);
    }

    #[test]
    fn block_order_examples() {
        // variables m, x, u, z1 | z0, z2 ; monomials written in that order
        let o = MonomialOrder::block2(4, 6);
        assert_eq!(o.cmp(&m(&[1, 3, 1, 2, 0, 0]), &m(&[0, 0, 0, 0, 20, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 3, 1, 2, 0, 1]), &m(&[1, 3, 1, 2, 1, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 0, 0, 4, 0]), &m(&[0, 0, 0, 0, 2, 1])), Ordering::Greater);
    }

    #[test]
    fn equal_and_mismatch() {
        for o in [MonomialOrder::Lex, MonomialOrder::Grevlex, MonomialOrder::block2(1, 3)] {
            assert_eq!(o.cmp(&m(&[1, 2, 3]), &m(&[1, 2, 3])), Ordering::Equal);
        }
        assert!(mono_compare(&MonomialOrder::Lex, &m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn elimination_property() {
        assert!(MonomialOrder::Lex.eliminates_prefix(2));
        assert!(!MonomialOrder::Grevlex.eliminates_prefix(1));
        let o = MonomialOrder::Block(vec![1, 1, 3]);
        assert!(o.eliminates_prefix(1) && o.eliminates_prefix(2) && !o.eliminates_prefix(3));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 4).prop_map(|v| Monomial::from_exps(&v))
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::Grevlex,
            MonomialOrder::block2(2, 4),
            MonomialOrder::Block(vec![1, 1, 2]),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_total_multiplicative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            for o in orders() {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                if o.cmp(&a, &b) == Ordering::Greater && o.cmp(&b, &c) == Ordering::Greater {
                    prop_assert_eq!(o.cmp(&a, &c), Ordering::Greater);
                }
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
                prop_assert_ne!(o.cmp(&a.mul(&c), &a), Ordering::Less);
                if o.cmp(&a, &b) == Ordering::Equal {
                    prop_assert_eq!(a, b);
                }
            }
            if a.deg() > b.deg() {
                prop_assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Greater);
            }
        }
    }
}

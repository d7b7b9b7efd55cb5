//! Hewett's metacyclic groups
//!
//! `G_alpha = <a, b | a^{p^alpha (p^m - 1)} = 1, b a b^-1 = a^t, b^{p-1} = a^{p^alpha}>`
//!
//! in the normal form `a^i b^j` with `0 <= j < p - 1`, together with two
//! generic tools used to compare them against concrete unit groups: closure
//! of a generating set under an arbitrary multiplication, and a
//! backtracking isomorphism test on multiplication tables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{self, gcd_u64, mul_mod, pow_mod};

/// Default cap on the size of a generated subgroup.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;
/// Largest group order [`isomorphic`] accepts.
pub const ISOMORPHISM_ORDER_CAP: usize = 5_000;
/// Search nodes [`isomorphic`] may visit before giving up.
pub const ISOMORPHISM_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    InvalidParameters(&'static str),
    /// `(Z/p^alpha)^x` has no element of order `p - 1`.
    NoValidTwist,
    Overflow,
    PresentationMismatch,
    ClosureCapExceeded(usize),
    OrderCapExceeded { order: usize, cap: usize },
    NodeCapExceeded(u64),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::InvalidParameters(why) => write!(f, "invalid group parameters: {why}"),
            GroupError::NoValidTwist => write!(f, "no twist exponent of order p-1 exists"),
            GroupError::Overflow => write!(f, "group order overflows 64 bits"),
            GroupError::PresentationMismatch => write!(f, "elements belong to different presentations"),
            GroupError::ClosureCapExceeded(cap) => write!(f, "generated subgroup exceeds {cap} elements"),
            GroupError::OrderCapExceeded { order, cap } => {
                write!(f, "group order {order} exceeds the cap {cap}")
            }
            GroupError::NodeCapExceeded(n) => write!(f, "isomorphism search exceeded {n} nodes"),
        }
    }
}

impl core::error::Error for GroupError {}

/// Smallest positive residue of multiplicative order `p - 1` modulo `p^alpha`.
pub fn minimal_twist_mod_prime_power(p: u64, alpha: u32) -> Result<u64, GroupError> {
    let pa = p.checked_pow(alpha).ok_or(GroupError::Overflow)?;
    (1..pa)
        .filter(|&s| s % p != 0)
        .find(|&s| arith::mult_order_u64(s, pa).ok() == Some(p - 1))
        .ok_or(GroupError::NoValidTwist)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MetacyclicPresentation {
    p: u64,
    m: u32,
    alpha: u32,
    t: u64,
    p_alpha: u64,
    order_a: u64,
}

/// `a^i b^j` in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub i: u64,
    pub j: u64,
}

impl MetacyclicPresentation {
    /// `G_alpha` with an explicit twist `t`, which must have order `p - 1`
    /// modulo `p^alpha` and be `1` modulo `p^m - 1`.
    pub fn with_twist(p: u64, m: u32, alpha: u32, t: u64) -> Result<Self, GroupError> {
        if p < 3 || !arith::is_prime_u64(p) {
            return Err(GroupError::InvalidParameters("p must be an odd prime"));
        }
        if m == 0 || (m as u64) % p == 0 {
            return Err(GroupError::InvalidParameters("m must be positive and prime to p"));
        }
        if alpha == 0 {
            return Err(GroupError::InvalidParameters("alpha must be positive"));
        }
        let p_alpha = p.checked_pow(alpha).ok_or(GroupError::Overflow)?;
        let unit_order = p.checked_pow(m).ok_or(GroupError::Overflow)? - 1;
        let order_a = p_alpha.checked_mul(unit_order).ok_or(GroupError::Overflow)?;
        order_a.checked_mul(p - 1).ok_or(GroupError::Overflow)?;
        let t = t % order_a;
        if t % p == 0 || arith::mult_order_u64(t % p_alpha, p_alpha).ok() != Some(p - 1) {
            return Err(GroupError::InvalidParameters("t must have order p-1 modulo p^alpha"));
        }
        if t % unit_order != 1 % unit_order {
            return Err(GroupError::InvalidParameters("t must be 1 modulo p^m - 1"));
        }
        Ok(MetacyclicPresentation { p, m, alpha, t, p_alpha, order_a })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// `p^alpha (p^m - 1)`, the order of `a`.
    pub fn order_a(&self) -> u64 {
        self.order_a
    }

    pub fn p_alpha(&self) -> u64 {
        self.p_alpha
    }

    /// `p^alpha (p^m - 1)(p - 1)`.
    pub fn order(&self) -> u64 {
        self.order_a * (self.p - 1)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { i: 0, j: 0 }
    }

    pub fn a(&self) -> GroupElement {
        GroupElement { i: 1 % self.order_a, j: 0 }
    }

    pub fn b(&self) -> GroupElement {
        if self.p == 2 {
            // unreachable for odd p; kept total
            return GroupElement { i: self.p_alpha % self.order_a, j: 0 };
        }
        GroupElement { i: 0, j: 1 % (self.p - 1) }
    }

    pub fn element(&self, i: u64, j: u64) -> GroupElement {
        // b^j with j >= p-1 folds into a^{p^alpha}
        let q = self.p - 1;
        let extra = mul_mod(self.p_alpha, j / q, self.order_a);
        GroupElement { i: (i % self.order_a + extra) % self.order_a, j: j % q }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.i < self.order_a && g.j < self.p - 1
    }

    /// All elements in the order `(i, j)` lexicographic by `j` then `i`.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.p - 1).flat_map(move |j| (0..self.order_a).map(move |i| GroupElement { i, j }))
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        if !self.contains(x) || !self.contains(y) {
            return Err(GroupError::PresentationMismatch);
        }
        Ok(self.mul(x, y))
    }

    /// `(a^i1 b^j1)(a^i2 b^j2) = a^{i1 + i2 t^j1} b^{j1 + j2}`, folding
    /// `b^{p-1} = a^{p^alpha}`.
    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let n = self.order_a;
        let twisted = mul_mod(y.i, pow_mod(self.t, x.j, n), n);
        let mut i = (x.i + twisted) % n;
        let mut j = x.j + y.j;
        let q = self.p - 1;
        if j >= q {
            j -= q;
            i = (i + self.p_alpha) % n;
        }
        GroupElement { i, j }
    }

    pub fn pow(&self, x: &GroupElement, mut e: u64) -> GroupElement {
        let mut acc = self.identity();
        let mut base = *x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        let k = self.element_order(x);
        self.pow(x, k - 1)
    }

    pub fn element_order(&self, x: &GroupElement) -> u64 {
        let mut y = *x;
        let mut k = 1;
        while y != self.identity() {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    /// Cayley table with elements indexed as in [`Self::elements`].
    pub fn multiplication_table(&self) -> Result<MultiplicationTable, GroupError> {
        let order = self.order() as usize;
        if order > ISOMORPHISM_ORDER_CAP {
            return Err(GroupError::OrderCapExceeded { order, cap: ISOMORPHISM_ORDER_CAP });
        }
        let elems: Vec<GroupElement> = self.elements().collect();
        let index = |g: &GroupElement| (g.j * self.order_a + g.i) as usize;
        Ok(MultiplicationTable::from_fn(order, |x, y| index(&self.mul(&elems[x], &elems[y]))))
    }
}

/// `G_alpha` with the canonical twist: `t` is the CRT lift of the smallest
/// residue of order `p - 1` modulo `p^alpha` and of `1` modulo `p^m - 1`.
pub fn make_hewett_group(p: u64, m: u32, alpha: u32) -> Result<MetacyclicPresentation, GroupError> {
    if p < 3 || !arith::is_prime_u64(p) {
        return Err(GroupError::InvalidParameters("p must be an odd prime"));
    }
    if alpha == 0 {
        return Err(GroupError::InvalidParameters("alpha must be positive"));
    }
    let s = minimal_twist_mod_prime_power(p, alpha)?;
    hewett_group_with_local_twist(p, m, alpha, s)
}

/// `G_alpha` whose twist reduces to `s` modulo `p^alpha` and to `1` modulo
/// `p^m - 1`.
pub fn hewett_group_with_local_twist(
    p: u64,
    m: u32,
    alpha: u32,
    s: u64,
) -> Result<MetacyclicPresentation, GroupError> {
    let p_alpha = p.checked_pow(alpha).ok_or(GroupError::Overflow)?;
    let unit_order = p.checked_pow(m).ok_or(GroupError::Overflow)? - 1;
    let t = arith::crt_solve_u64(&[(s % p_alpha, p_alpha), (1 % unit_order, unit_order)])
        .map_err(|_| GroupError::InvalidParameters("p^alpha and p^m - 1 must be coprime"))?;
    MetacyclicPresentation::with_twist(p, m, alpha, t)
}

// ---------------------------------------------------------------------------
// Multiplication tables

/// A finite group given by its Cayley table over indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    n: usize,
    data: Vec<u32>,
    identity: usize,
}

impl MultiplicationTable {
    /// Builds the table from a product on indices; the identity is located
    /// by search.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                data.push(f(x, y) as u32);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| data[e * n + x] as usize == x && data[x * n + e] as usize == x))
            .unwrap_or(0);
        MultiplicationTable { n, data, identity }
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |x, y| rows[x][y])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.data[x * self.n + y] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.mul(x, y)).collect()).collect()
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
            if k as usize > self.n {
                break;
            }
        }
        k
    }

    pub fn element_orders(&self) -> Vec<u64> {
        (0..self.n).map(|x| self.element_order(x)).collect()
    }

    /// Multiset of element orders, as `order -> count`.
    pub fn order_spectrum(&self) -> BTreeMap<u64, usize> {
        let mut spec = BTreeMap::new();
        for k in self.element_orders() {
            *spec.entry(k).or_insert(0) += 1;
        }
        spec
    }

    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                let xy = self.mul(x, y);
                (0..self.n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// Indices reachable from the identity by right multiplication by `gens`.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        seen.insert(self.identity);
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    /// A small generating set, chosen greedily from elements of large order.
    pub fn generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut by_order: Vec<usize> = (0..self.n).collect();
        by_order.sort_by(|&x, &y| orders[y].cmp(&orders[x]).then(x.cmp(&y)));
        let mut gens = Vec::new();
        let mut span = BTreeSet::new();
        span.insert(self.identity);
        for x in by_order {
            if span.len() == self.n {
                break;
            }
            if !span.contains(&x) {
                gens.push(x);
                span = self.generated(&gens);
            }
        }
        gens
    }
}

// ---------------------------------------------------------------------------
// Closure in an arbitrary ambient group

/// The subgroup generated by a finite set inside some ambient group, with
/// enough bookkeeping to rebuild its multiplication table.
#[derive(Debug, Clone)]
pub struct Closure<T> {
    elements: Vec<T>,
    index: BTreeMap<T, usize>,
    /// `right[x][g]` is the index of `elements[x] * gens[g]`.
    right: Vec<Vec<usize>>,
    /// `elements[x] = elements[parent] * gens[g]` for the BFS parent.
    parent: Vec<Option<(usize, usize)>>,
}

impl<T: Ord + Clone> Closure<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.index.contains_key(x)
    }

    /// Cayley table, index `0` being the identity. Only `|G| * |gens|` ambient
    /// products were evaluated; the rest follows from associativity along the
    /// BFS tree.
    pub fn multiplication_table(&self) -> Result<MultiplicationTable, GroupError> {
        let n = self.order();
        if n > ISOMORPHISM_ORDER_CAP {
            return Err(GroupError::OrderCapExceeded { order: n, cap: ISOMORPHISM_ORDER_CAP });
        }
        let mut data = vec![0u32; n * n];
        for x in 0..n {
            data[x * n] = x as u32;
            for y in 1..n {
                let (py, g) = self.parent[y].expect("non-identity elements have parents");
                let xpy = data[x * n + py] as usize;
                data[x * n + y] = self.right[xpy][g] as u32;
            }
        }
        Ok(MultiplicationTable { n, data, identity: 0 })
    }
}

/// Closure of `gens` under `mul`, starting from `identity`.
pub fn generated_subgroup<T: Ord + Clone>(
    identity: T,
    gens: &[T],
    mut mul: impl FnMut(&T, &T) -> T,
    cap: usize,
) -> Result<Closure<T>, GroupError> {
    let mut elements = vec![identity.clone()];
    let mut index = BTreeMap::new();
    index.insert(identity, 0);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut parent = vec![None];
    let mut cursor = 0;
    while cursor < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let y = mul(&elements[cursor], g);
            let idx = match index.get(&y) {
                Some(&k) => k,
                None => {
                    if elements.len() >= cap {
                        return Err(GroupError::ClosureCapExceeded(cap));
                    }
                    let k = elements.len();
                    index.insert(y.clone(), k);
                    elements.push(y);
                    parent.push(Some((cursor, gi)));
                    k
                }
            };
            row.push(idx);
        }
        right.push(row);
        cursor += 1;
    }
    Ok(Closure { elements, index, right, parent })
}

// ---------------------------------------------------------------------------
// Isomorphism search

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    OrderMismatch { left: usize, right: usize },
    /// Different numbers of elements of the given order.
    OrderSpectrum { element_order: u64, left: usize, right: usize },
    /// Every order-compatible assignment of generators failed.
    SearchExhausted { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `map[x]` is the image in the second group of element `x` of the first.
    Isomorphic { map: Vec<usize> },
    NotIsomorphic(Refutation),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic { .. })
    }
}

/// Extends `images` of `gens` to the subgroup they generate. Returns `false`
/// on an inconsistent or non-injective extension.
fn extend_hom(
    g: &MultiplicationTable,
    h: &MultiplicationTable,
    gens: &[usize],
    images: &[usize],
    map: &mut [usize],
) -> bool {
    const UNSET: usize = usize::MAX;
    map.iter_mut().for_each(|v| *v = UNSET);
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (k, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            let fy = h.mul(map[x], images[k]);
            if map[y] == UNSET {
                if used[fy] {
                    return false;
                }
                used[fy] = true;
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return false;
            }
        }
    }
    true
}

/// Decides whether two Cayley tables define isomorphic groups.
pub fn isomorphic(g: &MultiplicationTable, h: &MultiplicationTable) -> Result<IsoOutcome, GroupError> {
    for t in [g, h] {
        if t.order() > ISOMORPHISM_ORDER_CAP {
            return Err(GroupError::OrderCapExceeded { order: t.order(), cap: ISOMORPHISM_ORDER_CAP });
        }
    }
    if g.order() != h.order() {
        return Ok(IsoOutcome::NotIsomorphic(Refutation::OrderMismatch {
            left: g.order(),
            right: h.order(),
        }));
    }
    let (sg, sh) = (g.order_spectrum(), h.order_spectrum());
    if sg != sh {
        let keys: BTreeSet<u64> = sg.keys().chain(sh.keys()).copied().collect();
        for k in keys {
            let (l, r) = (sg.get(&k).copied().unwrap_or(0), sh.get(&k).copied().unwrap_or(0));
            if l != r {
                return Ok(IsoOutcome::NotIsomorphic(Refutation::OrderSpectrum {
                    element_order: k,
                    left: l,
                    right: r,
                }));
            }
        }
    }
    let gens = g.generating_set();
    let h_orders = h.element_orders();
    let g_orders = g.element_orders();
    // Candidates of matching order; the same index goes first so identical
    // tables yield the identity map.
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let mut c: Vec<usize> =
                (0..h.order()).filter(|&y| h_orders[y] == g_orders[x]).collect();
            if let Some(pos) = c.iter().position(|&y| y == x) {
                c.remove(pos);
                c.insert(0, x);
            }
            c
        })
        .collect();

    let mut map = vec![0usize; g.order()];
    let mut images: Vec<usize> = Vec::with_capacity(gens.len());
    let mut cursor = vec![0usize; gens.len()];
    let mut nodes: u64 = 0;
    let mut depth = 0usize;
    if gens.is_empty() {
        // trivial groups
        map[g.identity()] = h.identity();
        return Ok(IsoOutcome::Isomorphic { map });
    }
    loop {
        if cursor[depth] >= candidates[depth].len() {
            if depth == 0 {
                return Ok(IsoOutcome::NotIsomorphic(Refutation::SearchExhausted { nodes }));
            }
            cursor[depth] = 0;
            depth -= 1;
            images.pop();
            cursor[depth] += 1;
            continue;
        }
        nodes += 1;
        if nodes > ISOMORPHISM_NODE_CAP {
            return Err(GroupError::NodeCapExceeded(ISOMORPHISM_NODE_CAP));
        }
        images.push(candidates[depth][cursor[depth]]);
        if extend_hom(g, h, &gens[..=depth], &images, &mut map) {
            if depth + 1 == gens.len() {
                if map.iter().all(|&v| v != usize::MAX) {
                    return Ok(IsoOutcome::Isomorphic { map });
                }
            } else {
                depth += 1;
                continue;
            }
        }
        images.pop();
        cursor[depth] += 1;
    }
}

/// `gcd`-based sanity check that the twist acts as an automorphism of `<a>`.
pub fn twist_is_automorphism(g: &MetacyclicPresentation) -> bool {
    gcd_u64(g.t(), g.order_a()) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> MultiplicationTable {
        MultiplicationTable::from_fn(n, |x, y| (x + y) % n)
    }

    fn klein() -> MultiplicationTable {
        MultiplicationTable::from_fn(4, |x, y| x ^ y)
    }

    #[test]
    fn orders_of_small_hewett_groups() {
        assert_eq!(make_hewett_group(3, 1, 1).unwrap().order(), 12);
        assert_eq!(make_hewett_group(5, 1, 1).unwrap().order(), 80);
        assert_eq!(make_hewett_group(5, 1, 2).unwrap().order(), 400);
        for (p, m, a) in [(3, 1, 1), (5, 1, 1), (5, 1, 2)] {
            let g = make_hewett_group(p, m, a).unwrap();
            assert_eq!(g.elements().count() as u64, g.order());
        }
    }

    #[test]
    fn canonical_twist() {
        let g = make_hewett_group(5, 1, 1).unwrap();
        // 2 has order 4 mod 5; CRT with 1 mod 4 gives 17.
        assert_eq!(g.t(), 17);
        let g = make_hewett_group(7, 2, 1).unwrap();
        assert_eq!(g.t() % 7, 3);
        assert_eq!(g.t() % 48, 1);
        assert!(twist_is_automorphism(&g));
    }

    #[test]
    fn parameters_are_validated() {
        assert!(make_hewett_group(9, 1, 1).is_err());
        assert!(make_hewett_group(2, 1, 1).is_err());
        assert!(make_hewett_group(3, 3, 1).is_err());
        assert!(make_hewett_group(5, 1, 0).is_err());
        assert!(MetacyclicPresentation::with_twist(5, 1, 1, 2).is_err());
    }

    #[test]
    fn defining_relations() {
        let g = make_hewett_group(3, 1, 1).unwrap();
        let (a, b) = (g.a(), g.b());
        let e = g.identity();
        assert_eq!(g.mul(&e, &a), a);
        assert_eq!(g.mul(&b, &a), g.mul(&g.pow(&a, g.t()), &b));
        assert_eq!(g.pow(&b, g.p() - 1), g.pow(&a, g.p_alpha()));
        assert_eq!(g.element_order(&e), 1);
        assert_eq!(g.element_order(&a), 6);
        let a_pm = g.pow(&a, 2);
        assert_eq!(g.element_order(&a_pm), 3);
    }

    #[test]
    fn b_order_matches_folding() {
        for (p, m, al) in [(3, 1, 1), (5, 1, 1), (7, 1, 1), (3, 1, 2), (5, 1, 2), (7, 1, 2)] {
            let g = make_hewett_group(p, m, al).unwrap();
            let a_ord = g.element_order(&g.a());
            assert_eq!(a_ord, g.order_a());
            // b^{p-1} = a^{p^alpha} has order p^m - 1
            let unit_order = p.pow(m) - 1;
            assert_eq!(g.element_order(&g.b()), (p - 1) * unit_order);
        }
    }

    #[test]
    fn multiply_is_associative_exhaustively() {
        for (p, m, al) in [(3, 1, 1), (5, 1, 1), (3, 1, 2)] {
            let g = make_hewett_group(p, m, al).unwrap();
            assert!(g.multiplication_table().unwrap().is_associative());
        }
    }

    #[test]
    fn closure_examples() {
        let g = make_hewett_group(3, 1, 1).unwrap();
        let mul = |x: &GroupElement, y: &GroupElement| g.mul(x, y);
        let c = generated_subgroup(g.identity(), &[g.identity()], mul, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(c.order(), 1);
        let c = generated_subgroup(g.identity(), &[g.a()], mul, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(c.order(), 6);
        let c = generated_subgroup(g.identity(), &[g.a(), g.b()], mul, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(c.order(), 12);
        assert_eq!(
            generated_subgroup(g.identity(), &[g.a(), g.b()], mul, 5).unwrap_err(),
            GroupError::ClosureCapExceeded(5)
        );
    }

    #[test]
    fn closure_table_agrees_with_direct_products() {
        let g = make_hewett_group(5, 1, 1).unwrap();
        let c = generated_subgroup(g.identity(), &[g.a(), g.b()], |x, y| g.mul(x, y), 1000).unwrap();
        let t = c.multiplication_table().unwrap();
        for x in 0..c.order() {
            for y in 0..c.order() {
                let direct = g.mul(&c.elements()[x], &c.elements()[y]);
                assert_eq!(c.elements()[t.mul(x, y)], direct);
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let g = make_hewett_group(3, 1, 1).unwrap().multiplication_table().unwrap();
        match isomorphic(&g, &g).unwrap() {
            IsoOutcome::Isomorphic { map } => assert_eq!(map, (0..12).collect::<Vec<_>>()),
            other => panic!("{other:?}"),
        }
        let out = isomorphic(&cyclic(4), &klein()).unwrap();
        assert!(matches!(out, IsoOutcome::NotIsomorphic(Refutation::OrderSpectrum { .. })));
        let out = isomorphic(&cyclic(4), &cyclic(5)).unwrap();
        assert!(matches!(out, IsoOutcome::NotIsomorphic(Refutation::OrderMismatch { .. })));
    }

    #[test]
    fn twist_choice_does_not_change_isomorphism_type() {
        // every residue of order p-1 mod p^alpha gives the same group
        for (p, al) in [(5u64, 1u32), (7, 1), (5, 2)] {
            let pa = p.pow(al);
            let base = make_hewett_group(p, 1, al).unwrap().multiplication_table().unwrap();
            for s in 1..pa {
                if s % p == 0 || arith::mult_order_u64(s, pa).unwrap() != p - 1 {
                    continue;
                }
                let other = hewett_group_with_local_twist(p, 1, al, s).unwrap();
                let t = other.multiplication_table().unwrap();
                assert!(isomorphic(&base, &t).unwrap().is_isomorphic(), "p={p} s={s}");
            }
        }
    }

    #[test]
    fn isomorphism_detects_nonabelian_vs_abelian_with_same_spectrum() {
        // Z/3 x Z/3 x Z/3 and the Heisenberg group mod 3 share an order
        // spectrum but are not isomorphic.
        let abel = MultiplicationTable::from_fn(27, |x, y| {
            let (a1, b1, c1) = (x % 3, (x / 3) % 3, x / 9);
            let (a2, b2, c2) = (y % 3, (y / 3) % 3, y / 9);
            (a1 + a2) % 3 + 3 * ((b1 + b2) % 3) + 9 * ((c1 + c2) % 3)
        });
        let heis = MultiplicationTable::from_fn(27, |x, y| {
            let (a1, b1, c1) = (x % 3, (x / 3) % 3, x / 9);
            let (a2, b2, c2) = (y % 3, (y / 3) % 3, y / 9);
            (a1 + a2) % 3 + 3 * ((b1 + b2) % 3) + 9 * ((c1 + c2 + a1 * b2) % 3)
        });
        assert_eq!(abel.order_spectrum(), heis.order_spectrum());
        let out = isomorphic(&abel, &heis).unwrap();
        assert!(matches!(out, IsoOutcome::NotIsomorphic(Refutation::SearchExhausted { .. })));
    }
}

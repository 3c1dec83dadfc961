//! Finite posets stored as a Hasse diagram with a cached strict order, and
//! the constructions the generating-function engine works with: induced
//! subposets, partially linear extensions, and partially ordinal sums.

mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use text::{parse_poset_file, render_poset_file, ParseError, PosetFile};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for ElementId {
    fn from(v: u32) -> Self {
        ElementId(v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover relation contains a directed cycle")]
    CycleDetected,
    #[error("unknown element {0}")]
    UnknownElement(ElementId),
    #[error("elements {0} and {1} are comparable, not an antichain")]
    NotAntichain(ElementId, ElementId),
    #[error("the glued subset is empty")]
    EmptySubset,
    #[error("element {0} of the glued subset is not in the antichain")]
    SubsetNotContained(ElementId),
    #[error("relation pair ({0}, {1}) is outside the operands")]
    RelationOutOfRange(ElementId, ElementId),
    #[error("power needs at least one copy")]
    ZeroCopies,
}

/// A finite poset. Immutable once built.
///
/// Elements are kept sorted; everything else is indexed by position in that
/// order. `up[i]` is the strict upper set of element `i`, and the cover
/// lists form the transitive reduction of that order.
#[derive(Clone)]
pub struct Poset {
    elems: Vec<ElementId>,
    up: Vec<FixedBitSet>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems && self.upper == other.upper
    }
}

impl Eq for Poset {}

impl std::hash::Hash for Poset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
        self.upper.hash(state);
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field(
                "elements",
                &self.elems.iter().map(|e| e.0).collect::<Vec<_>>(),
            )
            .field(
                "covers",
                &self
                    .covers()
                    .iter()
                    .map(|(a, b)| (a.0, b.0))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A non-empty set of pairwise incomparable elements of one poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AntiChain(Vec<ElementId>);

impl AntiChain {
    pub fn new(
        p: &Poset,
        members: impl IntoIterator<Item = ElementId>,
    ) -> Result<AntiChain, PosetError> {
        let mut ms: Vec<ElementId> = members.into_iter().collect();
        ms.sort_unstable();
        ms.dedup();
        if ms.is_empty() {
            return Err(PosetError::EmptySubset);
        }
        for &m in &ms {
            p.index_of(m).ok_or(PosetError::UnknownElement(m))?;
        }
        for (i, &a) in ms.iter().enumerate() {
            for &b in &ms[i + 1..] {
                if p.comparable(a, b) {
                    return Err(PosetError::NotAntichain(a, b));
                }
            }
        }
        Ok(AntiChain(ms))
    }

    pub fn members(&self) -> &[ElementId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Pairs `(x, y)` with `x` from a left operand and `y` from a right operand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Relation(BTreeSet<(ElementId, ElementId)>);

impl Relation {
    pub fn new(pairs: impl IntoIterator<Item = (ElementId, ElementId)>) -> Relation {
        Relation(pairs.into_iter().collect())
    }

    pub fn from_u32(pairs: &[(u32, u32)]) -> Relation {
        Relation::new(pairs.iter().map(|&(a, b)| (ElementId(a), ElementId(b))))
    }

    pub fn empty() -> Relation {
        Relation::default()
    }

    /// `P × Q`.
    pub fn full(p: &Poset, q: &Poset) -> Relation {
        Relation::new(
            p.elements()
                .iter()
                .flat_map(|&a| q.elements().iter().map(move |&b| (a, b))),
        )
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Result of a partially linear extension: the new poset and the fresh
/// element standing for the glued subset.
#[derive(Clone, Debug)]
pub struct Ple {
    pub poset: Poset,
    pub glued: ElementId,
    pub members: Vec<ElementId>,
}

/// Result of a partially ordinal sum, with the relabeling of both operands.
#[derive(Clone, Debug)]
pub struct RPlus {
    pub poset: Poset,
    pub left: BTreeMap<ElementId, ElementId>,
    pub right: BTreeMap<ElementId, ElementId>,
}

/// `n` copies of a block glued along a relation. Copy `k` (1-based, copy 1
/// lowest) holds element `e` of the block under id `(k-1)|P| + rank(e)`
/// where `rank` is the 1-based position of `e` in the sorted block.
#[derive(Clone, Debug)]
pub struct Power {
    pub poset: Poset,
    block: Vec<ElementId>,
}

impl Power {
    pub fn id(&self, copy: usize, e: ElementId) -> Option<ElementId> {
        let rank = self.block.binary_search(&e).ok()?;
        Some(ElementId(((copy - 1) * self.block.len() + rank + 1) as u32))
    }
}

impl Poset {
    pub fn empty() -> Poset {
        Poset {
            elems: Vec::new(),
            up: Vec::new(),
            upper: Vec::new(),
            lower: Vec::new(),
        }
    }

    /// Validates and builds a poset from any acyclic relation. Pairs implied
    /// by transitivity are dropped from the covers but kept in the order.
    pub fn build(
        elements: impl IntoIterator<Item = ElementId>,
        relations: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Poset, PosetError> {
        let mut elems: Vec<ElementId> = elements.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        let mut edges = Vec::new();
        for (a, b) in relations {
            let ia = elems
                .binary_search(&a)
                .map_err(|_| PosetError::UnknownElement(a))?;
            let ib = elems
                .binary_search(&b)
                .map_err(|_| PosetError::UnknownElement(b))?;
            edges.push((ia, ib));
        }
        Poset::from_index_edges(elems, &edges)
    }

    /// Convenience for tests and builders with small integer ids.
    pub fn from_u32(elements: &[u32], covers: &[(u32, u32)]) -> Result<Poset, PosetError> {
        Poset::build(
            elements.iter().map(|&e| ElementId(e)),
            covers.iter().map(|&(a, b)| (ElementId(a), ElementId(b))),
        )
    }

    /// `elems` must be sorted and distinct; edges index into it.
    fn from_index_edges(
        elems: Vec<ElementId>,
        edges: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        let n = elems.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in edges {
            if a == b {
                return Err(PosetError::CycleDetected);
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn's algorithm; leftover vertices sit on a cycle
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(PosetError::CycleDetected);
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &v in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            for &w in &succ[v] {
                set.insert(w);
                set.union_with(&up[w]);
            }
            up[v] = set;
        }
        Ok(Poset::from_closure(elems, up))
    }

    /// Derives covers from a transitively closed strict order.
    fn from_closure(elems: Vec<ElementId>, up: Vec<FixedBitSet>) -> Poset {
        let n = elems.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for x in 0..n {
            let mut implied = FixedBitSet::with_capacity(n);
            for z in up[x].ones() {
                implied.union_with(&up[z]);
            }
            for y in up[x].ones() {
                if !implied.contains(y) {
                    upper[x].push(y);
                    lower[y].push(x);
                }
            }
        }
        Poset {
            elems,
            up,
            upper,
            lower,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elems
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.index_of(e).is_some()
    }

    pub fn index_of(&self, e: ElementId) -> Option<usize> {
        self.elems.binary_search(&e).ok()
    }

    pub fn max_id(&self) -> Option<ElementId> {
        self.elems.last().copied()
    }

    fn idx(&self, e: ElementId) -> Result<usize, PosetError> {
        self.index_of(e).ok_or(PosetError::UnknownElement(e))
    }

    /// Cover pairs `(x, y)` with `x ⋖ y`, sorted.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out: Vec<_> = self
            .upper
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
            .map(|(x, y)| (self.elems[x], self.elems[y]))
            .collect();
        out.sort_unstable();
        out
    }

    /// All strictly related pairs `(x, y)` with `x < y`, sorted.
    pub fn relations(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for (x, set) in self.up.iter().enumerate() {
            for y in set.ones() {
                out.push((self.elems[x], self.elems[y]));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.up[i].contains(j),
            _ => false,
        }
    }

    pub fn le(&self, a: ElementId, b: ElementId) -> bool {
        (a == b && self.contains(a)) || self.lt(a, b)
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    pub(crate) fn lower_idx(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, e: ElementId) -> Vec<ElementId> {
        self.index_of(e)
            .map(|i| self.upper[i].iter().map(|&j| self.elems[j]).collect())
            .unwrap_or_default()
    }

    pub fn lower_covers(&self, e: ElementId) -> Vec<ElementId> {
        self.index_of(e)
            .map(|i| self.lower[i].iter().map(|&j| self.elems[j]).collect())
            .unwrap_or_default()
    }

    pub fn is_removable(&self, e: ElementId) -> bool {
        self.index_of(e)
            .is_some_and(|i| self.upper[i].len() <= 1 && self.lower[i].len() <= 1)
    }

    /// Elements with at most one lower cover and at most one upper cover.
    pub fn removable_elements(&self) -> Vec<ElementId> {
        (0..self.len())
            .filter(|&i| self.upper[i].len() <= 1 && self.lower[i].len() <= 1)
            .map(|i| self.elems[i])
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| self.upper[i].len() <= 1 && self.lower[i].len() <= 1)
            && self.lower.iter().filter(|l| l.is_empty()).count() <= 1
    }

    /// Minimal elements, sorted.
    pub fn minimal(&self) -> Vec<ElementId> {
        (0..self.len())
            .filter(|&i| self.lower[i].is_empty())
            .map(|i| self.elems[i])
            .collect()
    }

    /// Maximal elements, sorted.
    pub fn maximal(&self) -> Vec<ElementId> {
        (0..self.len())
            .filter(|&i| self.upper[i].is_empty())
            .map(|i| self.elems[i])
            .collect()
    }

    /// A linear extension: every element precedes the elements above it.
    /// Ties are broken by id, so the result is deterministic.
    pub fn linear_extension(&self) -> Vec<ElementId> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            out.push(self.elems[v]);
            for &w in &self.upper[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        out
    }

    /// Induced subposet on the elements satisfying `keep`.
    pub fn induced<F: Fn(ElementId) -> bool>(&self, keep: F) -> Poset {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(self.elems[i])).collect();
        let m = idx.len();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let elems: Vec<ElementId> = idx.iter().map(|&i| self.elems[i]).collect();
        let up: Vec<FixedBitSet> = idx
            .iter()
            .map(|&i| {
                let mut s = FixedBitSet::with_capacity(m);
                for j in self.up[i].ones() {
                    if pos[j] != usize::MAX {
                        s.insert(pos[j]);
                    }
                }
                s
            })
            .collect();
        Poset::from_closure(elems, up)
    }

    /// The induced subposet `P \ {b}`. Removability is not required here.
    pub fn delete(&self, b: ElementId) -> Result<Poset, PosetError> {
        self.idx(b)?;
        Ok(self.induced(|e| e != b))
    }

    /// Partially linear extension `P(M, A)`: glue `M` into one fresh element
    /// lying above every element of `A \ M`.
    ///
    /// The order on `(P \ M) ∪ {M}` is: the old order on `P \ M`; `x < y`
    /// whenever `x ≤ x'` for some `x' ∈ A` and `y' ≤ y` for some `y' ∈ M`;
    /// `M < y` whenever some member of `M` lies below `y`; and `x < M`
    /// whenever `x` lies below some element of `A`.
    pub fn ple(&self, m: &[ElementId], a: &AntiChain) -> Result<Ple, PosetError> {
        let mut members: Vec<ElementId> = m.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(PosetError::EmptySubset);
        }
        for &x in a.members() {
            self.idx(x)?;
        }
        for &x in &members {
            if !a.members().contains(&x) {
                return Err(PosetError::SubsetNotContained(x));
            }
        }
        let n = self.len();
        let in_m: Vec<bool> = self.elems.iter().map(|e| members.contains(e)).collect();
        let a_idx: Vec<usize> = a
            .members()
            .iter()
            .map(|&e| self.index_of(e).unwrap())
            .collect();
        let m_idx: Vec<usize> = (0..n).filter(|&i| in_m[i]).collect();
        // below_a: x ≤ some element of A; above_m: some element of M ≤ y
        let below_a: Vec<bool> = (0..n)
            .map(|x| a_idx.iter().any(|&t| t == x || self.up[x].contains(t)))
            .collect();
        let above_m: Vec<bool> = (0..n)
            .map(|y| m_idx.iter().any(|&s| s == y || self.up[s].contains(y)))
            .collect();

        let glued = ElementId(self.max_id().map_or(0, |e| e.0 + 1));
        let mut elems: Vec<ElementId> = (0..n)
            .filter(|&i| !in_m[i])
            .map(|i| self.elems[i])
            .collect();
        elems.push(glued);
        let pos = |i: usize| elems.binary_search(&self.elems[i]).unwrap();
        let g = elems.len() - 1;
        let mut edges = Vec::new();
        for x in 0..n {
            if in_m[x] {
                continue;
            }
            for y in 0..n {
                if in_m[y] || x == y {
                    continue;
                }
                if self.up[x].contains(y) || (below_a[x] && above_m[y]) {
                    edges.push((pos(x), pos(y)));
                }
            }
            if below_a[x] {
                edges.push((pos(x), g));
            }
            if above_m[x] {
                edges.push((g, pos(x)));
            }
        }
        let poset = Poset::from_index_edges(elems, &edges)
            .expect("partially linear extension must be antisymmetric");
        Ok(Ple {
            poset,
            glued,
            members,
        })
    }

    /// All antichains of exactly `k` elements, lexicographic by sorted ids.
    pub fn antichains_of_size(&self, k: usize) -> Vec<AntiChain> {
        let mut out = Vec::new();
        if k == 0 || k > self.len() {
            return out;
        }
        let mut cur = Vec::with_capacity(k);
        self.antichain_rec(0, k, &mut cur, &mut out);
        out
    }

    fn antichain_rec(
        &self,
        start: usize,
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<AntiChain>,
    ) {
        if cur.len() == k {
            out.push(AntiChain(cur.iter().map(|&i| self.elems[i]).collect()));
            return;
        }
        for i in start..self.len() {
            if cur
                .iter()
                .all(|&c| !self.up[c].contains(i) && !self.up[i].contains(c))
            {
                cur.push(i);
                self.antichain_rec(i + 1, k, cur, out);
                cur.pop();
            }
        }
    }

    /// The lexicographically first antichain of size two, if any.
    pub fn first_two_antichain(&self) -> Option<AntiChain> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if !self.up[i].contains(j) && !self.up[j].contains(i) {
                    return Some(AntiChain(vec![self.elems[i], self.elems[j]]));
                }
            }
        }
        None
    }

    /// The lexicographically last antichain of size two, if any.
    pub fn last_two_antichain(&self) -> Option<AntiChain> {
        let n = self.len();
        for i in (0..n).rev() {
            for j in (i + 1..n).rev() {
                if !self.up[i].contains(j) && !self.up[j].contains(i) {
                    return Some(AntiChain(vec![self.elems[i], self.elems[j]]));
                }
            }
        }
        None
    }

    /// Number of nonempty antichains, `ac(P)`. Exponential in the width.
    pub fn antichain_count(&self) -> u64 {
        let n = self.len();
        let mut count = 0u64;
        // extend by increasing index, tracking the set of still-allowed elements
        let mut stack: Vec<(usize, FixedBitSet)> = Vec::new();
        let all = {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert_range(..);
            s
        };
        stack.push((0, all));
        while let Some((start, allowed)) = stack.pop() {
            for i in allowed.ones().filter(|&i| i >= start) {
                count += 1;
                let mut next = allowed.clone();
                next.difference_with(&self.up[i]);
                for j in 0..n {
                    if self.up[j].contains(i) {
                        next.set(j, false);
                    }
                }
                next.set(i, false);
                stack.push((i + 1, next));
            }
        }
        count
    }

    /// Renames elements by a strictly increasing map onto `0..len`, returning
    /// the renamed poset's cover list keyed by index.
    pub fn canonical_covers(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for (x, ys) in self.upper.iter().enumerate() {
            for &y in ys {
                out.push((x as u32, y as u32));
            }
        }
        out
    }

    /// Same order, elements renamed `e -> f(e)`. `f` must be injective.
    pub fn relabel<F: Fn(ElementId) -> ElementId>(&self, f: F) -> Poset {
        let pairs: Vec<(ElementId, ElementId)> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (f(a), f(b)))
            .collect();
        Poset::build(self.elems.iter().map(|&e| f(e)), pairs)
            .expect("relabeling keeps the order acyclic")
    }

    /// Partially ordinal sum `P ⊕_R Q`: `P` is relabeled onto `1..=|P|` and
    /// `Q` onto `|P|+1..=|P|+|Q|`, both by sorted rank.
    pub fn rplus(p: &Poset, q: &Poset, r: &Relation) -> Result<RPlus, PosetError> {
        for (x, y) in r.pairs() {
            if !p.contains(x) || !q.contains(y) {
                return Err(PosetError::RelationOutOfRange(x, y));
            }
        }
        let left: BTreeMap<ElementId, ElementId> = p
            .elems
            .iter()
            .enumerate()
            .map(|(k, &e)| (e, ElementId(k as u32 + 1)))
            .collect();
        let off = p.len() as u32;
        let right: BTreeMap<ElementId, ElementId> = q
            .elems
            .iter()
            .enumerate()
            .map(|(k, &e)| (e, ElementId(off + k as u32 + 1)))
            .collect();
        let mut rel: Vec<(ElementId, ElementId)> = Vec::new();
        rel.extend(p.covers().into_iter().map(|(a, b)| (left[&a], left[&b])));
        rel.extend(q.covers().into_iter().map(|(a, b)| (right[&a], right[&b])));
        // x ≤ x' R y' ≤ y follows by transitivity from the R pairs themselves
        rel.extend(r.pairs().map(|(a, b)| (left[&a], right[&b])));
        let poset = Poset::build(left.values().chain(right.values()).copied(), rel)?;
        Ok(RPlus { poset, left, right })
    }

    /// `P ⊕_R P ⊕_R ... ⊕_R P` with `n` copies, copy 1 lowest.
    pub fn power(p: &Poset, r: &Relation, n: usize) -> Result<Power, PosetError> {
        if n == 0 {
            return Err(PosetError::ZeroCopies);
        }
        for (x, y) in r.pairs() {
            if !p.contains(x) || !p.contains(y) {
                return Err(PosetError::RelationOutOfRange(x, y));
            }
        }
        let block = p.elems.clone();
        let size = block.len();
        let id = |copy: usize, e: ElementId| -> ElementId {
            let rank = block.binary_search(&e).unwrap();
            ElementId(((copy - 1) * size + rank + 1) as u32)
        };
        let mut elems = Vec::with_capacity(n * size);
        let mut rel = Vec::new();
        for k in 1..=n {
            elems.extend(block.iter().map(|&e| id(k, e)));
            rel.extend(p.covers().into_iter().map(|(a, b)| (id(k, a), id(k, b))));
            if k < n {
                rel.extend(r.pairs().map(|(a, b)| (id(k, a), id(k + 1, b))));
            }
        }
        let poset = Poset::build(elems, rel)?;
        Ok(Power { poset, block })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: u32) -> ElementId {
        ElementId(v)
    }

    fn ids(v: &[u32]) -> Vec<ElementId> {
        v.iter().map(|&x| e(x)).collect()
    }

    fn pairs(v: &[(u32, u32)]) -> Vec<(ElementId, ElementId)> {
        v.iter().map(|&(a, b)| (e(a), e(b))).collect()
    }

    fn diamond() -> Poset {
        Poset::from_u32(&[1, 2, 3, 4], &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn wide_diamond() -> Poset {
        Poset::from_u32(
            &[1, 2, 3, 4, 5],
            &[(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)],
        )
        .unwrap()
    }

    fn chain(n: u32) -> Poset {
        let els: Vec<u32> = (1..=n).collect();
        let cov: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
        Poset::from_u32(&els, &cov).unwrap()
    }

    #[test]
    fn build_validates() {
        let d = diamond();
        assert_eq!(d.covers(), pairs(&[(1, 2), (1, 3), (2, 4), (3, 4)]));
        assert!(d.lt(e(1), e(4)));
        assert!(Poset::from_u32(&[], &[]).unwrap().is_empty());
        assert_eq!(
            Poset::from_u32(&[1, 2], &[(1, 2), (2, 1)]),
            Err(PosetError::CycleDetected)
        );
        assert_eq!(
            Poset::from_u32(&[1, 2], &[(1, 3)]),
            Err(PosetError::UnknownElement(e(3)))
        );
        assert_eq!(
            Poset::from_u32(&[1], &[(1, 1)]),
            Err(PosetError::CycleDetected)
        );
    }

    #[test]
    fn build_reduces_transitive_input() {
        let p = Poset::from_u32(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(p.covers(), pairs(&[(1, 2), (2, 3)]));
        assert!(p.lt(e(1), e(3)));
        assert_eq!(p, chain(3));
    }

    #[test]
    fn removable() {
        assert_eq!(diamond().removable_elements(), ids(&[2, 3]));
        assert_eq!(chain(5).removable_elements(), ids(&[1, 2, 3, 4, 5]));
        assert_eq!(wide_diamond().removable_elements(), ids(&[2, 3, 4]));
    }

    #[test]
    fn deletion() {
        let d = diamond().delete(e(2)).unwrap();
        assert_eq!(d.covers(), pairs(&[(1, 3), (3, 4)]));
        assert!(d.is_chain());
        assert!(chain(1).delete(e(1)).unwrap().is_empty());
        let f = wide_diamond().delete(e(4)).unwrap();
        assert_eq!(f.elements(), &ids(&[1, 2, 3, 5])[..]);
        assert_eq!(f.covers(), pairs(&[(1, 2), (1, 3), (2, 5), (3, 5)]));
        assert_eq!(
            diamond().delete(e(9)),
            Err(PosetError::UnknownElement(e(9)))
        );
    }

    #[test]
    fn ple_glues_subsets() {
        let p = wide_diamond();
        let a = AntiChain::new(&p, ids(&[2, 3, 4])).unwrap();
        let left = p.ple(&ids(&[2]), &a).unwrap();
        let g = left.glued;
        assert_eq!(g, e(6));
        // {2} covers 3 and 4, which cover 1; 5 covers {2}
        assert_eq!(
            left.poset.covers(),
            pairs(&[(1, 3), (1, 4), (3, 6), (4, 6), (6, 5)])
        );

        let right = p.ple(&ids(&[2, 3]), &a).unwrap();
        assert!(right.poset.is_chain());
        assert_eq!(right.poset.covers(), pairs(&[(1, 4), (4, 6), (6, 5)]));

        let single = AntiChain::new(&p, ids(&[3])).unwrap();
        let same = p.ple(&ids(&[3]), &single).unwrap();
        let back = same
            .poset
            .relabel(|x| if x == same.glued { e(3) } else { x });
        assert_eq!(back, p);
    }

    #[test]
    fn ple_errors() {
        let p = wide_diamond();
        assert_eq!(
            AntiChain::new(&p, ids(&[1, 2])),
            Err(PosetError::NotAntichain(e(1), e(2)))
        );
        let a = AntiChain::new(&p, ids(&[2, 3])).unwrap();
        assert_eq!(p.ple(&[], &a).unwrap_err(), PosetError::EmptySubset);
        assert_eq!(
            p.ple(&ids(&[4]), &a).unwrap_err(),
            PosetError::SubsetNotContained(e(4))
        );
    }

    #[test]
    fn antichain_enumeration() {
        assert_eq!(
            diamond().antichains_of_size(2),
            vec![AntiChain(ids(&[2, 3]))]
        );
        assert!(chain(4).antichains_of_size(2).is_empty());
        let anti = Poset::from_u32(&[1, 2, 3], &[]).unwrap();
        let got: Vec<Vec<ElementId>> = anti
            .antichains_of_size(2)
            .into_iter()
            .map(|a| a.0)
            .collect();
        assert_eq!(got, vec![ids(&[1, 2]), ids(&[1, 3]), ids(&[2, 3])]);
        assert_eq!(anti.antichain_count(), 7);
        assert_eq!(diamond().antichain_count(), 5);
        assert_eq!(chain(4).antichain_count(), 4);
        assert_eq!(Poset::empty().antichain_count(), 0);
    }

    #[test]
    fn rplus_examples() {
        let p = Poset::from_u32(&[1, 2], &[]).unwrap();
        let q = Poset::from_u32(&[3, 4], &[(3, 4)]).unwrap();
        let r = Relation::from_u32(&[(1, 4), (2, 3), (2, 4)]);
        let s = Poset::rplus(&p, &q, &r).unwrap().poset;
        assert_eq!(s.covers(), pairs(&[(1, 4), (2, 3), (3, 4)]));

        let direct = Poset::rplus(&p, &q, &Relation::empty()).unwrap().poset;
        assert_eq!(direct.covers(), pairs(&[(3, 4)]));

        let ordinal = Poset::rplus(&p, &q, &Relation::full(&p, &q)).unwrap().poset;
        assert_eq!(ordinal.covers(), pairs(&[(1, 3), (2, 3), (3, 4)]));

        let bad = Relation::from_u32(&[(3, 1)]);
        assert!(matches!(
            Poset::rplus(&p, &q, &bad),
            Err(PosetError::RelationOutOfRange(_, _))
        ));
    }

    #[test]
    fn power_examples() {
        // zigzag: 2 ⋖ 1 and R = {(2, 1)}
        let z = Poset::from_u32(&[1, 2], &[(2, 1)]).unwrap();
        let z2 = Poset::power(&z, &Relation::from_u32(&[(2, 1)]), 2).unwrap();
        assert_eq!(z2.poset.covers(), pairs(&[(2, 1), (2, 3), (4, 3)]));
        assert_eq!(z2.id(2, e(2)), Some(e(4)));

        let one = Poset::power(&diamond(), &Relation::empty(), 1)
            .unwrap()
            .poset;
        assert_eq!(one, diamond());

        let block = Poset::from_u32(&[1, 2, 3], &[(1, 2), (1, 3)]).unwrap();
        let p3 = Poset::power(&block, &Relation::from_u32(&[(2, 2), (3, 3)]), 3)
            .unwrap()
            .poset;
        assert_eq!(p3.len(), 9);
        assert_eq!(
            p3.covers(),
            pairs(&[
                (1, 2),
                (1, 3),
                (2, 5),
                (3, 6),
                (4, 5),
                (4, 6),
                (5, 8),
                (6, 9),
                (7, 8),
                (7, 9)
            ])
        );
        assert_eq!(
            Poset::power(&block, &Relation::empty(), 0).unwrap_err(),
            PosetError::ZeroCopies
        );
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = wide_diamond();
        let le = p.linear_extension();
        for (a, b) in p.relations() {
            let ia = le.iter().position(|&x| x == a).unwrap();
            let ib = le.iter().position(|&x| x == b).unwrap();
            assert!(ia < ib);
        }
    }
}

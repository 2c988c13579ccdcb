//! Finite posets stored as a Hasse diagram plus a bitset transitive closure.
//!
//! Elements are opaque string identifiers. Internally every element is an
//! index into the identifier list, which is kept sorted, so index order and
//! identifier order coincide. All tie-breaking in the crate relies on this.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

fn fresh_uid() -> u64 {
    NEXT_UID.fetch_add(1, Ordering::Relaxed)
}

/// A subset of the elements of one particular poset.
///
/// The set remembers which poset it was taken from; handing it to a
/// different poset is reported as [`Error::ForeignSet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    owner: u64,
    bits: FixedBitSet,
}

impl ElementSet {
    pub(crate) fn from_bits(owner: u64, bits: FixedBitSet) -> Self {
        ElementSet { owner, bits }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.ones().next().is_none()
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.bits.len() && self.bits.contains(index)
    }

    /// Member indices in increasing (identifier) order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.ones().next()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub(crate) fn owner(&self) -> u64 {
        self.owner
    }

    pub fn insert(&mut self, index: usize) {
        self.bits.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        self.bits.set(index, false);
    }

    fn same_owner(&self, other: &ElementSet) {
        assert_eq!(
            self.owner, other.owner,
            "set operation on element sets of different posets"
        );
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.same_owner(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet::from_bits(self.owner, bits)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.same_owner(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSet::from_bits(self.owner, bits)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.same_owner(other);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ElementSet::from_bits(self.owner, bits)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.same_owner(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.same_owner(other);
        !self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// A finite partially ordered set.
///
/// Invariants: the cover relation is acyclic and transitively reduced, and
/// `above`/`below` hold the reflexive-transitive closure of it.
#[derive(Clone)]
pub struct Poset {
    uid: u64,
    ids: Vec<String>,
    index: HashMap<String, usize>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.upper_covers == other.upper_covers
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.ids)
            .field("covers", &self.hasse_edges())
            .finish()
    }
}

impl Poset {
    /// Builds a poset from elements and an arbitrary set of relations
    /// `(a, b)` meaning `a < b`. Elements mentioned only in relations are
    /// added implicitly. The relation is transitively closed and reduced;
    /// cycles (including `a < a`) are rejected.
    pub fn from_relations<E, S, R, T>(elements: E, relations: R) -> Result<Poset>
    where
        E: IntoIterator<Item = S>,
        S: AsRef<str>,
        R: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let relations: Vec<(String, String)> = relations
            .into_iter()
            .map(|(a, b)| (a.as_ref().to_owned(), b.as_ref().to_owned()))
            .collect();
        let mut names: BTreeSet<String> = elements
            .into_iter()
            .map(|e| e.as_ref().to_owned())
            .collect();
        for (a, b) in &relations {
            names.insert(a.clone());
            names.insert(b.clone());
        }
        let ids: Vec<String> = names.into_iter().collect();
        let index: HashMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
        for (a, b) in &relations {
            let (i, j) = (index[a], index[b]);
            if i == j {
                return Err(Error::Cycle(a.clone()));
            }
            succ[i].push(j);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Self::from_successors(ids, &succ)
    }

    /// Builds a poset from identifiers and successor lists over their
    /// indices. `ids` need not be sorted; duplicates are rejected.
    pub(crate) fn from_successors(ids: Vec<String>, succ: &[Vec<usize>]) -> Result<Poset> {
        let n = ids.len();
        let mut indegree = vec![0usize; n];
        for s in succ {
            for &j in s {
                indegree[j] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(i) = queue.pop_front() {
            topo.push(i);
            for &j in &succ[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        if topo.len() < n {
            let culprit = (0..n)
                .filter(|&i| indegree[i] > 0)
                .min_by(|&a, &b| ids[a].cmp(&ids[b]))
                .expect("unsorted element exists");
            return Err(Error::Cycle(ids[culprit].clone()));
        }
        let mut above: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for &i in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(i);
            for &j in &succ[i] {
                set.union_with(&above[j]);
            }
            above[i] = set;
        }
        Self::from_closure(ids, above)
    }

    /// Builds a poset from its reflexive closure (`above[i]` = elements
    /// greater than or equal to `i`). Identifiers are sorted here.
    pub(crate) fn from_closure(ids: Vec<String>, above: Vec<FixedBitSet>) -> Result<Poset> {
        let n = ids.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        for w in order.windows(2) {
            if ids[w[0]] == ids[w[1]] {
                return Err(Error::Duplicate(ids[w[0]].clone()));
            }
        }
        let mut new_of_old = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let sorted_ids: Vec<String> = order.iter().map(|&old| ids[old].clone()).collect();
        let mut sorted_above = vec![FixedBitSet::with_capacity(n); n];
        for (old, set) in above.iter().enumerate() {
            let target = &mut sorted_above[new_of_old[old]];
            for j in set.ones() {
                target.insert(new_of_old[j]);
            }
        }
        Ok(Self::from_sorted_closure(sorted_ids, sorted_above))
    }

    fn from_sorted_closure(ids: Vec<String>, above: Vec<FixedBitSet>) -> Poset {
        let n = ids.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (i, set) in above.iter().enumerate() {
            for j in set.ones() {
                below[j].insert(i);
            }
        }
        // A topological rank: strictly smaller elements have fewer elements below.
        let rank: Vec<usize> = below.iter().map(|b| b.count_ones(..)).collect();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict: Vec<usize> = above[x].ones().filter(|&y| y != x).collect();
            strict.sort_by_key(|&y| (rank[y], y));
            let mut dominated = FixedBitSet::with_capacity(n);
            for y in strict {
                if dominated.contains(y) {
                    continue;
                }
                upper_covers[x].push(y);
                lower_covers[y].push(x);
                dominated.union_with(&above[y]);
            }
        }
        for c in upper_covers.iter_mut().chain(lower_covers.iter_mut()) {
            c.sort_unstable();
        }
        let index = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Poset {
            uid: fresh_uid(),
            ids,
            index,
            upper_covers,
            lower_covers,
            above,
            below,
        }
    }

    /// The empty poset.
    pub fn empty() -> Poset {
        Self::from_sorted_closure(Vec::new(), Vec::new())
    }

    /// An antichain on the given identifiers.
    pub fn antichain<S: AsRef<str>>(ids: impl IntoIterator<Item = S>) -> Result<Poset> {
        Self::from_relations(ids, std::iter::empty::<(String, String)>())
    }

    /// A chain `ids[0] < ids[1] < ...`.
    pub fn chain<S: AsRef<str>>(ids: impl IntoIterator<Item = S>) -> Result<Poset> {
        let ids: Vec<String> = ids.into_iter().map(|s| s.as_ref().to_owned()).collect();
        let rel: Vec<(String, String)> = ids
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::from_relations(&ids, rel)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> &str {
        &self.ids[index]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_owned()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// `a <= b`
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Reflexive up-set of `i` as raw bits.
    pub fn above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    /// Reflexive down-set of `i` as raw bits.
    pub fn below(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Cover pairs `(a, b)` with `b` covering `a`, by identifier.
    pub fn hasse_edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (a, covers) in self.upper_covers.iter().enumerate() {
            for &b in covers {
                out.push((self.ids[a].clone(), self.ids[b].clone()));
            }
        }
        out
    }

    pub fn hasse_edge_count(&self) -> usize {
        self.upper_covers.iter().map(Vec::len).sum()
    }

    // ---- element sets -------------------------------------------------

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::from_bits(self.uid, FixedBitSet::with_capacity(self.len()))
    }

    pub fn full_set(&self) -> ElementSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.insert_range(..);
        ElementSet::from_bits(self.uid, bits)
    }

    pub fn set_from_indices(&self, indices: impl IntoIterator<Item = usize>) -> ElementSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for i in indices {
            bits.insert(i);
        }
        ElementSet::from_bits(self.uid, bits)
    }

    pub(crate) fn set_from_bits(&self, bits: FixedBitSet) -> ElementSet {
        debug_assert_eq!(bits.len(), self.len());
        ElementSet::from_bits(self.uid, bits)
    }

    pub fn element_set<S: AsRef<str>>(
        &self,
        ids: impl IntoIterator<Item = S>,
    ) -> Result<ElementSet> {
        let mut set = self.empty_set();
        for id in ids {
            set.insert(self.index_of(id.as_ref())?);
        }
        Ok(set)
    }

    /// Fails with [`Error::ForeignSet`] unless `set` was taken from this poset.
    pub fn check(&self, set: &ElementSet) -> Result<()> {
        if set.owner() == self.uid && set.bits().len() == self.len() {
            Ok(())
        } else {
            Err(Error::ForeignSet)
        }
    }

    pub fn names(&self, set: &ElementSet) -> Vec<String> {
        set.iter().map(|i| self.ids[i].clone()).collect()
    }

    /// `U_x`
    pub fn down_set(&self, x: &str) -> Result<ElementSet> {
        let i = self.index_of(x)?;
        Ok(self.down_of(i))
    }

    /// `F_x`
    pub fn up_set(&self, x: &str) -> Result<ElementSet> {
        let i = self.index_of(x)?;
        Ok(self.up_of(i))
    }

    /// `U_x` minus `x`
    pub fn punctured_down(&self, x: &str) -> Result<ElementSet> {
        let i = self.index_of(x)?;
        Ok(self.punctured_down_of(i))
    }

    /// `F_x` minus `x`
    pub fn punctured_up(&self, x: &str) -> Result<ElementSet> {
        let i = self.index_of(x)?;
        Ok(self.punctured_up_of(i))
    }

    pub fn down_of(&self, i: usize) -> ElementSet {
        ElementSet::from_bits(self.uid, self.below[i].clone())
    }

    pub fn up_of(&self, i: usize) -> ElementSet {
        ElementSet::from_bits(self.uid, self.above[i].clone())
    }

    pub fn punctured_down_of(&self, i: usize) -> ElementSet {
        let mut s = self.down_of(i);
        s.remove(i);
        s
    }

    pub fn punctured_up_of(&self, i: usize) -> ElementSet {
        let mut s = self.up_of(i);
        s.remove(i);
        s
    }

    /// Smallest up-set containing `set` (union of the `F_a`).
    pub fn closure(&self, set: &ElementSet) -> Result<ElementSet> {
        self.check(set)?;
        let mut bits = FixedBitSet::with_capacity(self.len());
        for a in set.iter() {
            bits.union_with(&self.above[a]);
        }
        Ok(ElementSet::from_bits(self.uid, bits))
    }

    /// Smallest down-set containing `set` (union of the `U_a`).
    pub fn open_hull(&self, set: &ElementSet) -> Result<ElementSet> {
        self.check(set)?;
        let mut bits = FixedBitSet::with_capacity(self.len());
        for a in set.iter() {
            bits.union_with(&self.below[a]);
        }
        Ok(ElementSet::from_bits(self.uid, bits))
    }

    pub fn is_down_set(&self, set: &ElementSet) -> bool {
        set.iter().all(|a| self.below[a].is_subset(set.bits()))
    }

    pub fn is_up_set(&self, set: &ElementSet) -> bool {
        set.iter().all(|a| self.above[a].is_subset(set.bits()))
    }

    /// Maximal elements of `set` within the induced order.
    pub fn maximal_in(&self, set: &ElementSet) -> Vec<usize> {
        set.iter()
            .filter(|&a| self.above[a].ones().all(|b| b == a || !set.contains(b)))
            .collect()
    }

    /// Minimal elements of `set` within the induced order.
    pub fn minimal_in(&self, set: &ElementSet) -> Vec<usize> {
        set.iter()
            .filter(|&a| self.below[a].ones().all(|b| b == a || !set.contains(b)))
            .collect()
    }

    /// The maximum of `set`, if it has one.
    pub fn maximum_in(&self, set: &ElementSet) -> Option<usize> {
        match self.maximal_in(set).as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// The minimum of `set`, if it has one.
    pub fn minimum_in(&self, set: &ElementSet) -> Option<usize> {
        match self.minimal_in(set).as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// Same underlying set with the order reversed.
    pub fn opposite(&self) -> Poset {
        Poset {
            uid: fresh_uid(),
            ids: self.ids.clone(),
            index: self.index.clone(),
            upper_covers: self.lower_covers.clone(),
            lower_covers: self.upper_covers.clone(),
            above: self.below.clone(),
            below: self.above.clone(),
        }
    }

    /// Indices in a linear extension; ties broken by identifier order.
    pub fn linear_extension_indices(&self) -> Vec<usize> {
        self.linear_extension_of(&self.full_set())
    }

    /// Linear extension of the subposet induced on `set`: repeatedly output
    /// the smallest index all of whose predecessors in `set` are out.
    pub fn linear_extension_of(&self, set: &ElementSet) -> Vec<usize> {
        let mut waiting = vec![0usize; self.len()];
        let mut heap = BinaryHeap::new();
        for x in set.iter() {
            let mut below = self.below[x].clone();
            below.intersect_with(set.bits());
            waiting[x] = below.count_ones(..) - 1;
            if waiting[x] == 0 {
                heap.push(Reverse(x));
            }
        }
        let mut out = Vec::with_capacity(set.len());
        while let Some(Reverse(x)) = heap.pop() {
            out.push(x);
            for y in self.above[x].ones() {
                if y != x && set.contains(y) {
                    waiting[y] -= 1;
                    if waiting[y] == 0 {
                        heap.push(Reverse(y));
                    }
                }
            }
        }
        out
    }

    /// Linear extension by identifier.
    pub fn linear_extension(&self) -> Vec<String> {
        self.linear_extension_indices()
            .into_iter()
            .map(|i| self.ids[i].clone())
            .collect()
    }

    /// Connected components of the comparability graph of the subposet
    /// induced on `set`, ordered by their smallest member.
    pub fn connected_components(&self, set: &ElementSet) -> Result<Vec<ElementSet>> {
        self.check(set)?;
        Ok(self.components_unchecked(set))
    }

    pub(crate) fn components_unchecked(&self, set: &ElementSet) -> Vec<ElementSet> {
        let mut seen = FixedBitSet::with_capacity(self.len());
        let mut out = Vec::new();
        for start in set.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = FixedBitSet::with_capacity(self.len());
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for y in self.above[x].ones().chain(self.below[x].ones()) {
                    if set.contains(y) && !seen.contains(y) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            out.push(ElementSet::from_bits(self.uid, comp));
        }
        out
    }

    pub fn is_connected(&self, set: &ElementSet) -> bool {
        self.components_unchecked(set).len() == 1
    }

    /// Standalone poset on `set` with the restricted order.
    pub fn induced_subposet(&self, set: &ElementSet) -> Result<Poset> {
        self.check(set)?;
        let members: Vec<usize> = set.iter().collect();
        let mut local = vec![usize::MAX; self.len()];
        for (k, &m) in members.iter().enumerate() {
            local[m] = k;
        }
        let ids: Vec<String> = members.iter().map(|&m| self.ids[m].clone()).collect();
        let above: Vec<FixedBitSet> = members
            .iter()
            .map(|&m| {
                let mut bits = FixedBitSet::with_capacity(members.len());
                for j in self.above[m].ones() {
                    if set.contains(j) {
                        bits.insert(local[j]);
                    }
                }
                bits
            })
            .collect();
        // identifiers are already sorted
        Ok(Self::from_sorted_closure(ids, above))
    }

    /// All strict relations `(a, b)` with `a < b`, by index.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.above[a].ones() {
                if a != b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Renames every element; the order is carried over.
    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> Result<Poset> {
        let ids: Vec<String> = self.ids.iter().map(|s| rename(s)).collect();
        Self::from_closure(ids, self.above.clone())
    }

    /// Serializable form.
    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.ids.clone(),
            relations: self
                .hasse_edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
        }
    }
}

/// JSON form: `{ "elements": [...], "relations": [["a","b"], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    #[serde(default)]
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

impl PosetJson {
    pub fn into_poset(self) -> Result<Poset> {
        Poset::from_relations(
            self.elements,
            self.relations.into_iter().map(|[a, b]| (a, b)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(p: &Poset, s: &ElementSet) -> Vec<String> {
        p.names(s)
    }

    fn chain_abc() -> Poset {
        Poset::chain(["a", "b", "c"]).unwrap()
    }

    fn vee() -> Poset {
        Poset::from_relations(["a", "b", "c"], [("a", "c"), ("b", "c")]).unwrap()
    }

    fn diamond() -> Poset {
        Poset::from_relations(
            Vec::<&str>::new(),
            [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap()
    }

    #[test]
    fn down_set_examples() {
        let p = chain_abc();
        assert_eq!(names(&p, &p.down_set("b").unwrap()), ["a", "b"]);
        let q = Poset::antichain(["a", "b"]).unwrap();
        assert_eq!(names(&q, &q.down_set("a").unwrap()), ["a"]);
        assert!(matches!(p.down_set("zz"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn punctured_sets() {
        let p = chain_abc();
        assert_eq!(names(&p, &p.punctured_up("a").unwrap()), ["b", "c"]);
        let s = Poset::antichain(["a"]).unwrap();
        assert!(s.punctured_down("a").unwrap().is_empty());
        let v = vee();
        assert_eq!(names(&v, &v.punctured_down("c").unwrap()), ["a", "b"]);
        assert!(v.punctured_up("zz").is_err());
    }

    #[test]
    fn closure_and_open_hull() {
        let p = chain_abc();
        let empty = p.empty_set();
        assert!(p.closure(&empty).unwrap().is_empty());
        assert!(p.open_hull(&empty).unwrap().is_empty());
        let b = p.element_set(["b"]).unwrap();
        assert_eq!(names(&p, &p.closure(&b).unwrap()), ["b", "c"]);
        assert_eq!(names(&p, &p.open_hull(&b).unwrap()), ["a", "b"]);

        let d = diamond();
        let maximal = d.set_from_indices(d.maximal_in(&d.full_set()));
        assert_eq!(d.closure(&maximal).unwrap(), maximal);
        assert_eq!(d.open_hull(&maximal).unwrap(), d.full_set());
    }

    #[test]
    fn foreign_sets_are_rejected() {
        let p = chain_abc();
        let q = chain_abc();
        assert!(matches!(p.closure(&q.full_set()), Err(Error::ForeignSet)));
    }

    #[test]
    fn opposite_is_involutive() {
        let p = Poset::chain(["a", "b"]).unwrap();
        let op = p.opposite();
        assert!(op.lt(op.index_of("b").unwrap(), op.index_of("a").unwrap()));
        assert_eq!(op.opposite(), p);
        let anti = Poset::antichain(["x", "y"]).unwrap();
        assert_eq!(anti.opposite(), anti);
    }

    #[test]
    fn linear_extension_examples() {
        assert_eq!(chain_abc().linear_extension(), ["a", "b", "c"]);
        assert_eq!(
            Poset::antichain(["b", "a"]).unwrap().linear_extension(),
            ["a", "b"]
        );
        assert_eq!(vee().linear_extension(), ["a", "b", "c"]);
        let p = Poset::chain(["z", "y", "x"]).unwrap();
        assert_eq!(p.linear_extension(), ["z", "y", "x"]);
    }

    #[test]
    fn components_examples() {
        let p = Poset::from_relations(Vec::<&str>::new(), [("a", "b"), ("c", "d")]).unwrap();
        assert_eq!(p.connected_components(&p.full_set()).unwrap().len(), 2);
        assert!(p.connected_components(&p.empty_set()).unwrap().is_empty());
        let fence = Poset::from_relations(Vec::<&str>::new(), [("a", "x"), ("b", "x")]).unwrap();
        assert_eq!(
            fence.connected_components(&fence.full_set()).unwrap().len(),
            1
        );
    }

    #[test]
    fn induced_subposet_examples() {
        let p = chain_abc();
        let sub = p
            .induced_subposet(&p.element_set(["a", "c"]).unwrap())
            .unwrap();
        assert_eq!(sub.hasse_edges(), [("a".to_string(), "c".to_string())]);
        assert!(p.induced_subposet(&p.empty_set()).unwrap().is_empty());
        let d = diamond();
        let sub = d
            .induced_subposet(&d.element_set(["a", "d"]).unwrap())
            .unwrap();
        assert_eq!(sub.hasse_edges(), [("a".to_string(), "d".to_string())]);
    }

    #[test]
    fn input_is_transitively_reduced() {
        let p = Poset::from_relations(Vec::<&str>::new(), [("a", "b"), ("b", "c"), ("a", "c")])
            .unwrap();
        assert_eq!(p.hasse_edge_count(), 2);
    }

    #[test]
    fn cycles_are_rejected() {
        let err = Poset::from_relations(Vec::<&str>::new(), [("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
        assert!(Poset::from_relations(Vec::<&str>::new(), [("a", "a")]).is_err());
    }
}

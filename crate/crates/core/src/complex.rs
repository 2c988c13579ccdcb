//! Finite simplicial complexes and the order-complex / face-poset functors.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, IntegerMatrix};
use crate::poset::{ElementSet, Poset};

/// A simplex as a sorted list of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Codimension-one faces, the i-th omitting vertex i.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }
}

const RESERVED: [char; 4] = ['{', '}', ',', '\\'];

fn escape(name: &str) -> String {
    if !name.contains(RESERVED) {
        return name.to_owned();
    }
    let mut out = String::with_capacity(name.len() + 2);
    for c in name.chars() {
        if RESERVED.contains(&c) {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Identifier of a simplex in a face poset: a vertex keeps its own name and a
/// higher simplex is written `{u,v,...}` with sorted vertex names. Names
/// containing `{`, `}`, `,` or `\` are backslash-escaped inside braces.
pub fn simplex_label<S: AsRef<str>>(vertex_names: &[S]) -> String {
    match vertex_names {
        [single] => single.as_ref().to_owned(),
        _ => {
            let parts: Vec<String> = vertex_names.iter().map(|v| escape(v.as_ref())).collect();
            format!("{{{}}}", parts.join(","))
        }
    }
}

/// A finite abstract simplicial complex.
///
/// Stores every face grouped by dimension, each group sorted. Vertices are
/// sorted by identifier so that vertex index order is identifier order.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    faces: Vec<Vec<Simplex>>,
    lookup: HashMap<Simplex, usize>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("facets", &self.facet_names())
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds the downward closure of the given facets. Empty facets are
    /// ignored; repeated vertices inside a facet are merged.
    pub fn from_facets<F, S>(facets: impl IntoIterator<Item = F>) -> Result<Self>
    where
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let facets: Vec<Vec<String>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(|s| s.as_ref().to_owned()).collect())
            .collect();
        let names: BTreeSet<&String> = facets.iter().flatten().collect();
        let vertices: Vec<String> = names.into_iter().cloned().collect();
        let index: HashMap<&str, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i as u32))
            .collect();
        let simplices = facets
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| Simplex::new(f.iter().map(|v| index[v.as_str()]).collect()))
            .collect::<Vec<_>>();
        drop(index);
        Ok(Self::from_simplices(vertices, simplices))
    }

    /// Downward closure of `tops` over the given (sorted, unique) vertices.
    pub(crate) fn from_simplices(
        vertices: Vec<String>,
        tops: impl IntoIterator<Item = Simplex>,
    ) -> Self {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        let mut stack: Vec<Simplex> = tops.into_iter().collect();
        while let Some(s) = stack.pop() {
            if s.is_empty() || all.contains(&s) {
                continue;
            }
            if s.len() > 1 {
                stack.extend(s.boundary_faces());
            }
            all.insert(s);
        }
        Self::from_closed(vertices, all)
    }

    /// `all` must already be closed under taking faces.
    fn from_closed(vertices: Vec<String>, all: BTreeSet<Simplex>) -> Self {
        let max_dim = all.iter().map(Simplex::dim).max();
        let mut faces: Vec<Vec<Simplex>> = match max_dim {
            Some(d) => vec![Vec::new(); d + 1],
            None => Vec::new(),
        };
        for s in all {
            faces[s.dim()].push(s);
        }
        for group in &mut faces {
            group.sort();
        }
        let lookup = faces
            .iter()
            .flat_map(|g| g.iter().enumerate().map(|(i, s)| (s.clone(), i)))
            .collect();
        SimplicialComplex {
            vertices,
            faces,
            lookup,
        }
    }

    pub fn empty() -> Self {
        Self::from_closed(Vec::new(), BTreeSet::new())
    }

    /// The full simplex on the given vertices.
    pub fn simplex<S: AsRef<str>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        let v: Vec<String> = vertices
            .into_iter()
            .map(|s| s.as_ref().to_owned())
            .collect();
        Self::from_facets([v])
    }

    /// The boundary of the full simplex on the given vertices.
    pub fn simplex_boundary<S: AsRef<str>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        let v: Vec<String> = vertices
            .into_iter()
            .map(|s| s.as_ref().to_owned())
            .collect();
        let facets: Vec<Vec<String>> = (0..v.len())
            .map(|skip| {
                v.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect();
        Self::from_facets(facets)
    }

    /// A cycle graph on the given vertices, in order.
    pub fn cycle<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let n = vertices.len();
        let edges: Vec<[&str; 2]> = (0..n)
            .map(|i| [vertices[i].as_ref(), vertices[(i + 1) % n].as_ref()])
            .collect();
        Self::from_facets(edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
            .map(|i| i as u32)
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces of dimension `d`, sorted.
    pub fn faces(&self, d: usize) -> &[Simplex] {
        self.faces.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn num_simplices(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.lookup.contains_key(s)
    }

    /// Position of a face within its dimension group.
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn simplex_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Simplex> {
        let mut v = Vec::with_capacity(names.len());
        for n in names {
            v.push(
                self.vertex_index(n.as_ref())
                    .ok_or_else(|| Error::UnknownElement(n.as_ref().to_owned()))?,
            );
        }
        Ok(Simplex::new(v))
    }

    pub fn names_of(&self, s: &Simplex) -> Vec<String> {
        s.vertices()
            .iter()
            .map(|&v| self.vertices[v as usize].clone())
            .collect()
    }

    pub fn label_of(&self, s: &Simplex) -> String {
        simplex_label(&self.names_of(s))
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<Simplex> = BTreeSet::new();
        for group in self.faces.iter().skip(1) {
            for s in group {
                covered.extend(s.boundary_faces());
            }
        }
        self.all_faces()
            .filter(|s| !covered.contains(*s))
            .cloned()
            .collect()
    }

    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets().iter().map(|s| self.names_of(s)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, g)| {
                if d % 2 == 0 {
                    g.len() as i64
                } else {
                    -(g.len() as i64)
                }
            })
            .sum()
    }

    /// Whether every face of `self` is a face of `other`, compared by names.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all_faces().all(|s| {
            other
                .simplex_by_names(&self.names_of(s))
                .map(|t| other.contains(&t))
                .unwrap_or(false)
        })
    }

    /// Sorted list of faces by vertex names; equal for equal complexes.
    pub fn canonical_form(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self.all_faces().map(|s| self.names_of(s)).collect();
        out.sort();
        out
    }

    /// Subcomplex of the faces selected by `keep` (must be face-closed).
    pub(crate) fn restrict(&self, keep: impl Fn(&Simplex) -> bool) -> SimplicialComplex {
        let all: BTreeSet<Simplex> = self.all_faces().filter(|s| keep(s)).cloned().collect();
        debug_assert!(all
            .iter()
            .all(|s| s.len() == 1 || s.boundary_faces().all(|f| all.contains(&f))));
        let used: BTreeSet<u32> = all
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        let mut remap = vec![u32::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (k, &v) in used.iter().enumerate() {
            remap[v as usize] = k as u32;
            vertices.push(self.vertices[v as usize].clone());
        }
        let all = all
            .into_iter()
            .map(|s| Simplex::new(s.vertices().iter().map(|&v| remap[v as usize]).collect()))
            .collect();
        Self::from_closed(vertices, all)
    }

    /// Simplicial boundary matrices with the lexicographic vertex orientation.
    /// Panics if the composite of consecutive boundaries is nonzero, which
    /// would indicate a construction bug.
    pub fn chain_complex(&self) -> ChainComplex {
        let mut boundaries = Vec::with_capacity(self.faces.len());
        for d in 1..self.faces.len() {
            let rows = self.faces[d - 1].len();
            let columns: Vec<Vec<(usize, i64)>> = self.faces[d]
                .iter()
                .map(|s| {
                    let mut col: Vec<(usize, i64)> = s
                        .boundary_faces()
                        .enumerate()
                        .map(|(i, f)| {
                            let r = self.lookup[&f];
                            (r, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(IntegerMatrix::from_columns(rows, columns));
        }
        let cc = ChainComplex::new(self.f_vector(), boundaries);
        assert!(
            cc.boundary_squares_to_zero(),
            "boundary of boundary is nonzero"
        );
        cc
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            facets: self.facet_names(),
        }
    }
}

/// JSON form `{ "facets": [["u","v","w"], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub facets: Vec<Vec<String>>,
}

impl ComplexJson {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.facets)
    }
}

/// Order complex restricted to the chains inside `set`.
pub(crate) fn chains_within(p: &Poset, set: &ElementSet) -> Vec<Simplex> {
    // Each chain is generated once, from its minimum upward.
    fn extend(p: &Poset, set: &ElementSet, chain: &mut Vec<usize>, out: &mut Vec<Simplex>) {
        let top = *chain.last().expect("non-empty chain");
        out.push(Simplex::new(chain.iter().map(|&i| i as u32).collect()));
        for y in p.above(top).ones() {
            if y != top && set.contains(y) {
                chain.push(y);
                extend(p, set, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut chain = Vec::new();
    for x in set.iter() {
        chain.push(x);
        extend(p, set, &mut chain, &mut out);
        chain.pop();
    }
    out
}

/// Order complex of the subposet induced on `set`; vertex names are the
/// element identifiers.
pub fn order_complex_of(p: &Poset, set: &ElementSet) -> Result<SimplicialComplex> {
    p.check(set)?;
    let members: Vec<usize> = set.iter().collect();
    let mut local = vec![u32::MAX; p.len()];
    for (k, &m) in members.iter().enumerate() {
        local[m] = k as u32;
    }
    let vertices: Vec<String> = members.iter().map(|&m| p.id(m).to_owned()).collect();
    let all: BTreeSet<Simplex> = chains_within(p, set)
        .into_iter()
        .map(|s| Simplex::new(s.vertices().iter().map(|&v| local[v as usize]).collect()))
        .collect();
    Ok(SimplicialComplex::from_closed(vertices, all))
}

/// The simplicial complex of non-empty chains.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    order_complex_of(p, &p.full_set()).expect("own set")
}

/// The poset of simplices ordered by inclusion, labelled by [`simplex_label`].
pub fn face_poset(k: &SimplicialComplex) -> Poset {
    let all: Vec<&Simplex> = k.all_faces().collect();
    let position: HashMap<&Simplex, usize> = all.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let ids: Vec<String> = all.iter().map(|s| k.label_of(s)).collect();
    let n = all.len();
    let mut above = vec![FixedBitSet::with_capacity(n); n];
    // process from the top dimension down so cofaces are complete
    for i in (0..n).rev() {
        let s = all[i];
        let mut set = std::mem::take(&mut above[i]);
        set.grow(n);
        set.insert(i);
        above[i] = set;
        if s.len() > 1 {
            let current = above[i].clone();
            for f in s.boundary_faces() {
                let j = position[&f];
                above[j].grow(n);
                above[j].union_with(&current);
            }
        }
    }
    Poset::from_closure(ids, above).expect("simplex labels are unique")
}

/// `X' = X(K(X))`
pub fn barycentric_poset(p: &Poset) -> Poset {
    face_poset(&order_complex(p))
}

/// `K' = K(X(K))`
pub fn barycentric_complex(k: &SimplicialComplex) -> SimplicialComplex {
    order_complex(&face_poset(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> SimplicialComplex {
        SimplicialComplex::from_facets([["u", "v"]]).unwrap()
    }

    /// Brute-force chain enumeration over all subsets.
    fn brute_chains(p: &Poset) -> usize {
        let n = p.len();
        (1u32..(1 << n))
            .filter(|mask| {
                let m: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                m.iter().all(|&a| m.iter().all(|&b| p.comparable(a, b)))
            })
            .count()
    }

    #[test]
    fn order_complex_examples() {
        let chain = Poset::chain(["a", "b", "c"]).unwrap();
        let k = order_complex(&chain);
        assert_eq!(k.facet_names(), [["a", "b", "c"]]);
        let anti = Poset::antichain(["a", "b", "c", "d"]).unwrap();
        assert_eq!(order_complex(&anti).f_vector(), [4]);
        // zigzag a < x > b < y
        let fence = Poset::from_relations(Vec::<&str>::new(), [("a", "x"), ("b", "x"), ("b", "y")])
            .unwrap();
        let k = order_complex(&fence);
        assert_eq!(k.f_vector(), [4, 3]);
        assert_eq!(k.num_simplices(), brute_chains(&fence));
    }

    #[test]
    fn face_poset_examples() {
        let p = face_poset(&edge());
        assert_eq!(p.len(), 3);
        assert_eq!(p.hasse_edge_count(), 2);
        assert_eq!(p.maximal_in(&p.full_set()), [p.index_of("{u,v}").unwrap()]);
        let tri = SimplicialComplex::simplex_boundary(["u", "v", "w"]).unwrap();
        assert_eq!(face_poset(&tri).len(), 6);
        let point = SimplicialComplex::from_facets([["p"]]).unwrap();
        assert_eq!(face_poset(&point).len(), 1);
    }

    #[test]
    fn barycentric_examples() {
        let single = Poset::antichain(["a"]).unwrap();
        assert_eq!(barycentric_poset(&single).len(), 1);
        assert_eq!(barycentric_complex(&edge()).f_vector(), [3, 2]);
        let tri = SimplicialComplex::simplex_boundary(["u", "v", "w"]).unwrap();
        let sd = barycentric_complex(&tri);
        assert_eq!(sd.f_vector(), [6, 6]);
        // a 6-cycle: every vertex has degree two and it is connected
        for v in 0..6u32 {
            let degree = sd
                .faces(1)
                .iter()
                .filter(|e| e.vertices().contains(&v))
                .count();
            assert_eq!(degree, 2);
        }
    }

    #[test]
    fn chain_complex_examples() {
        let cc = edge().chain_complex();
        assert_eq!(cc.boundary(1).unwrap().column(0), [(0, -1), (1, 1)]);
        let point = SimplicialComplex::from_facets([["p"]]).unwrap();
        assert!(point.chain_complex().boundary(1).is_none());
        let tri = SimplicialComplex::simplex_boundary(["u", "v", "w"]).unwrap();
        let cc = tri.chain_complex();
        let d1 = cc.boundary(1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        for c in 0..3 {
            assert_eq!(d1.column(c).iter().map(|e| e.1).sum::<i64>(), 0);
        }
    }

    #[test]
    fn labels_escape_reserved_characters() {
        assert_eq!(simplex_label(&["u"]), "u");
        assert_eq!(simplex_label(&["u", "v"]), "{u,v}");
        assert_eq!(simplex_label(&["a,b", "c"]), "{a\\,b,c}");
    }

    #[test]
    fn opposite_has_same_order_complex() {
        let p = Poset::from_relations(
            Vec::<&str>::new(),
            [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("e", "c")],
        )
        .unwrap();
        assert_eq!(
            order_complex(&p).canonical_form(),
            order_complex(&p.opposite()).canonical_form()
        );
    }
}

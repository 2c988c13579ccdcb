//! Integer homology of simplicial complexes, posets and simplex-cell CW
//! complexes, used as the independent check for every reduction and theorem.
//!
//! Posets are measured through their order complexes and CW complexes through
//! the order complex of their face poset (their barycentric subdivision), so
//! everything reduces to simplicial boundary matrices.

mod rank;
mod snf;

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use rank::{rank_mod_prime, rank_over_rationals};
pub use snf::{
    smith_normal_form, smith_normal_form_dense, smith_normal_form_sparse, SmithForm,
    DENSE_THRESHOLD,
};

use crate::complex::{order_complex_of, SimplicialComplex};
use crate::cw::RegularCWComplex;
use crate::error::Result;
use crate::poset::{ElementSet, Poset};

/// Sparse integer matrix stored by columns. Entries are machine integers;
/// every computation on them is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Columns of `(row, value)` pairs; zero values are dropped.
    pub fn from_columns(rows: usize, mut columns: Vec<Vec<(usize, i64)>>) -> Self {
        for col in &mut columns {
            col.retain(|&(r, v)| {
                assert!(r < rows, "row index out of range");
                v != 0
            });
            col.sort_unstable();
        }
        IntegerMatrix { rows, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let columns = (0..nc)
            .map(|c| {
                (0..nr)
                    .filter(|&r| rows[r][c] != 0)
                    .map(|r| (r, rows[r][c]))
                    .collect()
            })
            .collect();
        IntegerMatrix { rows: nr, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    /// Whether `self * rhs` is the zero matrix.
    pub fn product_is_zero(&self, rhs: &IntegerMatrix) -> bool {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        rhs.columns.iter().all(|col| {
            let mut acc = vec![0i128; self.rows];
            for &(k, v) in col {
                for &(r, w) in &self.columns[k] {
                    acc[r] += v as i128 * w as i128;
                }
            }
            acc.iter().all(|&x| x == 0)
        })
    }
}

/// Chain groups ranks `n_k` and boundary maps `∂_k : C_k → C_{k-1}` for `k ≥ 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Self {
        assert_eq!(boundaries.len() + 1, ranks.len().max(1));
        ChainComplex { ranks, boundaries }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_k`, for `k ≥ 1`.
    pub fn boundary(&self, k: usize) -> Option<&IntegerMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].product_is_zero(&w[1]))
    }
}

/// One homology group: free rank plus torsion coefficients (each ≥ 2).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in every degree, trailing zero groups trimmed.
///
/// For reduced homology of the empty space the only nonzero group sits in
/// degree -1; this is recorded by `empty` instead of a negative index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub reduced: bool,
    pub empty: bool,
    pub degrees: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn group(&self, degree: usize) -> HomologyGroup {
        self.degrees.get(degree).cloned().unwrap_or_default()
    }

    pub fn betti(&self, degree: usize) -> usize {
        self.group(degree).betti
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|g| g.betti).collect()
    }

    /// Reduced homology vanishes in every degree (and the space is non-empty).
    pub fn is_acyclic(&self) -> bool {
        assert!(self.reduced, "acyclicity is a property of reduced homology");
        !self.empty && self.degrees.iter().all(HomologyGroup::is_zero)
    }

    /// Reduced homology vanishes in degrees `0..=n`.
    pub fn vanishes_through(&self, n: usize) -> bool {
        assert!(self.reduced, "vanishing is checked on reduced homology");
        !self.empty && (0..=n).all(|k| self.group(k).is_zero())
    }

    /// First degree with a nonzero group.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.degrees.iter().position(|g| !g.is_zero())
    }

    pub fn euler_from_betti(&self) -> i64 {
        let sum: i64 = self
            .degrees
            .iter()
            .enumerate()
            .map(|(k, g)| {
                if k % 2 == 0 {
                    g.betti as i64
                } else {
                    -(g.betti as i64)
                }
            })
            .sum();
        // reduced homology drops one from degree zero
        if self.reduced && !self.empty {
            sum + 1
        } else {
            sum
        }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.reduced { "~H" } else { "H" };
        if self.reduced && self.empty {
            return write!(f, "{h}_-1 = Z (empty)");
        }
        if self.degrees.is_empty() {
            return write!(f, "{h}_* = 0");
        }
        let parts: Vec<String> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(k, g)| format!("{h}_{k} = {g}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Anything with a simplicial chain model.
pub trait Homological {
    /// A simplicial complex computing the homology.
    fn simplicial_model(&self) -> SimplicialComplex;

    /// Number of connected components, by graph traversal.
    fn component_count(&self) -> usize;
}

impl Homological for SimplicialComplex {
    fn simplicial_model(&self) -> SimplicialComplex {
        self.clone()
    }

    fn component_count(&self) -> usize {
        let n = self.vertices().len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.faces(1) {
            let (a, b) = (e.vertices()[0] as usize, e.vertices()[1] as usize);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

impl Homological for Poset {
    fn simplicial_model(&self) -> SimplicialComplex {
        crate::complex::order_complex(self)
    }

    fn component_count(&self) -> usize {
        self.components_unchecked(&self.full_set()).len()
    }
}

impl Homological for RegularCWComplex {
    fn simplicial_model(&self) -> SimplicialComplex {
        crate::complex::order_complex(self.face_poset())
    }

    fn component_count(&self) -> usize {
        self.face_poset().component_count()
    }
}

/// Homology of a subposet, through the order complex of the chains inside it.
pub struct Subposet<'a> {
    pub poset: &'a Poset,
    pub set: &'a ElementSet,
}

impl<'a> Subposet<'a> {
    pub fn new(poset: &'a Poset, set: &'a ElementSet) -> Result<Self> {
        poset.check(set)?;
        Ok(Subposet { poset, set })
    }
}

impl Homological for Subposet<'_> {
    fn simplicial_model(&self) -> SimplicialComplex {
        order_complex_of(self.poset, self.set).expect("checked on construction")
    }

    fn component_count(&self) -> usize {
        self.poset.components_unchecked(self.set).len()
    }
}

/// Homology computed from a chain complex.
pub fn chain_homology(cc: &ChainComplex, reduced: bool) -> HomologyProfile {
    assert!(
        cc.boundary_squares_to_zero(),
        "boundary of boundary is nonzero"
    );
    let n = cc.ranks().len();
    let empty = n == 0 || cc.ranks()[0] == 0;
    // forms[k] = Smith form of ∂_k, for k in 1..n
    let forms: Vec<Option<SmithForm>> = (0..=n)
        .map(|k| cc.boundary(k).map(smith_normal_form))
        .collect();
    let rank_of = |k: usize| forms.get(k).and_then(|f| f.as_ref()).map_or(0, |f| f.rank);
    let mut degrees = Vec::with_capacity(n);
    for k in 0..n {
        let mut betti = cc.ranks()[k] - rank_of(k) - rank_of(k + 1);
        if k == 0 && reduced && !empty {
            betti -= 1;
        }
        let torsion = forms
            .get(k + 1)
            .and_then(|f| f.as_ref())
            .map(|f| {
                f.torsion()
                    .map(|t| t.to_u64().expect("torsion coefficient fits in 64 bits"))
                    .collect()
            })
            .unwrap_or_default();
        degrees.push(HomologyGroup { betti, torsion });
    }
    while degrees.last().is_some_and(HomologyGroup::is_zero) {
        degrees.pop();
    }
    HomologyProfile {
        reduced,
        empty,
        degrees,
    }
}

/// Integer homology. `H_0` is cross-checked against a graph traversal.
pub fn homology<H: Homological + ?Sized>(x: &H, reduced: bool) -> HomologyProfile {
    let model = x.simplicial_model();
    let profile = chain_homology(&model.chain_complex(), reduced);
    let components = x.component_count();
    let h0 = profile.betti(0) + usize::from(reduced && !profile.empty);
    assert_eq!(h0, components, "H_0 disagrees with the component count");
    profile
}

/// Reduced homology of the subposet induced on `set`.
pub fn subposet_homology(p: &Poset, set: &ElementSet, reduced: bool) -> Result<HomologyProfile> {
    Ok(homology(&Subposet::new(p, set)?, reduced))
}

/// Alternating count of faces of the simplicial model.
pub fn euler_characteristic<H: Homological + ?Sized>(x: &H) -> i64 {
    x.simplicial_model().euler_characteristic()
}

/// Betti numbers computed only from ranks over the rationals (Bareiss), with
/// no Smith normal form involved.
pub fn betti_by_rational_rank(k: &SimplicialComplex) -> Vec<usize> {
    let cc = k.chain_complex();
    let n = cc.ranks().len();
    let ranks: Vec<usize> = (0..=n)
        .map(|d| cc.boundary(d).map_or(0, rank_over_rationals))
        .collect();
    let mut out: Vec<usize> = (0..n)
        .map(|d| cc.ranks()[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Number of `Z/p^j` summands (any `j ≥ 1`) in `H_d`, from the drop in rank
/// of `∂_{d+1}` when reducing mod `p`.
pub fn p_torsion_count(k: &SimplicialComplex, d: usize, p: u64) -> usize {
    let cc = k.chain_complex();
    match cc.boundary(d + 1) {
        Some(m) => rank_over_rationals(m) - rank_mod_prime(m, p),
        None => 0,
    }
}

/// Per-degree comparison of two homology profiles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyComparison {
    pub equal: bool,
    pub left: HomologyProfile,
    pub right: HomologyProfile,
    pub differing_degrees: Vec<usize>,
}

pub fn same_homology(a: &HomologyProfile, b: &HomologyProfile) -> HomologyComparison {
    let top = a.degrees.len().max(b.degrees.len());
    let differing_degrees: Vec<usize> = (0..top).filter(|&k| a.group(k) != b.group(k)).collect();
    let equal = differing_degrees.is_empty() && a.empty == b.empty && a.reduced == b.reduced;
    HomologyComparison {
        equal,
        left: a.clone(),
        right: b.clone(),
        differing_degrees,
    }
}

/// Compare the unreduced homology of two objects.
pub fn compare<A: Homological + ?Sized, B: Homological + ?Sized>(
    a: &A,
    b: &B,
) -> HomologyComparison {
    same_homology(&homology(a, false), &homology(b, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn hexagon() -> SimplicialComplex {
        SimplicialComplex::cycle(&["a", "b", "c", "d", "e", "f"]).unwrap()
    }

    #[test]
    fn point_is_acyclic() {
        let p = SimplicialComplex::from_facets([["p"]]).unwrap();
        let h = homology(&p, true);
        assert!(h.is_acyclic());
        assert_eq!(euler_characteristic(&p), 1);
    }

    #[test]
    fn hexagon_homology() {
        let k = hexagon();
        let h = homology(&k, false);
        assert_eq!(h.degrees, [HomologyGroup::free(1), HomologyGroup::free(1)]);
        assert_eq!(euler_characteristic(&k), 0);
        // ∂_1 of the hexagon: rank 5, all factors one (Bareiss cross-check)
        let cc = k.chain_complex();
        let d1 = cc.boundary(1).unwrap();
        let s = smith_normal_form(d1);
        assert_eq!(s.rank, 5);
        assert_eq!(rank_over_rationals(d1), 5);
        assert!(s.torsion().next().is_none());
    }

    #[test]
    fn triangle_boundary_euler() {
        let k = SimplicialComplex::simplex_boundary(["u", "v", "w"]).unwrap();
        assert_eq!(euler_characteristic(&k), 0);
        assert_eq!(homology(&k, false).euler_from_betti(), 0);
    }

    #[test]
    fn reduced_homology_of_empty() {
        let h = homology(&SimplicialComplex::empty(), true);
        assert!(h.empty);
        assert!(!h.is_acyclic());
    }

    #[test]
    fn comparisons_report_degrees() {
        let point = Poset::antichain(["p"]).unwrap();
        let two = Poset::antichain(["a", "b"]).unwrap();
        let c = same_homology(&homology(&point, true), &homology(&two, true));
        assert!(!c.equal);
        assert_eq!(c.differing_degrees, [0]);
    }

    #[test]
    fn display() {
        let h = homology(&hexagon(), false);
        assert_eq!(h.to_string(), "H_0 = Z, H_1 = Z");
    }
}

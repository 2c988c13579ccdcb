//! Covers of posets and complexes, their nerves, and the completion of the
//! nerve.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{face_poset, simplex_label, SimplicialComplex};
use crate::cw::RegularCWComplex;
use crate::cylinder::{verify_theorem_a, Status, TheoremAReport};
use crate::error::{Error, Result};
use crate::homology::{compare, HomologyComparison};
use crate::map::Relation;
use crate::poset::{ElementSet, Poset};
use crate::reduction::{Triviality, TrivialityOracle, TrivialityVerdict};

/// An open cover of a poset by named down-sets. Parts are kept sorted by
/// name.
#[derive(Clone, Debug)]
pub struct PosetCover {
    base: Poset,
    names: Vec<String>,
    parts: Vec<ElementSet>,
}

impl PosetCover {
    /// Validates that every part is a down-set and that the parts cover the
    /// base. Parts are never repaired; see [`PosetCover::down_closed`].
    pub fn new(base: Poset, parts: Vec<(String, ElementSet)>) -> Result<Self> {
        let mut parts = parts;
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        for w in parts.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidCover {
                    part: w[0].0.clone(),
                    reason: "appears twice".into(),
                });
            }
        }
        let mut covered = base.empty_set();
        for (name, set) in &parts {
            base.check(set)?;
            if let Some(a) = set.iter().find(|&a| !base.below(a).is_subset(set.bits())) {
                let b = base
                    .below(a)
                    .ones()
                    .find(|&b| !set.contains(b))
                    .expect("witness exists");
                return Err(Error::InvalidCover {
                    part: name.clone(),
                    reason: format!(
                        "is not a down-set: contains `{}` but not `{}` below it",
                        base.id(a),
                        base.id(b)
                    ),
                });
            }
            covered = covered.union(set);
        }
        if let Some(x) = (0..base.len()).find(|&x| !covered.contains(x)) {
            return Err(Error::InvalidCover {
                part: "*".into(),
                reason: format!("no part contains `{}`", base.id(x)),
            });
        }
        let (names, parts) = parts.into_iter().unzip();
        Ok(PosetCover { base, names, parts })
    }

    /// Like [`PosetCover::new`] after replacing every part by its open hull.
    pub fn down_closed(base: Poset, parts: Vec<(String, ElementSet)>) -> Result<Self> {
        let parts = parts
            .into_iter()
            .map(|(n, s)| base.open_hull(&s).map(|h| (n, h)))
            .collect::<Result<_>>()?;
        Self::new(base, parts)
    }

    pub fn from_named<S: AsRef<str>>(base: Poset, parts: &[(S, Vec<S>)]) -> Result<Self> {
        let parts = parts
            .iter()
            .map(|(n, members)| {
                base.element_set(members.iter().map(AsRef::as_ref))
                    .map(|s| (n.as_ref().to_owned(), s))
            })
            .collect::<Result<_>>()?;
        Self::new(base, parts)
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parts(&self) -> &[ElementSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Label of an index set, in the nerve's vertex names.
    pub fn label(&self, j: &[usize]) -> String {
        let names: Vec<&str> = j.iter().map(|&i| self.names[i].as_str()).collect();
        simplex_label(&names)
    }

    /// Every non-empty `W_J`, keyed by `J`. Index sets are grown one part at
    /// a time from singletons, so only simplices of the nerve are visited.
    pub fn intersections(&self) -> BTreeMap<Vec<usize>, ElementSet> {
        let mut out = BTreeMap::new();
        let mut frontier: Vec<(Vec<usize>, ElementSet)> = (0..self.len())
            .filter(|&i| !self.parts[i].is_empty())
            .map(|i| (vec![i], self.parts[i].clone()))
            .collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (j, w) in &frontier {
                let last = *j.last().expect("non-empty index set");
                for i in last + 1..self.len() {
                    let meet = w.intersection(&self.parts[i]);
                    if !meet.is_empty() {
                        let mut bigger = j.clone();
                        bigger.push(i);
                        next.push((bigger, meet));
                    }
                }
            }
            out.extend(frontier);
            frontier = next;
        }
        out
    }

    /// Index sets `J` with `x` in `W_J`; the largest is the set of all parts
    /// containing `x`.
    pub fn parts_containing(&self, x: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.parts[i].contains(x))
            .collect()
    }
}

/// A cover of a simplicial complex by named subcomplexes.
#[derive(Clone, Debug)]
pub struct ComplexCover {
    base: SimplicialComplex,
    names: Vec<String>,
    parts: Vec<SimplicialComplex>,
}

impl ComplexCover {
    pub fn new(base: SimplicialComplex, parts: Vec<(String, SimplicialComplex)>) -> Result<Self> {
        let mut parts = parts;
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        for w in parts.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidCover {
                    part: w[0].0.clone(),
                    reason: "appears twice".into(),
                });
            }
        }
        for (name, part) in &parts {
            if !part.is_subcomplex_of(&base) {
                return Err(Error::InvalidCover {
                    part: name.clone(),
                    reason: "is not a subcomplex of the base".into(),
                });
            }
        }
        for s in base.all_faces() {
            let names = base.names_of(s);
            let covered = parts.iter().any(|(_, p)| {
                p.simplex_by_names(&names)
                    .map(|t| p.contains(&t))
                    .unwrap_or(false)
            });
            if !covered {
                return Err(Error::InvalidCover {
                    part: "*".into(),
                    reason: format!("no part contains {}", base.label_of(s)),
                });
            }
        }
        let (names, parts) = parts.into_iter().unzip();
        Ok(ComplexCover { base, names, parts })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parts(&self) -> &[SimplicialComplex] {
        &self.parts
    }

    /// The open cover `{X(L_i)}` of the face poset `X(K)`.
    pub fn to_poset_cover(&self) -> PosetCover {
        let base = face_poset(&self.base);
        let parts = self
            .names
            .iter()
            .zip(&self.parts)
            .map(|(n, p)| {
                let labels = p.all_faces().map(|s| p.label_of(s));
                (n.clone(), base.element_set(labels).expect("subcomplex"))
            })
            .collect();
        PosetCover::new(base, parts).expect("a valid complex cover gives a valid open cover")
    }
}

/// The nerve as a simplicial complex on the names of the non-empty parts.
pub fn nerve(c: &PosetCover) -> SimplicialComplex {
    let simplices: Vec<Vec<&str>> = c
        .intersections()
        .keys()
        .map(|j| j.iter().map(|&i| c.names[i].as_str()).collect())
        .collect();
    let k = SimplicialComplex::from_facets(simplices).expect("names are valid vertices");
    debug_assert_eq!(k.num_simplices(), c.intersections().len());
    k
}

pub fn complex_nerve(c: &ComplexCover) -> SimplicialComplex {
    nerve(&c.to_poset_cover())
}

/// Face poset of the nerve: index sets ordered by inclusion.
pub fn nerve_poset(c: &PosetCover) -> Poset {
    face_poset(&nerve(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoverStatus {
    Good,
    QuasiGood,
    Neither,
    Unknown,
}

impl fmt::Display for CoverStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverStatus::Good => "good",
            CoverStatus::QuasiGood => "quasi-good",
            CoverStatus::Neither => "neither",
            CoverStatus::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub id: String,
    pub elements: Vec<String>,
    pub verdict: TrivialityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionEntry {
    pub id: String,
    pub parts: Vec<String>,
    pub elements: Vec<String>,
    pub verdict: TrivialityVerdict,
    pub components: Vec<ComponentEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverClassification {
    pub status: CoverStatus,
    pub intersections: Vec<IntersectionEntry>,
}

impl CoverClassification {
    pub fn verdict_of(&self, id: &str) -> Option<&TrivialityVerdict> {
        self.intersections
            .iter()
            .find(|e| e.id == id)
            .map(|e| &e.verdict)
    }
}

/// Name of the completion cell for component `component` of `W_J`.
pub fn cell_id(j_label: &str, component_min: &str) -> String {
    format!("{j_label}|{component_min}")
}

/// Verdicts for every non-empty `W_J` and each of its components.
pub fn classify_cover(c: &PosetCover, oracle: &TrivialityOracle) -> CoverClassification {
    let x = c.base();
    let all: Vec<(Vec<usize>, ElementSet)> = c.intersections().into_iter().collect();
    let intersections: Vec<IntersectionEntry> = all
        .par_iter()
        .map(|(j, w)| {
            let id = c.label(j);
            let components = x
                .connected_components(w)
                .expect("own set")
                .into_iter()
                .map(|comp| ComponentEntry {
                    id: cell_id(&id, x.id(comp.first().expect("non-empty"))),
                    elements: x.names(&comp),
                    verdict: oracle.decide(x, &comp).expect("own set"),
                })
                .collect();
            IntersectionEntry {
                parts: j.iter().map(|&i| c.names[i].clone()).collect(),
                elements: x.names(w),
                verdict: oracle.decide(x, w).expect("own set"),
                components,
                id,
            }
        })
        .collect();
    let components = || intersections.iter().flat_map(|e| &e.components);
    let status = if components().any(|k| k.verdict.value == Triviality::NonTrivial) {
        CoverStatus::Neither
    } else if components().any(|k| k.verdict.value == Triviality::Unknown) {
        CoverStatus::Unknown
    } else if intersections.iter().all(|e| e.verdict.is_trivial()) {
        CoverStatus::Good
    } else {
        CoverStatus::QuasiGood
    };
    CoverClassification {
        status,
        intersections,
    }
}

/// `X_0(U)`: the index sets whose intersection is certified trivial.
#[derive(Clone, Debug)]
pub struct XZero {
    pub poset: Poset,
    /// Index sets whose verdict was `Unknown`; they are left out.
    pub undecided: Vec<String>,
    members: Vec<(Vec<usize>, ElementSet)>,
}

pub fn x_zero(c: &PosetCover, oracle: &TrivialityOracle) -> XZero {
    let np = nerve_poset(c);
    let all: Vec<(Vec<usize>, ElementSet)> = c.intersections().into_iter().collect();
    let verdicts: Vec<TrivialityVerdict> = all
        .par_iter()
        .map(|(_, w)| oracle.decide(c.base(), w).expect("own set"))
        .collect();
    let mut undecided = Vec::new();
    let mut keep = Vec::new();
    let mut members = Vec::new();
    for ((j, w), v) in all.into_iter().zip(verdicts) {
        match v.value {
            Triviality::Trivial => {
                keep.push(c.label(&j));
                members.push((j, w));
            }
            Triviality::Unknown => undecided.push(c.label(&j)),
            Triviality::NonTrivial => {}
        }
    }
    let set = np.element_set(&keep).expect("labels are nerve elements");
    let poset = np.induced_subposet(&set).expect("own set");
    members.sort_by_key(|(j, _)| poset.index_of(&c.label(j)).expect("kept"));
    XZero {
        poset,
        undecided,
        members,
    }
}

impl XZero {
    /// `I_x`: elements `J` of `X_0(U)` with `x` in `W_J`. It is checked to be
    /// a down-set.
    pub fn i_x(&self, c: &PosetCover, x: &str) -> Result<ElementSet> {
        let xi = c.base().index_of(x)?;
        let set = self.poset.set_from_indices(
            self.members
                .iter()
                .enumerate()
                .filter(|(_, (_, w))| w.contains(xi))
                .map(|(k, _)| k),
        );
        if !self.poset.is_down_set(&set) {
            return Err(Error::Inconsistent(format!("I_{x} is not open in X_0")));
        }
        Ok(set)
    }

    /// `W_J` for the element of `X_0(U)` at `index`.
    pub fn intersection(&self, index: usize) -> &ElementSet {
        &self.members[index].1
    }
}

/// The completion of the nerve with the payload of each cell.
#[derive(Clone, Debug)]
pub struct CompletionPoset {
    pub poset: Poset,
    /// Per poset index: the index set `J` (part names) and the component.
    pub cells: Vec<CompletionCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionCell {
    pub id: String,
    pub parts: Vec<String>,
    pub component: Vec<String>,
    #[serde(skip)]
    pub(crate) set: Option<ElementSet>,
}

impl CompletionPoset {
    pub fn dims(&self) -> HashMap<String, usize> {
        self.cells
            .iter()
            .map(|c| (c.id.clone(), c.parts.len() - 1))
            .collect()
    }

    /// The component of the cell at `index`, as a set of the base.
    pub fn component(&self, index: usize) -> &ElementSet {
        self.cells[index].set.as_ref().expect("built with sets")
    }

    pub fn cw(&self) -> Result<RegularCWComplex> {
        RegularCWComplex::from_face_poset(self.poset.clone(), &self.dims())
    }
}

/// Pairs `(J, C)` with `C` a component of a non-empty `W_J`, ordered by
/// `J ⊆ J'` and `C' ⊆ C`. The result is validated as a regular CW face
/// poset whose cells are simplices.
pub fn completion_poset(c: &PosetCover) -> Result<CompletionPoset> {
    let x = c.base();
    let mut raw: Vec<(Vec<usize>, ElementSet, String)> = Vec::new();
    for (j, w) in c.intersections() {
        let label = c.label(&j);
        for comp in x.connected_components(&w)? {
            let id = cell_id(&label, x.id(comp.first().expect("non-empty")));
            raw.push((j.clone(), comp, id));
        }
    }
    let n = raw.len();
    let mut jbits: Vec<FixedBitSet> = Vec::with_capacity(n);
    for (j, _, _) in &raw {
        let mut b = FixedBitSet::with_capacity(c.len());
        for &i in j {
            b.insert(i);
        }
        jbits.push(b);
    }
    let above: Vec<FixedBitSet> = (0..n)
        .map(|a| {
            let mut bits = FixedBitSet::with_capacity(n);
            for b in 0..n {
                if jbits[a].is_subset(&jbits[b]) && raw[b].1.is_subset(&raw[a].1) {
                    bits.insert(b);
                }
            }
            bits
        })
        .collect();
    let ids: Vec<String> = raw.iter().map(|r| r.2.clone()).collect();
    let poset = Poset::from_closure(ids, above)?;
    let mut cells: Vec<Option<CompletionCell>> = vec![None; n];
    for (j, comp, id) in raw {
        let k = poset.index_of(&id)?;
        cells[k] = Some(CompletionCell {
            id,
            parts: j.iter().map(|&i| c.names[i].clone()).collect(),
            component: x.names(&comp),
            set: Some(comp),
        });
    }
    let completion = CompletionPoset {
        poset,
        cells: cells
            .into_iter()
            .map(|c| c.expect("every index filled"))
            .collect(),
    };
    completion.cw()?;
    Ok(completion)
}

/// The completion of the nerve of a cover by subcomplexes, as a regular CW
/// complex.
pub fn completion_cw(c: &ComplexCover) -> Result<RegularCWComplex> {
    completion_poset(&c.to_poset_cover())?.cw()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NerveVariant {
    GoodPoset,
    XZero,
    QuasiGood,
}

impl FromStr for NerveVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "good-poset" => Ok(NerveVariant::GoodPoset),
            "x-zero" => Ok(NerveVariant::XZero),
            "quasi-good" => Ok(NerveVariant::QuasiGood),
            other => Err(Error::Invalid(format!(
                "unknown nerve theorem variant `{other}` (expected good-poset, x-zero or quasi-good)"
            ))),
        }
    }
}

impl fmt::Display for NerveVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NerveVariant::GoodPoset => "good-poset",
            NerveVariant::XZero => "x-zero",
            NerveVariant::QuasiGood => "quasi-good",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveReport {
    pub variant: NerveVariant,
    pub status: Status,
    pub cover: CoverStatus,
    /// Why the hypotheses are not certified, if they are not.
    pub reason: Option<String>,
    /// Elements of the nerve object the base is compared with.
    pub target: Vec<String>,
    pub theorem_a: Option<TheoremAReport>,
    /// `H_*(X)` against `H_*` of the nerve object.
    pub homology: HomologyComparison,
}

/// Checks one of the nerve theorems on `c` by building the relation from
/// its proof and handing it to [`verify_theorem_a`].
pub fn verify_nerve_theorem(
    c: &PosetCover,
    variant: NerveVariant,
    oracle: &TrivialityOracle,
) -> Result<NerveReport> {
    let x = c.base();
    let classification = classify_cover(c, oracle);
    let cover = classification.status;
    let not_certified = |status: Status, reason: String, target: &Poset| NerveReport {
        variant,
        status,
        cover,
        reason: Some(reason),
        target: target.ids().to_vec(),
        theorem_a: None,
        homology: compare(x, target),
    };
    let x0 = (variant == NerveVariant::XZero).then(|| x_zero(c, oracle));
    let completion = match variant {
        NerveVariant::QuasiGood => Some(completion_poset(c)?),
        _ => None,
    };
    let target = match (&x0, &completion) {
        (Some(x0), _) => x0.poset.clone(),
        (_, Some(completion)) => completion.poset.clone(),
        _ => nerve_poset(c),
    };
    match (variant, cover) {
        (NerveVariant::GoodPoset, CoverStatus::Good)
        | (NerveVariant::QuasiGood, CoverStatus::Good | CoverStatus::QuasiGood)
        | (NerveVariant::XZero, _) => {}
        (_, CoverStatus::Unknown) => {
            return Ok(not_certified(
                Status::Unknown,
                format!(
                    "cover is not certified {}",
                    if variant == NerveVariant::GoodPoset {
                        "good"
                    } else {
                        "quasi-good"
                    }
                ),
                &target,
            ))
        }
        (NerveVariant::GoodPoset, other) => {
            return Ok(not_certified(
                Status::Refuted,
                format!("cover is {other}, not good"),
                &target,
            ))
        }
        (NerveVariant::QuasiGood, _) => {
            return Ok(not_certified(
                Status::Refuted,
                "some component of an intersection is not trivial".into(),
                &target,
            ))
        }
    }
    if let Some(x0) = &x0 {
        if !x0.undecided.is_empty() {
            return Ok(not_certified(
                Status::Unknown,
                format!(
                    "triviality of W_J undecided for {}",
                    x0.undecided.join(", ")
                ),
                &target,
            ));
        }
        for xi in 0..x.len() {
            let ix = x0.i_x(c, x.id(xi))?;
            let v = oracle.decide(&x0.poset, &ix)?;
            if !v.is_trivial() {
                let status = if v.value == Triviality::NonTrivial {
                    Status::Refuted
                } else {
                    Status::Unknown
                };
                return Ok(not_certified(
                    status,
                    format!("I_{} is {}", x.id(xi), v.value),
                    &target,
                ));
            }
        }
    }
    let relation = match (&x0, &completion) {
        (Some(x0), _) => membership_relation(x, &x0.poset, |k| x0.intersection(k).clone()),
        (_, Some(completion)) => {
            membership_relation(x, &completion.poset, |k| completion.component(k).clone())
        }
        _ => nerve_membership(c, &target),
    };
    let report = verify_theorem_a(&relation, oracle)?;
    Ok(NerveReport {
        variant,
        status: report.status,
        cover,
        reason: None,
        target: target.ids().to_vec(),
        homology: compare(x, &target),
        theorem_a: Some(report),
    })
}

/// The relation handed to [`verify_theorem_a`] by [`verify_nerve_theorem`]:
/// `x R t` iff `x` lies in the set indexed by `t`, into the opposite of the
/// nerve object.
pub fn nerve_relation(
    c: &PosetCover,
    variant: NerveVariant,
    oracle: &TrivialityOracle,
) -> Result<Relation> {
    let x = c.base();
    Ok(match variant {
        NerveVariant::GoodPoset => nerve_membership(c, &nerve_poset(c)),
        NerveVariant::XZero => {
            let x0 = x_zero(c, oracle);
            membership_relation(x, &x0.poset, |k| x0.intersection(k).clone())
        }
        NerveVariant::QuasiGood => {
            let completion = completion_poset(c)?;
            membership_relation(x, &completion.poset, |k| completion.component(k).clone())
        }
    })
}

fn nerve_membership(c: &PosetCover, np: &Poset) -> Relation {
    let w = c.intersections();
    let by_label: HashMap<String, &ElementSet> = w.iter().map(|(j, s)| (c.label(j), s)).collect();
    membership_relation(c.base(), np, |k| by_label[np.id(k)].clone())
}

/// `x R t` iff `x` lies in `members(t)`, as a relation into the opposite of
/// `target`.
fn membership_relation(
    x: &Poset,
    target: &Poset,
    members: impl Fn(usize) -> ElementSet,
) -> Relation {
    let mut pairs = Vec::new();
    for t in 0..target.len() {
        for xi in members(t).iter() {
            pairs.push((xi, t));
        }
    }
    Relation::from_indices(x.clone(), target.opposite(), pairs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionReport {
    pub status: Status,
    pub cover: CoverStatus,
    pub f_vector: Vec<usize>,
    pub theorem: NerveReport,
    /// `H_*(K)` against `H_*` of the completion.
    pub homology: HomologyComparison,
}

/// For a quasi-good cover by subcomplexes, `K` and the completion of the
/// nerve have the same homology; the underlying poset certificates are
/// included.
pub fn verify_corollary_completion(
    c: &ComplexCover,
    oracle: &TrivialityOracle,
) -> Result<CompletionReport> {
    let pc = c.to_poset_cover();
    let theorem = verify_nerve_theorem(&pc, NerveVariant::QuasiGood, oracle)?;
    let cw = completion_cw(c)?;
    let homology = compare(c.base(), &cw);
    if theorem.status == Status::Certified && !homology.equal {
        return Err(Error::Inconsistent(format!(
            "quasi-good cover certified but homology differs in degrees {:?}",
            homology.differing_degrees
        )));
    }
    Ok(CompletionReport {
        status: theorem.status,
        cover: theorem.cover,
        f_vector: cw.f_vector(),
        theorem,
        homology,
    })
}

/// DOT rendering of the 1-skeleton of a regular CW complex; parallel edges
/// are kept.
pub fn cw_to_dot(cw: &RegularCWComplex) -> String {
    let p = cw.face_poset();
    let mut out = String::from("graph completion {\n");
    for i in 0..p.len() {
        if cw.cell_dim(i) == 0 {
            out.push_str(&format!("  {:?};\n", p.id(i)));
        }
    }
    for i in 0..p.len() {
        if cw.cell_dim(i) == 1 {
            let ends: Vec<&str> = p.lower_covers(i).iter().map(|&v| p.id(v)).collect();
            if let [a, b] = ends.as_slice() {
                out.push_str(&format!("  {a:?} -- {b:?} [label={:?}];\n", p.id(i)));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of the 1-skeleton of a simplicial complex.
pub fn complex_to_dot(k: &SimplicialComplex) -> String {
    let mut out = String::from("graph complex {\n");
    for v in k.vertices() {
        out.push_str(&format!("  {v:?};\n"));
    }
    for e in k.faces(1) {
        let names = k.names_of(e);
        out.push_str(&format!("  {:?} -- {:?};\n", names[0], names[1]));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::reduction::Budget;

    fn oracle() -> TrivialityOracle {
        TrivialityOracle::new(Budget::DEFAULT)
    }

    fn example_cover() -> ComplexCover {
        let k = SimplicialComplex::simplex_boundary(["u", "v", "w"]).unwrap();
        let l = SimplicialComplex::from_facets([["u", "w"], ["v", "w"]]).unwrap();
        let t = SimplicialComplex::from_facets([["u", "v"]]).unwrap();
        ComplexCover::new(k, vec![("L".into(), l), ("T".into(), t)]).unwrap()
    }

    #[test]
    fn example_cover_nerve_and_completion() {
        let c = example_cover();
        let n = complex_nerve(&c);
        assert_eq!(n.f_vector(), [2, 1]);
        let pc = c.to_poset_cover();
        let classification = classify_cover(&pc, &oracle());
        assert_eq!(classification.status, CoverStatus::QuasiGood);
        let cw = completion_cw(&c).unwrap();
        assert_eq!(cw.f_vector(), [2, 2]);
        assert_eq!(homology(&cw, false).betti_numbers(), [1, 1]);
        let x0 = x_zero(&pc, &oracle());
        assert_eq!(x0.poset.ids(), ["L", "T"]);
    }

    #[test]
    fn example_cover_corollary() {
        let report = verify_corollary_completion(&example_cover(), &oracle()).unwrap();
        assert_eq!(report.status, Status::Certified);
        assert!(report.homology.equal);
        assert_eq!(report.homology.left.betti_numbers(), [1, 1]);
    }

    #[test]
    fn disjoint_parts_give_discrete_nerve() {
        let x = Poset::antichain(["a", "b", "c"]).unwrap();
        let c = PosetCover::from_named(x, &[("P", vec!["a"]), ("Q", vec!["b", "c"])]).unwrap();
        assert_eq!(nerve(&c).f_vector(), [2]);
        let completion = completion_poset(&c).unwrap();
        assert_eq!(completion.poset.len(), 3);
        assert_eq!(completion.poset.hasse_edge_count(), 0);
    }

    #[test]
    fn invalid_covers_name_the_part() {
        let x = Poset::chain(["a", "b"]).unwrap();
        match PosetCover::from_named(x.clone(), &[("P", vec!["b"])]) {
            Err(Error::InvalidCover { part, .. }) => assert_eq!(part, "P"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(PosetCover::from_named(x.clone(), &[("P", vec!["a"])]).is_err());
        let fixed =
            PosetCover::down_closed(x.clone(), vec![("P".into(), x.element_set(["b"]).unwrap())])
                .unwrap();
        assert_eq!(fixed.parts()[0].len(), 2);
    }

    #[test]
    fn good_cover_by_maximal_down_sets() {
        // X: two minima below two maxima (a circle); U_x for maximal x
        let x = Poset::from_relations(
            Vec::<&str>::new(),
            [("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")],
        )
        .unwrap();
        let c = PosetCover::from_named(
            x.clone(),
            &[("C", vec!["a", "b", "c"]), ("D", vec!["a", "b", "d"])],
        )
        .unwrap();
        // W_{C,D} = {a, b} is disconnected
        assert_eq!(classify_cover(&c, &oracle()).status, CoverStatus::QuasiGood);
        let report = verify_nerve_theorem(&c, NerveVariant::GoodPoset, &oracle()).unwrap();
        assert_eq!(report.status, Status::Refuted);
        let report = verify_nerve_theorem(&c, NerveVariant::QuasiGood, &oracle()).unwrap();
        assert_eq!(report.status, Status::Certified);
        assert!(report.homology.equal);
    }

    #[test]
    fn single_part_cover() {
        let x = Poset::chain(["a", "b"]).unwrap();
        let c = PosetCover::from_named(x, &[("P", vec!["a", "b"])]).unwrap();
        for variant in [
            NerveVariant::GoodPoset,
            NerveVariant::XZero,
            NerveVariant::QuasiGood,
        ] {
            let report = verify_nerve_theorem(&c, variant, &oracle()).unwrap();
            assert_eq!(report.status, Status::Certified, "{variant}");
            assert_eq!(report.target.len(), 1);
        }
    }

    #[test]
    fn x_zero_of_good_cover_is_the_nerve() {
        let k = SimplicialComplex::from_facets([["a", "b", "c"], ["b", "c", "d"]]).unwrap();
        let l = SimplicialComplex::from_facets([["a", "b", "c"]]).unwrap();
        let t = SimplicialComplex::from_facets([["b", "c", "d"]]).unwrap();
        let c = ComplexCover::new(k, vec![("L".into(), l), ("T".into(), t)])
            .unwrap()
            .to_poset_cover();
        assert_eq!(classify_cover(&c, &oracle()).status, CoverStatus::Good);
        let x0 = x_zero(&c, &oracle());
        assert_eq!(x0.poset, nerve_poset(&c));
        for x in c.base().ids() {
            let ix = x0.i_x(&c, x).unwrap();
            assert!(x0.poset.maximum_in(&ix).is_some());
        }
    }
}

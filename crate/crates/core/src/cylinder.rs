//! The cylinder `B(R)` of a relation and the local-to-global checks built on
//! it.
//!
//! Elements of the cylinder are named `X:<id>` and `Y:<id>`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{subposet_homology, HomologyComparison, HomologyProfile};
use crate::map::{PosetMap, Relation};
use crate::poset::{ElementSet, Poset};
use crate::reduction::{
    ReductionCertificate, ReductionStep, Triviality, TrivialityOracle, TrivialityVerdict,
};

pub const SOURCE_PREFIX: &str = "X:";
pub const TARGET_PREFIX: &str = "Y:";

pub fn source_id(x: &str) -> String {
    format!("{SOURCE_PREFIX}{x}")
}

pub fn target_id(y: &str) -> String {
    format!("{TARGET_PREFIX}{y}")
}

/// The cylinder poset together with the relation it was built from.
#[derive(Clone, Debug)]
pub struct CylinderPoset {
    poset: Poset,
    relation: Relation,
    source_index: Vec<usize>,
    target_index: Vec<usize>,
}

/// Builds `B(R)`: the orders of `X` and `Y` are kept and `x <= y` whenever
/// `y` lies in the closure of `R(F_x)`.
pub fn build_cylinder(r: &Relation) -> CylinderPoset {
    let (x, y) = (r.source(), r.target());
    let (n, m) = (x.len(), y.len());
    let mut ids = Vec::with_capacity(n + m);
    ids.extend(x.ids().iter().map(|s| source_id(s)));
    ids.extend(y.ids().iter().map(|s| target_id(s)));
    let mut above = Vec::with_capacity(n + m);
    for i in 0..n {
        let mut bits = FixedBitSet::with_capacity(n + m);
        for j in x.above(i).ones() {
            bits.insert(j);
        }
        let cross = y
            .closure(&r.image(&x.up_of(i)).expect("own set"))
            .expect("own set");
        for j in cross.iter() {
            bits.insert(n + j);
        }
        above.push(bits);
    }
    for j in 0..m {
        let mut bits = FixedBitSet::with_capacity(n + m);
        for k in y.above(j).ones() {
            bits.insert(n + k);
        }
        above.push(bits);
    }
    let poset = Poset::from_closure(ids, above).expect("prefixed ids are distinct");
    let source_index = x
        .ids()
        .iter()
        .map(|s| poset.index_of(&source_id(s)).expect("present"))
        .collect();
    let target_index = y
        .ids()
        .iter()
        .map(|s| poset.index_of(&target_id(s)).expect("present"))
        .collect();
    CylinderPoset {
        poset,
        relation: r.clone(),
        source_index,
        target_index,
    }
}

impl CylinderPoset {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn source(&self) -> &Poset {
        self.relation.source()
    }

    pub fn target(&self) -> &Poset {
        self.relation.target()
    }

    /// Cylinder index of source element `x`.
    pub fn source_index(&self, x: usize) -> usize {
        self.source_index[x]
    }

    pub fn target_index(&self, y: usize) -> usize {
        self.target_index[y]
    }

    /// The copy of `X` inside the cylinder.
    pub fn source_set(&self) -> ElementSet {
        self.poset
            .set_from_indices(self.source_index.iter().copied())
    }

    pub fn target_set(&self) -> ElementSet {
        self.poset
            .set_from_indices(self.target_index.iter().copied())
    }

    fn lift_source(&self, set: &ElementSet) -> ElementSet {
        self.poset
            .set_from_indices(set.iter().map(|i| self.source_index[i]))
    }

    fn lift_target(&self, set: &ElementSet) -> ElementSet {
        self.poset
            .set_from_indices(set.iter().map(|j| self.target_index[j]))
    }
}

/// `B(f)` for an order preserving map, with the certificate of up beat point
/// removals that retracts it onto `Y`: elements of `X` go in decreasing
/// linear extension order, each with unique cover `f(x)`.
pub fn mapping_cylinder(f: &PosetMap) -> Result<(CylinderPoset, ReductionCertificate)> {
    let c = build_cylinder(&Relation::from_map(f));
    let x = f.source();
    let mut steps = Vec::with_capacity(x.len());
    for i in x.linear_extension_indices().into_iter().rev() {
        steps.push(ReductionStep::UpBeat {
            element: source_id(x.id(i)),
            witness: target_id(f.target().id(f.image_of(i))),
        });
    }
    let cert = ReductionCertificate::new(steps);
    let end = cert.replay(&c.poset, &c.poset.full_set())?;
    if end != c.target_set() {
        return Err(Error::Inconsistent(
            "mapping cylinder retraction did not end at Y".into(),
        ));
    }
    Ok((c, cert))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Certified,
    Refuted,
    Unknown,
}

impl Status {
    fn aggregate<'a>(verdicts: impl IntoIterator<Item = &'a TrivialityVerdict>) -> Status {
        let mut status = Status::Certified;
        for v in verdicts {
            match v.value {
                Triviality::NonTrivial => return Status::Refuted,
                Triviality::Unknown => status = Status::Unknown,
                Triviality::Trivial => {}
            }
        }
        status
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
        })
    }
}

/// The set attached to one element by a hypothesis and its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisEntry {
    pub element: String,
    pub set: Vec<String>,
    pub verdict: TrivialityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub status: Status,
    pub entries: Vec<HypothesisEntry>,
}

impl HypothesisReport {
    /// First entry that is not certified trivial.
    pub fn first_failure(&self) -> Option<&HypothesisEntry> {
        self.entries.iter().find(|e| !e.verdict.is_trivial())
    }
}

/// Open hull of `R^{-1}(U_y)` in `X`.
pub fn hull_of_preimage(r: &Relation, y: usize) -> ElementSet {
    let x = r.source();
    x.open_hull(&r.preimage(&r.target().down_of(y)).expect("own set"))
        .expect("own set")
}

/// Closure of `R(F_x)` in `Y`.
pub fn closure_of_image(r: &Relation, x: usize) -> ElementSet {
    let y = r.target();
    y.closure(&r.image(&r.source().up_of(x)).expect("own set"))
        .expect("own set")
}

/// One verdict per `y`: is the open hull of `R^{-1}(U_y)` homotopically
/// trivial? Checks run in parallel; entries follow the order of `Y`.
pub fn check_hypothesis_x(r: &Relation, oracle: &TrivialityOracle) -> HypothesisReport {
    let x = r.source();
    let entries: Vec<HypothesisEntry> = (0..r.target().len())
        .into_par_iter()
        .map(|j| {
            let set = hull_of_preimage(r, j);
            HypothesisEntry {
                element: r.target().id(j).to_owned(),
                set: x.names(&set),
                verdict: oracle.decide(x, &set).expect("own set"),
            }
        })
        .collect();
    HypothesisReport {
        status: Status::aggregate(entries.iter().map(|e| &e.verdict)),
        entries,
    }
}

/// One verdict per `x`: is the closure of `R(F_x)` homotopically trivial?
pub fn check_hypothesis_y(r: &Relation, oracle: &TrivialityOracle) -> HypothesisReport {
    let y = r.target();
    let entries: Vec<HypothesisEntry> = (0..r.source().len())
        .into_par_iter()
        .map(|i| {
            let set = closure_of_image(r, i);
            HypothesisEntry {
                element: r.source().id(i).to_owned(),
                set: y.names(&set),
                verdict: oracle.decide(y, &set).expect("own set"),
            }
        })
        .collect();
    HypothesisReport {
        status: Status::aggregate(entries.iter().map(|e| &e.verdict)),
        entries,
    }
}

fn refusal(report: &HypothesisReport) -> Option<Error> {
    report.first_failure().map(|e| Error::NotCertified {
        element: e.element.clone(),
        reason: format!("verdict is {}", e.verdict.value),
    })
}

/// Removes `Y` from the cylinder as gamma points, in linear extension order.
pub fn gamma_collapse_to_x(
    c: &CylinderPoset,
    oracle: &TrivialityOracle,
) -> Result<ReductionCertificate> {
    let report = check_hypothesis_x(c.relation(), oracle);
    certificate_to_x(c, &report)
}

/// As [`gamma_collapse_to_x`], reusing an existing hypothesis report.
pub fn certificate_to_x(
    c: &CylinderPoset,
    report: &HypothesisReport,
) -> Result<ReductionCertificate> {
    if let Some(e) = refusal(report) {
        return Err(e);
    }
    let p = &c.poset;
    let y = c.target();
    let mut active = p.full_set().bits().clone();
    let mut steps = Vec::with_capacity(y.len());
    for j in y.linear_extension_indices() {
        let idx = c.target_index[j];
        let hull = c.lift_source(&hull_of_preimage(c.relation(), j));
        let mut punctured = p.below(idx).clone();
        punctured.intersect_with(&active);
        punctured.set(idx, false);
        if &punctured != hull.bits() {
            return Err(Error::Inconsistent(format!(
                "punctured down-set of `{}` is not the open hull of the preimage",
                p.id(idx)
            )));
        }
        let witness = report.entries[j]
            .verdict
            .certificate()
            .expect("trivial verdicts carry a certificate")
            .map_ids(&source_id);
        steps.push(ReductionStep::GammaDown {
            element: p.id(idx).to_owned(),
            witness,
        });
        active.set(idx, false);
    }
    Ok(ReductionCertificate::new(steps))
}

/// Removes `X` from the cylinder as gamma points, in reverse linear
/// extension order.
pub fn gamma_collapse_to_y(
    c: &CylinderPoset,
    oracle: &TrivialityOracle,
) -> Result<ReductionCertificate> {
    let report = check_hypothesis_y(c.relation(), oracle);
    certificate_to_y(c, &report)
}

pub fn certificate_to_y(
    c: &CylinderPoset,
    report: &HypothesisReport,
) -> Result<ReductionCertificate> {
    if let Some(e) = refusal(report) {
        return Err(e);
    }
    let p = &c.poset;
    let x = c.source();
    let mut active = p.full_set().bits().clone();
    let mut steps = Vec::with_capacity(x.len());
    for i in x.linear_extension_indices().into_iter().rev() {
        let idx = c.source_index[i];
        let closure = c.lift_target(&closure_of_image(c.relation(), i));
        let mut punctured = p.above(idx).clone();
        punctured.intersect_with(&active);
        punctured.set(idx, false);
        if &punctured != closure.bits() {
            return Err(Error::Inconsistent(format!(
                "punctured up-set of `{}` is not the closure of the image",
                p.id(idx)
            )));
        }
        let witness = report.entries[i]
            .verdict
            .certificate()
            .expect("trivial verdicts carry a certificate")
            .map_ids(&target_id);
        steps.push(ReductionStep::GammaUp {
            element: p.id(idx).to_owned(),
            witness,
        });
        active.set(idx, false);
    }
    Ok(ReductionCertificate::new(steps))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremAReport {
    pub status: Status,
    pub hypothesis_x: HypothesisReport,
    pub hypothesis_y: HypothesisReport,
    pub to_x: Option<ReductionCertificate>,
    pub to_y: Option<ReductionCertificate>,
    pub homology: HomologyComparison,
}

/// Checks both hypotheses; when both are certified, builds both gamma
/// certificates, replays them and requires `H_*(X) = H_*(Y)`.
pub fn verify_theorem_a(r: &Relation, oracle: &TrivialityOracle) -> Result<TheoremAReport> {
    let c = build_cylinder(r);
    let (hypothesis_x, hypothesis_y) = rayon::join(
        || check_hypothesis_x(r, oracle),
        || check_hypothesis_y(r, oracle),
    );
    let status = match (hypothesis_x.status, hypothesis_y.status) {
        (Status::Certified, Status::Certified) => Status::Certified,
        (Status::Refuted, _) | (_, Status::Refuted) => Status::Refuted,
        _ => Status::Unknown,
    };
    let homology = crate::homology::compare(r.source(), r.target());
    let (mut to_x, mut to_y) = (None, None);
    if status == Status::Certified {
        let cx = certificate_to_x(&c, &hypothesis_x)?;
        let cy = certificate_to_y(&c, &hypothesis_y)?;
        if cx.replay(c.poset(), &c.poset().full_set())? != c.source_set()
            || cy.replay(c.poset(), &c.poset().full_set())? != c.target_set()
        {
            return Err(Error::Inconsistent(
                "gamma certificates end in the wrong place".into(),
            ));
        }
        if !homology.equal {
            return Err(Error::Inconsistent(format!(
                "hypotheses certified but homology differs in degrees {:?}",
                homology.differing_degrees
            )));
        }
        to_x = Some(cx);
        to_y = Some(cy);
    }
    Ok(TheoremAReport {
        status,
        hypothesis_x,
        hypothesis_y,
        to_x,
        to_y,
        homology,
    })
}

/// Quillen's Theorem A for an order preserving map, through its graph.
pub fn verify_quillen_a(f: &PosetMap, oracle: &TrivialityOracle) -> Result<TheoremAReport> {
    verify_theorem_a(&Relation::from_map(f), oracle)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub element: String,
    pub set: Vec<String>,
    pub reduced: HomologyProfile,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyVersionReport {
    pub n: usize,
    pub status: Status,
    pub hypothesis_x: Vec<HomologyEntry>,
    pub hypothesis_y: Vec<HomologyEntry>,
    /// `H_i(X)` and `H_i(Y)` for `i <= n`, only when certified.
    pub agreement: Option<Vec<(usize, String, String)>>,
}

/// Homology form of the local-to-global statement: every hull and closure
/// is non-empty with vanishing reduced homology through degree `n`; then
/// `H_i(X) = H_i(Y)` for `i <= n` is checked. Empty sets never pass.
pub fn verify_homology_version(r: &Relation, n: usize) -> Result<HomologyVersionReport> {
    let entry = |p: &Poset, element: &str, set: ElementSet| {
        let reduced = subposet_homology(p, &set, true).expect("own set");
        HomologyEntry {
            element: element.to_owned(),
            set: p.names(&set),
            holds: reduced.vanishes_through(n),
            reduced,
        }
    };
    let hypothesis_x: Vec<HomologyEntry> = (0..r.target().len())
        .into_par_iter()
        .map(|j| entry(r.source(), r.target().id(j), hull_of_preimage(r, j)))
        .collect();
    let hypothesis_y: Vec<HomologyEntry> = (0..r.source().len())
        .into_par_iter()
        .map(|i| entry(r.target(), r.source().id(i), closure_of_image(r, i)))
        .collect();
    let certified = hypothesis_x.iter().chain(&hypothesis_y).all(|e| e.holds);
    let mut agreement = None;
    if certified {
        let hx = crate::homology::homology(r.source(), false);
        let hy = crate::homology::homology(r.target(), false);
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let (a, b) = (hx.group(i), hy.group(i));
            if a != b {
                return Err(Error::Inconsistent(format!(
                    "hypotheses hold through degree {n} but H_{i} differs: {a} vs {b}"
                )));
            }
            rows.push((i, a.to_string(), b.to_string()));
        }
        agreement = Some(rows);
    }
    Ok(HomologyVersionReport {
        n,
        status: if certified {
            Status::Certified
        } else {
            Status::Refuted
        },
        hypothesis_x,
        hypothesis_y,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::reduction::Budget;

    fn oracle() -> TrivialityOracle {
        TrivialityOracle::new(Budget::DEFAULT)
    }

    #[test]
    fn single_pair_is_a_two_chain() {
        let x = Poset::antichain(["x"]).unwrap();
        let y = Poset::antichain(["y"]).unwrap();
        let c = build_cylinder(&Relation::full(&x, &y));
        assert_eq!(c.poset(), &Poset::chain(["X:x", "Y:y"]).unwrap());
    }

    #[test]
    fn empty_relation_is_a_disjoint_union() {
        let x = Poset::chain(["a", "b"]).unwrap();
        let y = Poset::chain(["c", "d"]).unwrap();
        let c = build_cylinder(&Relation::empty(&x, &y));
        assert_eq!(c.poset().hasse_edge_count(), 2);
        assert_eq!(
            c.poset()
                .connected_components(&c.poset().full_set())
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn cross_order_matches_generated_closure() {
        // brute force: transitive closure of X, Y and the pairs
        let x = Poset::from_relations(Vec::<&str>::new(), [("a", "b"), ("c", "b")]).unwrap();
        let y = Poset::from_relations(Vec::<&str>::new(), [("p", "q"), ("p", "r")]).unwrap();
        let r = Relation::new(x.clone(), y.clone(), [("a", "p"), ("b", "r")]).unwrap();
        let c = build_cylinder(&r);
        let mut relations: Vec<(String, String)> = Vec::new();
        for (a, b) in x.hasse_edges() {
            relations.push((source_id(&a), source_id(&b)));
        }
        for (a, b) in y.hasse_edges() {
            relations.push((target_id(&a), target_id(&b)));
        }
        for (a, b) in r.pairs() {
            relations.push((source_id(&a), target_id(&b)));
        }
        let generated = Poset::from_relations(c.poset().ids().to_vec(), relations).unwrap();
        assert_eq!(c.poset(), &generated);
    }

    #[test]
    fn mapping_cylinder_retracts_to_target() {
        let x = Poset::chain(["a", "b"]).unwrap();
        let y = Poset::antichain(["s"]).unwrap();
        let f = PosetMap::new(x, y, [("a", "s"), ("b", "s")]).unwrap();
        let (c, cert) = mapping_cylinder(&f).unwrap();
        assert_eq!(cert.len(), 2);
        assert_eq!(
            cert.replay(c.poset(), &c.poset().full_set()).unwrap(),
            c.target_set()
        );
        // constant map: B(f) has a maximum
        assert_eq!(c.poset().maximal_in(&c.poset().full_set()).len(), 1);
    }

    #[test]
    fn full_relation_hypotheses() {
        let x = Poset::chain(["a", "b"]).unwrap();
        let y = Poset::antichain(["p", "q"]).unwrap();
        let r = Relation::full(&x, &y);
        let hx = check_hypothesis_x(&r, &oracle());
        assert_eq!(hx.status, Status::Certified);
        assert!(hx.entries.iter().all(|e| e.set == ["a", "b"]));
        // closure is all of Y, a 2-antichain
        assert_eq!(check_hypothesis_y(&r, &oracle()).status, Status::Refuted);
    }

    #[test]
    fn empty_relation_is_refused() {
        let x = Poset::chain(["a"]).unwrap();
        let y = Poset::chain(["p"]).unwrap();
        let r = Relation::empty(&x, &y);
        assert_eq!(check_hypothesis_x(&r, &oracle()).status, Status::Refuted);
        assert_eq!(check_hypothesis_y(&r, &oracle()).status, Status::Refuted);
        let c = build_cylinder(&r);
        assert!(matches!(
            gamma_collapse_to_y(&c, &oracle()),
            Err(Error::NotCertified { .. })
        ));
    }

    #[test]
    fn identity_relation_certifies() {
        let x = Poset::from_relations(Vec::<&str>::new(), [("a", "c"), ("b", "c"), ("b", "d")])
            .unwrap();
        let report = verify_theorem_a(&Relation::identity(&x), &oracle()).unwrap();
        assert_eq!(report.status, Status::Certified);
        assert_eq!(report.to_x.as_ref().unwrap().len(), 4);
        assert!(report.homology.equal);
    }

    #[test]
    fn point_against_two_points_is_refuted() {
        let x = Poset::antichain(["x"]).unwrap();
        let y = Poset::antichain(["p", "q"]).unwrap();
        let report = verify_theorem_a(&Relation::full(&x, &y), &oracle()).unwrap();
        assert_eq!(report.status, Status::Refuted);
        assert!(!report.homology.equal);
        assert!(report.to_x.is_none());
    }

    #[test]
    fn homology_version_in_degree_zero() {
        // X a circle, Y a point: the hull of U_y is all of
        // X (a circle), closure of R(F_x) is the point
        let hexagon = crate::complex::face_poset(
            &crate::complex::SimplicialComplex::cycle(&["a", "b", "c", "d", "e", "f"]).unwrap(),
        );
        let y = Poset::antichain(["pt"]).unwrap();
        let r = Relation::full(&hexagon, &y);
        let n0 = verify_homology_version(&r, 0).unwrap();
        assert_eq!(n0.status, Status::Certified);
        let rows = n0.agreement.unwrap();
        assert_eq!(rows, [(0, "Z".to_owned(), "Z".to_owned())]);
        assert_eq!(homology(&hexagon, false).betti(0), 1);
        let n1 = verify_homology_version(&r, 1).unwrap();
        assert_eq!(n1.status, Status::Refuted);
    }
}

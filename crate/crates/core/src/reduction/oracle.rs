//! The three-valued homotopy triviality oracle.
//!
//! A verdict of `Trivial` always carries a certificate that replays to one
//! point, and `NonTrivial` always carries evidence that can be recomputed
//! (emptiness, a component count or a nonzero reduced homology group).
//! Everything else is `Unknown`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::beat::dismantlable_within;
use super::certificate::{punctured_down_within, punctured_up_within, ReductionCertificate};
use super::weak::collapsible_within;
use super::{Budget, Direction};
use crate::error::{Error, Result};
use crate::homology::{subposet_homology, HomologyProfile};
use crate::poset::{ElementSet, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Triviality {
    Trivial,
    NonTrivial,
    Unknown,
}

impl fmt::Display for Triviality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Triviality::Trivial => "trivial",
            Triviality::NonTrivial => "non-trivial",
            Triviality::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Empty,
    /// One element from each component.
    Disconnected {
        representatives: Vec<String>,
    },
    NonzeroHomology {
        profile: HomologyProfile,
        degree: usize,
    },
    Dismantling {
        certificate: ReductionCertificate,
    },
    Collapse {
        certificate: ReductionCertificate,
    },
    NotDismantlable {
        core: Vec<String>,
    },
    /// No sequence of weak point deletions reaches a point.
    SearchExhausted {
        nodes: u64,
    },
    BudgetExhausted {
        nodes: u64,
    },
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialityVerdict {
    pub value: Triviality,
    pub evidence: Evidence,
}

impl TrivialityVerdict {
    pub fn is_trivial(&self) -> bool {
        self.value == Triviality::Trivial
    }

    /// The certificate reducing the set to one point, for `Trivial` verdicts.
    pub fn certificate(&self) -> Option<&ReductionCertificate> {
        match &self.evidence {
            Evidence::Dismantling { certificate } | Evidence::Collapse { certificate } => {
                Some(certificate)
            }
            _ => None,
        }
    }

    /// Re-derives the verdict's evidence for the subposet on `set` without
    /// any search.
    pub fn verify(&self, p: &Poset, set: &ElementSet) -> Result<()> {
        p.check(set)?;
        let fail = |reason: String| Err(Error::Inconsistent(reason));
        match (self.value, &self.evidence) {
            (Triviality::Trivial, Evidence::Dismantling { certificate }) => {
                if !certificate.steps.iter().all(|s| s.is_beat()) {
                    return fail("dismantling uses a non-beat step".into());
                }
                certificate.replay_to_point(p, set).map(|_| ())
            }
            (Triviality::Trivial, Evidence::Collapse { certificate }) => {
                if !certificate.steps.iter().all(|s| s.is_poset_collapse()) {
                    return fail("collapse uses a step that is not an elementary collapse".into());
                }
                certificate.replay_to_point(p, set).map(|_| ())
            }
            (Triviality::NonTrivial, Evidence::Empty) => {
                if set.is_empty() {
                    Ok(())
                } else {
                    fail("set claimed empty is not".into())
                }
            }
            (Triviality::NonTrivial, Evidence::Disconnected { representatives }) => {
                let components = p.connected_components(set)?;
                let mut hit = std::collections::HashSet::new();
                for r in representatives {
                    let i = p.index_of(r)?;
                    if let Some(c) = components.iter().position(|c| c.contains(i)) {
                        hit.insert(c);
                    }
                }
                if representatives.len() > 1 && hit.len() == representatives.len() {
                    Ok(())
                } else {
                    fail("representatives do not lie in distinct components".into())
                }
            }
            (Triviality::NonTrivial, Evidence::NonzeroHomology { profile, degree }) => {
                let recomputed = subposet_homology(p, set, true)?;
                if &recomputed != profile {
                    return fail(format!(
                        "homology recomputes to {recomputed}, not {profile}"
                    ));
                }
                if recomputed.group(*degree).is_zero() {
                    return fail(format!("reduced homology vanishes in degree {degree}"));
                }
                Ok(())
            }
            (Triviality::Unknown, _) => Ok(()),
            (value, evidence) => fail(format!("{value} verdict with evidence {evidence:?}")),
        }
    }
}

/// One step of the decision ladder. Returns `None` when it has nothing to
/// say, or a verdict (possibly `Unknown` with a report) otherwise.
pub trait TrivialityRung: Send + Sync {
    fn name(&self) -> &'static str;
    fn decide(&self, p: &Poset, set: &ElementSet, budget: Budget) -> Option<TrivialityVerdict>;
}

struct EmptyOrDisconnected;

impl TrivialityRung for EmptyOrDisconnected {
    fn name(&self) -> &'static str {
        "components"
    }

    fn decide(&self, p: &Poset, set: &ElementSet, _: Budget) -> Option<TrivialityVerdict> {
        if set.is_empty() {
            return Some(TrivialityVerdict {
                value: Triviality::NonTrivial,
                evidence: Evidence::Empty,
            });
        }
        let components = p.components_unchecked(set);
        (components.len() > 1).then(|| TrivialityVerdict {
            value: Triviality::NonTrivial,
            evidence: Evidence::Disconnected {
                representatives: components
                    .iter()
                    .map(|c| {
                        p.id(c.first().expect("components are non-empty"))
                            .to_owned()
                    })
                    .collect(),
            },
        })
    }
}

struct Dismantlable;

impl TrivialityRung for Dismantlable {
    fn name(&self) -> &'static str {
        "dismantlable"
    }

    fn decide(&self, p: &Poset, set: &ElementSet, _: Budget) -> Option<TrivialityVerdict> {
        let verdict = dismantlable_within(p, set);
        verdict.is_trivial().then_some(verdict)
    }
}

struct ReducedHomology;

impl TrivialityRung for ReducedHomology {
    fn name(&self) -> &'static str {
        "homology"
    }

    fn decide(&self, p: &Poset, set: &ElementSet, _: Budget) -> Option<TrivialityVerdict> {
        let profile = subposet_homology(p, set, true).expect("own set");
        if profile.empty {
            return Some(TrivialityVerdict {
                value: Triviality::NonTrivial,
                evidence: Evidence::Empty,
            });
        }
        profile.first_nonzero().map(|degree| TrivialityVerdict {
            value: Triviality::NonTrivial,
            evidence: Evidence::NonzeroHomology { profile, degree },
        })
    }
}

struct Collapsible;

impl TrivialityRung for Collapsible {
    fn name(&self) -> &'static str {
        "collapse"
    }

    fn decide(&self, p: &Poset, set: &ElementSet, budget: Budget) -> Option<TrivialityVerdict> {
        Some(collapsible_within(p, set, budget))
    }
}

/// Names accepted by [`rung`], in the default ladder order.
pub const RUNG_NAMES: [&str; 4] = ["components", "dismantlable", "homology", "collapse"];

pub fn rung(name: &str) -> Option<Arc<dyn TrivialityRung>> {
    let r: Arc<dyn TrivialityRung> = match name {
        "components" => Arc::new(EmptyOrDisconnected),
        "dismantlable" => Arc::new(Dismantlable),
        "homology" => Arc::new(ReducedHomology),
        "collapse" => Arc::new(Collapsible),
        _ => return None,
    };
    Some(r)
}

/// A ladder of rungs tried in order; the first definite answer wins.
#[derive(Clone)]
pub struct TrivialityOracle {
    rungs: Vec<Arc<dyn TrivialityRung>>,
    budget: Budget,
}

impl fmt::Debug for TrivialityOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrivialityOracle")
            .field("rungs", &self.rung_names())
            .field("budget", &self.budget)
            .finish()
    }
}

impl Default for TrivialityOracle {
    fn default() -> Self {
        TrivialityOracle::new(Budget::DEFAULT)
    }
}

impl TrivialityOracle {
    pub fn new(budget: Budget) -> Self {
        TrivialityOracle::with_rungs(&RUNG_NAMES, budget).expect("known rungs")
    }

    pub fn with_rungs<S: AsRef<str>>(names: &[S], budget: Budget) -> Result<Self> {
        let rungs = names
            .iter()
            .map(|n| {
                rung(n.as_ref())
                    .ok_or_else(|| Error::Invalid(format!("unknown oracle rung `{}`", n.as_ref())))
            })
            .collect::<Result<_>>()?;
        Ok(TrivialityOracle { rungs, budget })
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn rung_names(&self) -> Vec<&'static str> {
        self.rungs.iter().map(|r| r.name()).collect()
    }

    pub fn decide(&self, p: &Poset, set: &ElementSet) -> Result<TrivialityVerdict> {
        p.check(set)?;
        let mut last = None;
        for r in &self.rungs {
            match r.decide(p, set, self.budget) {
                Some(v) if v.value != Triviality::Unknown => {
                    log::trace!("rung {} decided {}", r.name(), v.value);
                    return Ok(v);
                }
                Some(v) => last = Some(v),
                None => {}
            }
        }
        Ok(last.unwrap_or(TrivialityVerdict {
            value: Triviality::Unknown,
            evidence: Evidence::Undecided,
        }))
    }

    pub fn decide_poset(&self, p: &Poset) -> TrivialityVerdict {
        self.decide(p, &p.full_set()).expect("own set")
    }
}

/// Default ladder: empty or disconnected, dismantlable, nonzero reduced
/// homology, collapsible within `budget`, otherwise `Unknown`.
pub fn triviality_oracle(p: &Poset, budget: Budget) -> TrivialityVerdict {
    TrivialityOracle::new(budget).decide_poset(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaPoint {
    pub element: String,
    pub direction: Direction,
    pub verdict: TrivialityVerdict,
}

/// An element whose punctured sets are not known to be trivial, but at least
/// one of them is undecided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndecidedPoint {
    pub element: String,
    pub down: TrivialityVerdict,
    pub up: TrivialityVerdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub points: Vec<GammaPoint>,
    pub undecided: Vec<UndecidedPoint>,
}

/// Gamma classification of `x` inside the subposet on `active`: down is
/// tried before up.
pub(crate) fn classify_gamma(
    p: &Poset,
    active: &fixedbitset::FixedBitSet,
    x: usize,
    oracle: &TrivialityOracle,
) -> std::result::Result<GammaPoint, UndecidedPoint> {
    let down_set = p.set_from_bits(punctured_down_within(p, active, x));
    let down = oracle.decide(p, &down_set).expect("own set");
    if down.is_trivial() {
        return Ok(GammaPoint {
            element: p.id(x).to_owned(),
            direction: Direction::Down,
            verdict: down,
        });
    }
    let up_set = p.set_from_bits(punctured_up_within(p, active, x));
    let up = oracle.decide(p, &up_set).expect("own set");
    if up.is_trivial() {
        return Ok(GammaPoint {
            element: p.id(x).to_owned(),
            direction: Direction::Up,
            verdict: up,
        });
    }
    Err(UndecidedPoint {
        element: p.id(x).to_owned(),
        down,
        up,
    })
}

/// Gamma points of `p`. Elements where neither punctured set is certified
/// trivial but one of them is `Unknown` are listed in `undecided`.
pub fn find_gamma_points(p: &Poset, oracle: &TrivialityOracle) -> GammaReport {
    let active = p.full_set();
    let mut report = GammaReport::default();
    for x in 0..p.len() {
        match classify_gamma(p, active.bits(), x, oracle) {
            Ok(point) => report.points.push(point),
            Err(u) => {
                if u.down.value == Triviality::Unknown || u.up.value == Triviality::Unknown {
                    report.undecided.push(u);
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{face_poset, SimplicialComplex};

    #[test]
    fn ladder_examples() {
        let with_max = Poset::from_relations(Vec::<&str>::new(), [("a", "m"), ("b", "m")]).unwrap();
        let v = triviality_oracle(&with_max, Budget::DEFAULT);
        assert_eq!(v.value, Triviality::Trivial);
        assert!(matches!(v.evidence, Evidence::Dismantling { .. }));
        v.verify(&with_max, &with_max.full_set()).unwrap();

        let hexagon =
            face_poset(&SimplicialComplex::cycle(&["a", "b", "c", "d", "e", "f"]).unwrap());
        let v = triviality_oracle(&hexagon, Budget::DEFAULT);
        assert_eq!(v.value, Triviality::NonTrivial);
        assert!(matches!(
            v.evidence,
            Evidence::NonzeroHomology { degree: 1, .. }
        ));
        v.verify(&hexagon, &hexagon.full_set()).unwrap();

        let two = Poset::antichain(["a", "b"]).unwrap();
        let v = triviality_oracle(&two, Budget::DEFAULT);
        assert_eq!(v.value, Triviality::NonTrivial);
        assert!(matches!(v.evidence, Evidence::Disconnected { .. }));
        v.verify(&two, &two.full_set()).unwrap();

        let v = triviality_oracle(&Poset::empty(), Budget::DEFAULT);
        assert_eq!(v.value, Triviality::NonTrivial);
    }

    #[test]
    fn forged_evidence_fails_verification() {
        let two = Poset::antichain(["a", "b"]).unwrap();
        let forged = TrivialityVerdict {
            value: Triviality::Trivial,
            evidence: Evidence::Dismantling {
                certificate: ReductionCertificate::default(),
            },
        };
        assert!(forged.verify(&two, &two.full_set()).is_err());
        let chain = Poset::chain(["a", "b"]).unwrap();
        let forged = TrivialityVerdict {
            value: Triviality::NonTrivial,
            evidence: Evidence::Disconnected {
                representatives: vec!["a".into(), "b".into()],
            },
        };
        assert!(forged.verify(&chain, &chain.full_set()).is_err());
    }

    #[test]
    fn gamma_points_of_a_disconnected_link() {
        // x sits above a 2-antichain: Û_x is disconnected, F̂_x is empty
        let p = Poset::from_relations(Vec::<&str>::new(), [("a", "x"), ("b", "x")]).unwrap();
        let report = find_gamma_points(&p, &TrivialityOracle::default());
        assert!(!report.points.iter().any(|g| g.element == "x"));
        assert!(report.undecided.is_empty());
        assert!(report
            .points
            .iter()
            .any(|g| g.element == "a" && g.direction == Direction::Up));
    }

    #[test]
    fn custom_ladder() {
        let two = Poset::antichain(["a", "b"]).unwrap();
        let oracle = TrivialityOracle::with_rungs(&["dismantlable"], Budget::DEFAULT).unwrap();
        let v = oracle.decide_poset(&two);
        assert_eq!(v.value, Triviality::Unknown);
        assert!(TrivialityOracle::with_rungs(&["nope"], Budget::DEFAULT).is_err());
    }
}

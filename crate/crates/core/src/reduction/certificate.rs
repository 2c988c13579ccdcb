use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::poset::{ElementSet, Poset};

/// One elementary reduction.
///
/// Beat steps name the unique cover (up) or unique lower cover (down).
/// Weak and gamma steps carry a nested certificate reducing the punctured
/// up-set (up) or down-set (down) of the element to a single point: for weak
/// steps it may only use beat steps, so the punctured set is contractible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionStep {
    UpBeat {
        element: String,
        witness: String,
    },
    DownBeat {
        element: String,
        witness: String,
    },
    UpWeak {
        element: String,
        witness: ReductionCertificate,
    },
    DownWeak {
        element: String,
        witness: ReductionCertificate,
    },
    GammaUp {
        element: String,
        witness: ReductionCertificate,
    },
    GammaDown {
        element: String,
        witness: ReductionCertificate,
    },
    SimplicialCollapse {
        face: Vec<String>,
        coface: Vec<String>,
    },
}

impl ReductionStep {
    pub fn kind(&self) -> &'static str {
        match self {
            ReductionStep::UpBeat { .. } => "up-beat",
            ReductionStep::DownBeat { .. } => "down-beat",
            ReductionStep::UpWeak { .. } => "up-weak",
            ReductionStep::DownWeak { .. } => "down-weak",
            ReductionStep::GammaUp { .. } => "gamma-up",
            ReductionStep::GammaDown { .. } => "gamma-down",
            ReductionStep::SimplicialCollapse { .. } => "simplicial-collapse",
        }
    }

    /// The removed poset element, for poset steps.
    pub fn element(&self) -> Option<&str> {
        match self {
            ReductionStep::UpBeat { element, .. }
            | ReductionStep::DownBeat { element, .. }
            | ReductionStep::UpWeak { element, .. }
            | ReductionStep::DownWeak { element, .. }
            | ReductionStep::GammaUp { element, .. }
            | ReductionStep::GammaDown { element, .. } => Some(element),
            ReductionStep::SimplicialCollapse { .. } => None,
        }
    }

    pub fn is_beat(&self) -> bool {
        matches!(
            self,
            ReductionStep::UpBeat { .. } | ReductionStep::DownBeat { .. }
        )
    }

    /// Whether the step is an elementary collapse of posets (beat or weak).
    pub fn is_poset_collapse(&self) -> bool {
        self.is_beat()
            || matches!(
                self,
                ReductionStep::UpWeak { .. } | ReductionStep::DownWeak { .. }
            )
    }

    pub fn nested(&self) -> Option<&ReductionCertificate> {
        match self {
            ReductionStep::UpWeak { witness, .. }
            | ReductionStep::DownWeak { witness, .. }
            | ReductionStep::GammaUp { witness, .. }
            | ReductionStep::GammaDown { witness, .. } => Some(witness),
            _ => None,
        }
    }

    fn map_ids(&self, f: &dyn Fn(&str) -> String) -> ReductionStep {
        match self {
            ReductionStep::UpBeat { element, witness } => ReductionStep::UpBeat {
                element: f(element),
                witness: f(witness),
            },
            ReductionStep::DownBeat { element, witness } => ReductionStep::DownBeat {
                element: f(element),
                witness: f(witness),
            },
            ReductionStep::UpWeak { element, witness } => ReductionStep::UpWeak {
                element: f(element),
                witness: witness.map_ids(f),
            },
            ReductionStep::DownWeak { element, witness } => ReductionStep::DownWeak {
                element: f(element),
                witness: witness.map_ids(f),
            },
            ReductionStep::GammaUp { element, witness } => ReductionStep::GammaUp {
                element: f(element),
                witness: witness.map_ids(f),
            },
            ReductionStep::GammaDown { element, witness } => ReductionStep::GammaDown {
                element: f(element),
                witness: witness.map_ids(f),
            },
            ReductionStep::SimplicialCollapse { face, coface } => {
                ReductionStep::SimplicialCollapse {
                    face: face.iter().map(|v| f(v)).collect(),
                    coface: coface.iter().map(|v| f(v)).collect(),
                }
            }
        }
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::UpBeat { element, witness } => {
                write!(f, "remove up beat point {element} (unique cover {witness})")
            }
            ReductionStep::DownBeat { element, witness } => {
                write!(
                    f,
                    "remove down beat point {element} (unique lower cover {witness})"
                )
            }
            ReductionStep::UpWeak { element, witness } => write!(
                f,
                "remove up weak point {element} (punctured up-set dismantles in {} steps)",
                witness.len()
            ),
            ReductionStep::DownWeak { element, witness } => write!(
                f,
                "remove down weak point {element} (punctured down-set dismantles in {} steps)",
                witness.len()
            ),
            ReductionStep::GammaUp { element, witness } => write!(
                f,
                "remove gamma point {element} (punctured up-set reduces to a point in {} steps)",
                witness.len()
            ),
            ReductionStep::GammaDown { element, witness } => write!(
                f,
                "remove gamma point {element} (punctured down-set reduces to a point in {} steps)",
                witness.len()
            ),
            ReductionStep::SimplicialCollapse { face, coface } => write!(
                f,
                "collapse free face [{}] into [{}]",
                face.join(" "),
                coface.join(" ")
            ),
        }
    }
}

/// An ordered list of elementary reductions that can be replayed and
/// re-verified independently of the search that produced it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub steps: Vec<ReductionStep>,
}

impl ReductionCertificate {
    pub fn new(steps: Vec<ReductionStep>) -> Self {
        ReductionCertificate { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn extend(&mut self, other: ReductionCertificate) {
        self.steps.extend(other.steps);
    }

    /// Renames every element and vertex mentioned, including nested witnesses.
    pub fn map_ids(&self, f: &dyn Fn(&str) -> String) -> ReductionCertificate {
        ReductionCertificate {
            steps: self.steps.iter().map(|s| s.map_ids(f)).collect(),
        }
    }

    /// Every certificate reachable through nested witnesses, this one first.
    pub fn all_nested(&self) -> Vec<&ReductionCertificate> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let cert = out[i];
            out.extend(cert.steps.iter().filter_map(ReductionStep::nested));
            i += 1;
        }
        out
    }

    /// Replays the poset steps starting from `start`, re-verifying every side
    /// condition, and returns the remaining set.
    pub fn replay(&self, p: &Poset, start: &ElementSet) -> Result<ElementSet> {
        Ok(self
            .trace(p, start)?
            .pop()
            .expect("trace includes the start"))
    }

    /// Like [`replay`](Self::replay) but returns every intermediate set,
    /// starting with `start`.
    pub fn trace(&self, p: &Poset, start: &ElementSet) -> Result<Vec<ElementSet>> {
        p.check(start)?;
        let mut states = vec![start.clone()];
        let mut active = start.bits().clone();
        for (n, step) in self.steps.iter().enumerate() {
            let element = step
                .element()
                .ok_or_else(|| Error::replay(n, "simplicial step in a poset certificate"))?;
            let x = p
                .index_of(element)
                .map_err(|e| Error::replay(n, e.to_string()))?;
            if !active.contains(x) {
                return Err(Error::replay(n, format!("`{element}` was already removed")));
            }
            check_poset_step(p, &active, x, step).map_err(|reason| Error::replay(n, reason))?;
            active.set(x, false);
            states.push(p.set_from_bits(active.clone()));
        }
        Ok(states)
    }

    /// Replay that additionally requires ending at exactly one element.
    pub fn replay_to_point(&self, p: &Poset, start: &ElementSet) -> Result<usize> {
        let end = self.replay(p, start)?;
        match (end.len(), end.first()) {
            (1, Some(x)) => Ok(x),
            (n, _) => Err(Error::replay(
                self.len(),
                format!("ends with {n} elements instead of one"),
            )),
        }
    }

    /// Replays simplicial collapse steps on `k`, re-checking that each face is
    /// free with the named coface as its unique proper coface.
    pub fn replay_complex(&self, k: &SimplicialComplex) -> Result<SimplicialComplex> {
        Ok(self
            .trace_complex(k)?
            .pop()
            .expect("trace includes the start"))
    }

    pub fn trace_complex(&self, k: &SimplicialComplex) -> Result<Vec<SimplicialComplex>> {
        let mut active: HashSet<Simplex> = k.all_faces().cloned().collect();
        let mut states = vec![k.clone()];
        for (n, step) in self.steps.iter().enumerate() {
            let ReductionStep::SimplicialCollapse { face, coface } = step else {
                return Err(Error::replay(n, "poset step in a simplicial certificate"));
            };
            let sigma = k
                .simplex_by_names(face)
                .map_err(|e| Error::replay(n, e.to_string()))?;
            let tau = k
                .simplex_by_names(coface)
                .map_err(|e| Error::replay(n, e.to_string()))?;
            if !active.contains(&sigma) || !active.contains(&tau) {
                return Err(Error::replay(n, "face or coface is not in the complex"));
            }
            if sigma.len() >= tau.len() || !sigma.is_face_of(&tau) {
                return Err(Error::replay(n, "face is not a proper face of the coface"));
            }
            let cofaces = active
                .iter()
                .filter(|s| s.len() > sigma.len() && sigma.is_face_of(s))
                .count();
            if cofaces != 1 {
                return Err(Error::replay(
                    n,
                    format!("face has {cofaces} proper cofaces, expected exactly one"),
                ));
            }
            active.remove(&sigma);
            active.remove(&tau);
            states.push(k.restrict(|s| active.contains(s)));
        }
        Ok(states)
    }
}

fn minimum_of(p: &Poset, set: &FixedBitSet) -> Option<usize> {
    set.ones().find(|&y| set.is_subset(p.above(y)))
}

fn maximum_of(p: &Poset, set: &FixedBitSet) -> Option<usize> {
    set.ones().find(|&y| set.is_subset(p.below(y)))
}

pub(crate) fn punctured_up_within(p: &Poset, active: &FixedBitSet, x: usize) -> FixedBitSet {
    let mut s = p.above(x).clone();
    s.intersect_with(active);
    s.set(x, false);
    s
}

pub(crate) fn punctured_down_within(p: &Poset, active: &FixedBitSet, x: usize) -> FixedBitSet {
    let mut s = p.below(x).clone();
    s.intersect_with(active);
    s.set(x, false);
    s
}

/// Unique cover of `x` within `active`, if `x` is an up beat point there.
pub(crate) fn up_beat_witness(p: &Poset, active: &FixedBitSet, x: usize) -> Option<usize> {
    minimum_of(p, &punctured_up_within(p, active, x))
}

/// Unique lower cover of `x` within `active`, if `x` is a down beat point there.
pub(crate) fn down_beat_witness(p: &Poset, active: &FixedBitSet, x: usize) -> Option<usize> {
    maximum_of(p, &punctured_down_within(p, active, x))
}

fn check_poset_step(
    p: &Poset,
    active: &FixedBitSet,
    x: usize,
    step: &ReductionStep,
) -> std::result::Result<(), String> {
    let nested_to_point = |punctured: FixedBitSet,
                           witness: &ReductionCertificate,
                           beat_only: bool|
     -> std::result::Result<(), String> {
        if beat_only && !witness.steps.iter().all(ReductionStep::is_beat) {
            return Err("weak point witness may only remove beat points".into());
        }
        let start = p.set_from_bits(punctured);
        witness
            .replay_to_point(p, &start)
            .map(|_| ())
            .map_err(|e| format!("witness for `{}` does not replay: {e}", p.id(x)))
    };
    match step {
        ReductionStep::UpBeat { witness, .. } => {
            let w = p.index_of(witness).map_err(|e| e.to_string())?;
            if up_beat_witness(p, active, x) == Some(w) {
                Ok(())
            } else {
                Err(format!(
                    "`{witness}` is not the minimum above `{}`",
                    p.id(x)
                ))
            }
        }
        ReductionStep::DownBeat { witness, .. } => {
            let w = p.index_of(witness).map_err(|e| e.to_string())?;
            if down_beat_witness(p, active, x) == Some(w) {
                Ok(())
            } else {
                Err(format!(
                    "`{witness}` is not the maximum below `{}`",
                    p.id(x)
                ))
            }
        }
        ReductionStep::UpWeak { witness, .. } => {
            nested_to_point(punctured_up_within(p, active, x), witness, true)
        }
        ReductionStep::DownWeak { witness, .. } => {
            nested_to_point(punctured_down_within(p, active, x), witness, true)
        }
        ReductionStep::GammaUp { witness, .. } => {
            nested_to_point(punctured_up_within(p, active, x), witness, false)
        }
        ReductionStep::GammaDown { witness, .. } => {
            nested_to_point(punctured_down_within(p, active, x), witness, false)
        }
        ReductionStep::SimplicialCollapse { .. } => {
            Err("simplicial step in a poset certificate".into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tampered_beat_witness_is_rejected() {
        let p = Poset::chain(["a", "b", "c"]).unwrap();
        let good = ReductionCertificate::new(vec![ReductionStep::UpBeat {
            element: "a".into(),
            witness: "b".into(),
        }]);
        assert_eq!(good.replay(&p, &p.full_set()).unwrap().len(), 2);
        let bad = ReductionCertificate::new(vec![ReductionStep::UpBeat {
            element: "a".into(),
            witness: "c".into(),
        }]);
        assert!(matches!(
            bad.replay(&p, &p.full_set()),
            Err(Error::Replay { step: 0, .. })
        ));
    }

    #[test]
    fn weak_witness_must_be_beat_only() {
        let p = Poset::chain(["a", "b", "c"]).unwrap();
        let cert = ReductionCertificate::new(vec![ReductionStep::DownWeak {
            element: "c".into(),
            witness: ReductionCertificate::new(vec![ReductionStep::GammaUp {
                element: "a".into(),
                witness: ReductionCertificate::default(),
            }]),
        }]);
        assert!(cert.replay(&p, &p.full_set()).is_err());
    }

    #[test]
    fn removing_twice_fails() {
        let p = Poset::chain(["a", "b"]).unwrap();
        let step = ReductionStep::UpBeat {
            element: "a".into(),
            witness: "b".into(),
        };
        let cert = ReductionCertificate::new(vec![step.clone(), step]);
        assert!(cert.replay(&p, &p.full_set()).is_err());
    }

    #[test]
    fn serialized_kinds() {
        let step = ReductionStep::GammaDown {
            element: "x".into(),
            witness: ReductionCertificate::default(),
        };
        let json = serde_json::to_value(&step).unwrap();
        assert_eq!(json["kind"], "gamma-down");
        let back: ReductionStep = serde_json::from_value(json).unwrap();
        assert_eq!(back, step);
    }

    #[test]
    fn simplicial_replay_checks_uniqueness() {
        let k = SimplicialComplex::from_facets([["a", "b", "c"]]).unwrap();
        let ok = ReductionCertificate::new(vec![ReductionStep::SimplicialCollapse {
            face: vec!["a".into(), "b".into()],
            coface: vec!["a".into(), "b".into(), "c".into()],
        }]);
        assert_eq!(ok.replay_complex(&k).unwrap().f_vector(), [3, 2]);
        let bad = ReductionCertificate::new(vec![ReductionStep::SimplicialCollapse {
            face: vec!["a".into()],
            coface: vec!["a".into(), "b".into()],
        }]);
        assert!(bad.replay_complex(&k).is_err());
    }
}

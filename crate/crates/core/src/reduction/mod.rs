//! Beat points, weak points, gamma points and collapses, with replayable
//! certificates and a three-valued triviality oracle.

mod beat;
mod certificate;
mod oracle;
mod simplicial;
mod weak;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{ElementSet, Poset};

pub use beat::{core, core_of, find_beat_points, is_dismantlable, BeatPoint};
pub use certificate::{ReductionCertificate, ReductionStep};
pub use oracle::{
    find_gamma_points, rung, triviality_oracle, Evidence, GammaPoint, GammaReport, Triviality,
    TrivialityOracle, TrivialityRung, TrivialityVerdict, UndecidedPoint, RUNG_NAMES,
};
pub use simplicial::{
    simplicial_collapse, simplicial_collapse_search, simplicial_collapse_step,
    translate_poset_certificate, FreePair,
};
pub use weak::{
    collapse_search, collapse_search_within, find_weak_points, is_collapsible, CollapseOutcome,
    WeakPoint,
};

/// Upper bound on search nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000);

    pub fn new(nodes: u64) -> Result<Self> {
        if nodes == 0 {
            Err(Error::ZeroBudget)
        } else {
            Ok(Budget(nodes))
        }
    }

    pub fn nodes(self) -> u64 {
        self.0
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

/// Which elementary removals [`reduce`] may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionKind {
    Beat,
    Weak,
    Gamma,
}

/// Greedy reduction of the subposet on `start`: scan in identifier order and
/// remove the first element that is a beat point, or failing that (when
/// allowed) a weak point, or a gamma point certified by `oracle`; repeat until
/// nothing is removable.
pub fn reduce(
    p: &Poset,
    start: &ElementSet,
    kind: ReductionKind,
    oracle: &TrivialityOracle,
) -> Result<(ElementSet, ReductionCertificate)> {
    p.check(start)?;
    let mut active = start.bits().clone();
    let mut steps = Vec::new();
    loop {
        let next = beat::first_beat_step(p, &active)
            .or_else(|| {
                (kind != ReductionKind::Beat)
                    .then(|| {
                        active
                            .ones()
                            .find_map(|x| weak::weak_step(p, &active, x).map(|s| (x, s)))
                    })
                    .flatten()
            })
            .or_else(|| {
                (kind == ReductionKind::Gamma)
                    .then(|| {
                        active
                            .ones()
                            .find_map(|x| gamma_step(p, &active, x, oracle))
                    })
                    .flatten()
            });
        let Some((x, step)) = next else {
            break;
        };
        active.set(x, false);
        steps.push(step);
    }
    Ok((p.set_from_bits(active), ReductionCertificate::new(steps)))
}

/// Gamma step removing `x` from `active`, if the oracle certifies one of its
/// punctured sets.
pub(crate) fn gamma_step(
    p: &Poset,
    active: &fixedbitset::FixedBitSet,
    x: usize,
    oracle: &TrivialityOracle,
) -> Option<(usize, ReductionStep)> {
    let point = oracle::classify_gamma(p, active, x, oracle).ok()?;
    let witness = point
        .verdict
        .certificate()
        .expect("trivial verdicts carry a certificate")
        .clone();
    let element = point.element;
    let step = match point.direction {
        Direction::Up => ReductionStep::GammaUp { element, witness },
        Direction::Down => ReductionStep::GammaDown { element, witness },
    };
    Some((x, step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{face_poset, SimplicialComplex};

    #[test]
    fn zero_budget_is_rejected() {
        assert!(matches!(Budget::new(0), Err(Error::ZeroBudget)));
    }

    #[test]
    fn greedy_reduction_of_a_disk() {
        let k = SimplicialComplex::from_facets([["a", "b", "c"], ["b", "c", "d"]]).unwrap();
        let p = face_poset(&k);
        let oracle = TrivialityOracle::default();
        for kind in [
            ReductionKind::Beat,
            ReductionKind::Weak,
            ReductionKind::Gamma,
        ] {
            let (rest, cert) = reduce(&p, &p.full_set(), kind, &oracle).unwrap();
            assert_eq!(cert.replay(&p, &p.full_set()).unwrap(), rest);
        }
        let (rest, _) = reduce(&p, &p.full_set(), ReductionKind::Weak, &oracle).unwrap();
        assert_eq!(rest.len(), 1);
    }
}

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::certificate::{down_beat_witness, up_beat_witness, ReductionCertificate, ReductionStep};
use super::oracle::{Evidence, Triviality, TrivialityVerdict};
use super::Direction;
use crate::error::Result;
use crate::poset::{ElementSet, Poset};

/// A beat point together with its unique (lower) cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeatPoint {
    pub element: String,
    pub direction: Direction,
    pub witness: String,
}

/// Every up and down beat point of `p`. An element can appear twice.
pub fn find_beat_points(p: &Poset) -> Vec<BeatPoint> {
    let active = p.full_set();
    let mut out = Vec::new();
    for x in 0..p.len() {
        if let Some(w) = up_beat_witness(p, active.bits(), x) {
            out.push(BeatPoint {
                element: p.id(x).to_owned(),
                direction: Direction::Up,
                witness: p.id(w).to_owned(),
            });
        }
        if let Some(w) = down_beat_witness(p, active.bits(), x) {
            out.push(BeatPoint {
                element: p.id(x).to_owned(),
                direction: Direction::Down,
                witness: p.id(w).to_owned(),
            });
        }
    }
    out
}

/// First beat point of the subposet on `active` in identifier order
/// (up before down), as a ready-made step.
pub(crate) fn first_beat_step(p: &Poset, active: &FixedBitSet) -> Option<(usize, ReductionStep)> {
    for x in active.ones() {
        if let Some(w) = up_beat_witness(p, active, x) {
            return Some((
                x,
                ReductionStep::UpBeat {
                    element: p.id(x).to_owned(),
                    witness: p.id(w).to_owned(),
                },
            ));
        }
        if let Some(w) = down_beat_witness(p, active, x) {
            return Some((
                x,
                ReductionStep::DownBeat {
                    element: p.id(x).to_owned(),
                    witness: p.id(w).to_owned(),
                },
            ));
        }
    }
    None
}

/// Greedy beat point removal inside `active`: scan in identifier order and
/// remove the first beat point found, until none is left.
pub(crate) fn dismantle(p: &Poset, active: &FixedBitSet) -> (FixedBitSet, ReductionCertificate) {
    let mut active = active.clone();
    let mut steps = Vec::new();
    while let Some((x, step)) = first_beat_step(p, &active) {
        active.set(x, false);
        steps.push(step);
    }
    (active, ReductionCertificate::new(steps))
}

/// The core of `p`: a subposet without beat points, with the certificate of
/// removals that reaches it.
pub fn core(p: &Poset) -> (Poset, ReductionCertificate) {
    let (rest, cert) = dismantle(p, p.full_set().bits());
    let core = p.induced_subposet(&p.set_from_bits(rest)).expect("own set");
    (core, cert)
}

/// Core of the subposet induced on `set`, as a set of `p`.
pub fn core_of(p: &Poset, set: &ElementSet) -> Result<(ElementSet, ReductionCertificate)> {
    p.check(set)?;
    let (rest, cert) = dismantle(p, set.bits());
    Ok((p.set_from_bits(rest), cert))
}

/// Trivial exactly when the core is one point; otherwise the verdict is
/// `Unknown` with the core as evidence (a larger core says nothing about
/// weaker notions of triviality).
pub fn is_dismantlable(p: &Poset) -> TrivialityVerdict {
    dismantlable_within(p, &p.full_set())
}

pub(crate) fn dismantlable_within(p: &Poset, set: &ElementSet) -> TrivialityVerdict {
    let (rest, cert) = dismantle(p, set.bits());
    if rest.count_ones(..) == 1 {
        TrivialityVerdict {
            value: Triviality::Trivial,
            evidence: Evidence::Dismantling { certificate: cert },
        }
    } else {
        TrivialityVerdict {
            value: Triviality::Unknown,
            evidence: Evidence::NotDismantlable {
                core: rest.ones().map(|i| p.id(i).to_owned()).collect(),
            },
        }
    }
}

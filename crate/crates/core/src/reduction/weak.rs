use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::beat::dismantle;
use super::certificate::{
    punctured_down_within, punctured_up_within, ReductionCertificate, ReductionStep,
};
use super::oracle::{Evidence, Triviality, TrivialityVerdict};
use super::{Budget, Direction};
use crate::error::{Error, Result};
use crate::poset::{ElementSet, Poset};

/// A weak point with the dismantling of its punctured set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakPoint {
    pub element: String,
    pub direction: Direction,
    pub witness: ReductionCertificate,
}

/// Weak step for `x` inside `active`, trying up before down. The punctured
/// set must be non-empty and dismantle to one point.
pub(crate) fn weak_step(p: &Poset, active: &FixedBitSet, x: usize) -> Option<ReductionStep> {
    let up = punctured_up_within(p, active, x);
    if let Some(witness) = dismantles_to_point(p, &up) {
        return Some(ReductionStep::UpWeak {
            element: p.id(x).to_owned(),
            witness,
        });
    }
    let down = punctured_down_within(p, active, x);
    dismantles_to_point(p, &down).map(|witness| ReductionStep::DownWeak {
        element: p.id(x).to_owned(),
        witness,
    })
}

fn dismantles_to_point(p: &Poset, set: &FixedBitSet) -> Option<ReductionCertificate> {
    if set.count_ones(..) == 0 {
        return None;
    }
    let (rest, cert) = dismantle(p, set);
    (rest.count_ones(..) == 1).then_some(cert)
}

/// Every up and down weak point of `p`.
///
/// Contractibility of the punctured sets is decided exactly by dismantling.
pub fn find_weak_points(p: &Poset) -> Vec<WeakPoint> {
    let active = p.full_set();
    let mut out = Vec::new();
    for x in 0..p.len() {
        let up = punctured_up_within(p, active.bits(), x);
        if let Some(witness) = dismantles_to_point(p, &up) {
            out.push(WeakPoint {
                element: p.id(x).to_owned(),
                direction: Direction::Up,
                witness,
            });
        }
        let down = punctured_down_within(p, active.bits(), x);
        if let Some(witness) = dismantles_to_point(p, &down) {
            out.push(WeakPoint {
                element: p.id(x).to_owned(),
                direction: Direction::Down,
                witness,
            });
        }
    }
    out
}

/// How a collapse search ended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CollapseOutcome {
    Found {
        certificate: ReductionCertificate,
    },
    /// Every sequence of weak point deletions was tried.
    Exhausted {
        nodes: u64,
    },
    BudgetExhausted {
        nodes: u64,
    },
}

impl CollapseOutcome {
    pub fn certificate(self) -> Option<ReductionCertificate> {
        match self {
            CollapseOutcome::Found { certificate } => Some(certificate),
            _ => None,
        }
    }
}

struct Search<'a> {
    p: &'a Poset,
    keep: Option<&'a FixedBitSet>,
    budget: u64,
    nodes: u64,
    failed: HashSet<FixedBitSet>,
    path: Vec<ReductionStep>,
}

impl Search<'_> {
    fn done(&self, active: &FixedBitSet) -> bool {
        match self.keep {
            Some(target) => active == target,
            None => active.count_ones(..) == 1,
        }
    }

    // Some(true) found, Some(false) dead end, None out of budget
    fn dfs(&mut self, active: &FixedBitSet) -> Option<bool> {
        if self.done(active) {
            return Some(true);
        }
        if self.failed.contains(active) {
            return Some(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let candidates: Vec<usize> = active
            .ones()
            .filter(|&x| self.keep.is_none_or(|t| !t.contains(x)))
            .collect();
        for x in candidates {
            let Some(step) = weak_step(self.p, active, x) else {
                continue;
            };
            let mut next = active.clone();
            next.set(x, false);
            self.path.push(step);
            match self.dfs(&next) {
                Some(true) => return Some(true),
                Some(false) => {
                    self.path.pop();
                }
                None => return None,
            }
        }
        self.failed.insert(active.clone());
        Some(false)
    }
}

/// Depth-first search for a sequence of weak point deletions from `start` to
/// `target` (a subset of `start`), or to any single point when `target` is
/// `None`. Visited dead ends are memoized by their element set.
pub fn collapse_search_within(
    p: &Poset,
    start: &ElementSet,
    target: Option<&ElementSet>,
    budget: Budget,
) -> Result<CollapseOutcome> {
    p.check(start)?;
    if let Some(t) = target {
        p.check(t)?;
        if !t.is_subset(start) {
            return Err(Error::Invalid(
                "collapse target is not a subposet of the start".into(),
            ));
        }
    }
    let mut search = Search {
        p,
        keep: target.map(ElementSet::bits),
        budget: budget.nodes(),
        nodes: 0,
        failed: HashSet::new(),
        path: Vec::new(),
    };
    Ok(match search.dfs(start.bits()) {
        Some(true) => CollapseOutcome::Found {
            certificate: ReductionCertificate::new(search.path),
        },
        Some(false) => CollapseOutcome::Exhausted {
            nodes: search.nodes,
        },
        None => CollapseOutcome::BudgetExhausted {
            nodes: search.nodes,
        },
    })
}

/// Searches for a collapse of `p` onto the subposet `target`, matched by
/// element ids.
pub fn collapse_search(
    p: &Poset,
    target: &Poset,
    budget: Budget,
) -> Result<Option<ReductionCertificate>> {
    let set = p.element_set(target.ids())?;
    for x in 0..target.len() {
        for y in 0..target.len() {
            if target.leq(x, y) != p.leq(p.index_of(target.id(x))?, p.index_of(target.id(y))?) {
                return Err(Error::Invalid(format!(
                    "target is not an induced subposet: `{}` and `{}` are ordered differently",
                    target.id(x),
                    target.id(y)
                )));
            }
        }
    }
    Ok(collapse_search_within(p, &p.full_set(), Some(&set), budget)?.certificate())
}

/// Trivial with a collapse certificate when `p` collapses to a point within
/// the budget, otherwise `Unknown` with the search report. Collapsibility
/// failing is not a proof of non-triviality.
pub fn is_collapsible(p: &Poset, budget: Budget) -> TrivialityVerdict {
    collapsible_within(p, &p.full_set(), budget)
}

pub(crate) fn collapsible_within(p: &Poset, set: &ElementSet, budget: Budget) -> TrivialityVerdict {
    if set.is_empty() {
        return TrivialityVerdict {
            value: Triviality::NonTrivial,
            evidence: Evidence::Empty,
        };
    }
    match collapse_search_within(p, set, None, budget).expect("own set") {
        CollapseOutcome::Found { certificate } => TrivialityVerdict {
            value: Triviality::Trivial,
            evidence: Evidence::Collapse { certificate },
        },
        CollapseOutcome::Exhausted { nodes } => TrivialityVerdict {
            value: Triviality::Unknown,
            evidence: Evidence::SearchExhausted { nodes },
        },
        CollapseOutcome::BudgetExhausted { nodes } => TrivialityVerdict {
            value: Triviality::Unknown,
            evidence: Evidence::BudgetExhausted { nodes },
        },
    }
}

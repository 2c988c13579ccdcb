use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::certificate::{ReductionCertificate, ReductionStep};
use super::weak::CollapseOutcome;
use super::Budget;
use crate::complex::{order_complex_of, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::poset::{ElementSet, Poset};

/// A free face together with its unique proper coface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreePair {
    pub face: Vec<String>,
    pub coface: Vec<String>,
}

struct Faces<'a> {
    k: &'a SimplicialComplex,
    all: Vec<&'a Simplex>,
    position: HashMap<&'a Simplex, usize>,
    // codimension one cofaces of each face
    up: Vec<Vec<usize>>,
}

impl<'a> Faces<'a> {
    fn new(k: &'a SimplicialComplex) -> Self {
        let all: Vec<&Simplex> = k.all_faces().collect();
        let position: HashMap<&Simplex, usize> =
            all.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut up = vec![Vec::new(); all.len()];
        for (i, s) in all.iter().enumerate() {
            if s.len() > 1 {
                for f in s.boundary_faces() {
                    up[position[&f]].push(i);
                }
            }
        }
        Faces {
            k,
            all,
            position,
            up,
        }
    }

    fn full(&self) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.all.len());
        bits.insert_range(..);
        bits
    }

    fn free_pairs(&self, active: &FixedBitSet, keep: Option<&FixedBitSet>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in active.ones() {
            if keep.is_some_and(|t| t.contains(s)) {
                continue;
            }
            let mut cofaces = self.up[s].iter().filter(|&&t| active.contains(t));
            let (Some(&t), None) = (cofaces.next(), cofaces.next()) else {
                continue;
            };
            if !self.up[t].iter().any(|&r| active.contains(r)) {
                out.push((s, t));
            }
        }
        out
    }

    fn step(&self, s: usize, t: usize) -> ReductionStep {
        ReductionStep::SimplicialCollapse {
            face: self.k.names_of(self.all[s]),
            coface: self.k.names_of(self.all[t]),
        }
    }
}

/// Every free face of `k` with its unique proper coface.
pub fn simplicial_collapse_step(k: &SimplicialComplex) -> Vec<FreePair> {
    let faces = Faces::new(k);
    faces
        .free_pairs(&faces.full(), None)
        .into_iter()
        .map(|(s, t)| FreePair {
            face: k.names_of(faces.all[s]),
            coface: k.names_of(faces.all[t]),
        })
        .collect()
}

/// Searches for a sequence of elementary collapses from `k` to `target`
/// (matched by vertex names), or to a single vertex when `target` is `None`.
/// Returns `None` when the search fails or runs out of budget.
pub fn simplicial_collapse(
    k: &SimplicialComplex,
    target: Option<&SimplicialComplex>,
    budget: Budget,
) -> Result<Option<ReductionCertificate>> {
    Ok(match simplicial_collapse_search(k, target, budget)? {
        CollapseOutcome::Found { certificate } => Some(certificate),
        _ => None,
    })
}

/// Like [`simplicial_collapse`], telling an exhausted search apart from one
/// that ran out of budget.
pub fn simplicial_collapse_search(
    k: &SimplicialComplex,
    target: Option<&SimplicialComplex>,
    budget: Budget,
) -> Result<CollapseOutcome> {
    let faces = Faces::new(k);
    let keep = match target {
        Some(t) => {
            let mut bits = FixedBitSet::with_capacity(faces.all.len());
            for s in t.all_faces() {
                let mine = k.simplex_by_names(&t.names_of(s)).ok();
                let Some(&i) = mine.and_then(|m| faces.position.get(&m)) else {
                    return Err(Error::Invalid(format!(
                        "collapse target is not a subcomplex: missing {}",
                        t.label_of(s)
                    )));
                };
                bits.insert(i);
            }
            Some(bits)
        }
        None => None,
    };
    let done = |active: &FixedBitSet| match &keep {
        Some(t) => active == t,
        None => active.count_ones(..) == 1,
    };

    struct Frame {
        active: FixedBitSet,
        pairs: Vec<(usize, usize)>,
        next: usize,
    }
    let start = faces.full();
    if done(&start) {
        return Ok(CollapseOutcome::Found {
            certificate: ReductionCertificate::default(),
        });
    }
    let mut failed: HashSet<FixedBitSet> = HashSet::new();
    let mut nodes = 1u64;
    let mut path: Vec<ReductionStep> = Vec::new();
    let pairs = faces.free_pairs(&start, keep.as_ref());
    let mut stack = vec![Frame {
        active: start,
        pairs,
        next: 0,
    }];
    while let Some(frame) = stack.last_mut() {
        if frame.next == frame.pairs.len() {
            let frame = stack.pop().expect("non-empty");
            failed.insert(frame.active);
            path.pop();
            continue;
        }
        let (s, t) = frame.pairs[frame.next];
        frame.next += 1;
        let mut active = frame.active.clone();
        active.set(s, false);
        active.set(t, false);
        path.push(faces.step(s, t));
        if done(&active) {
            return Ok(CollapseOutcome::Found {
                certificate: ReductionCertificate::new(path),
            });
        }
        if failed.contains(&active) {
            path.pop();
            continue;
        }
        nodes += 1;
        if nodes > budget.nodes() {
            return Ok(CollapseOutcome::BudgetExhausted { nodes });
        }
        let pairs = faces.free_pairs(&active, keep.as_ref());
        stack.push(Frame {
            active,
            pairs,
            next: 0,
        });
    }
    Ok(CollapseOutcome::Exhausted { nodes })
}

/// Turns a certificate of elementary poset collapses starting at `start` into
/// simplicial collapses of the order complexes: each deletion of a weak point
/// `x` from `A` becomes a collapse of `K(A)` onto `K(A - x)`.
pub fn translate_poset_certificate(
    p: &Poset,
    start: &ElementSet,
    cert: &ReductionCertificate,
    budget: Budget,
) -> Result<Option<ReductionCertificate>> {
    let states = cert.trace(p, start)?;
    let mut out = ReductionCertificate::default();
    for (n, (step, pair)) in cert.steps.iter().zip(states.windows(2)).enumerate() {
        if !step.is_poset_collapse() {
            return Err(Error::replay(
                n,
                format!("{} steps have no simplicial counterpart", step.kind()),
            ));
        }
        let before = order_complex_of(p, &pair[0])?;
        let after = order_complex_of(p, &pair[1])?;
        match simplicial_collapse(&before, Some(&after), budget)? {
            Some(c) => out.extend(c),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::order_complex;
    use crate::reduction::core;

    #[test]
    fn full_triangle_collapses_to_a_vertex() {
        let k = SimplicialComplex::simplex(["a", "b", "c"]).unwrap();
        let cert = simplicial_collapse(&k, None, Budget::DEFAULT)
            .unwrap()
            .unwrap();
        assert_eq!(cert.replay_complex(&k).unwrap().f_vector(), [1]);
    }

    #[test]
    fn triangle_boundary_has_no_free_faces() {
        let k = SimplicialComplex::simplex_boundary(["a", "b", "c"]).unwrap();
        assert!(simplicial_collapse_step(&k).is_empty());
        assert!(matches!(
            simplicial_collapse_search(&k, None, Budget::DEFAULT).unwrap(),
            CollapseOutcome::Exhausted { .. }
        ));
    }

    #[test]
    fn collapse_onto_edge() {
        let k = SimplicialComplex::simplex(["a", "b", "c"]).unwrap();
        let e = SimplicialComplex::simplex(["a", "b"]).unwrap();
        let cert = simplicial_collapse(&k, Some(&e), Budget::DEFAULT)
            .unwrap()
            .unwrap();
        assert_eq!(
            cert.replay_complex(&k).unwrap().canonical_form(),
            e.canonical_form()
        );
        let elsewhere = SimplicialComplex::simplex(["a", "z"]).unwrap();
        assert!(simplicial_collapse(&k, Some(&elsewhere), Budget::DEFAULT).is_err());
    }

    #[test]
    fn dismantling_translates() {
        let p = Poset::from_relations(
            Vec::<&str>::new(),
            [("a", "c"), ("b", "c"), ("b", "d"), ("c", "e"), ("d", "e")],
        )
        .unwrap();
        let (_, cert) = core(&p);
        let simplicial = translate_poset_certificate(&p, &p.full_set(), &cert, Budget::DEFAULT)
            .unwrap()
            .unwrap();
        let end = simplicial.replay_complex(&order_complex(&p)).unwrap();
        assert_eq!(end.f_vector(), [1]);
    }
}

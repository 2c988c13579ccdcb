//! Seeded generators for posets, complexes, maps, relations and covers.
//! Every generator draws from one ChaCha stream, so a seed fixes the whole
//! sequence of instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{face_poset, SimplicialComplex};
use crate::cylinder::{verify_theorem_a, Status};
use crate::map::{PosetMap, Relation};
use crate::nerve::{classify_cover, ComplexCover, CoverStatus, PosetCover};
use crate::poset::Poset;
use crate::reduction::TrivialityOracle;

const ATTEMPTS: usize = 1_000;

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A random order on `n` elements named `{prefix}0..`: a hidden
    /// shuffle fixes a linear order and each compatible pair is related with
    /// probability `density`.
    pub fn poset(&mut self, prefix: &str, n: usize, density: f64) -> Poset {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        let mut relations = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.rng.gen_bool(density) {
                    relations.push((names[order[a]].clone(), names[order[b]].clone()));
                }
            }
        }
        Poset::from_relations(names.clone(), relations).expect("acyclic by construction")
    }

    /// A poset with between `min` and `max` elements and a random density.
    pub fn poset_up_to(&mut self, prefix: &str, min: usize, max: usize) -> Poset {
        let n = self.rng.gen_range(min..=max);
        let density = self.rng.gen_range(0.15..0.6);
        self.poset(prefix, n, density)
    }

    /// A complex on `vertices` vertices with `facets` random faces of
    /// dimension at most `max_dim`; every vertex is used.
    pub fn complex(&mut self, vertices: usize, facets: usize, max_dim: usize) -> SimplicialComplex {
        let names: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
        let mut all: Vec<Vec<String>> = names.iter().map(|v| vec![v.clone()]).collect();
        for _ in 0..facets {
            let size = self.rng.gen_range(2..=(max_dim + 1).min(vertices).max(2));
            let face: Vec<String> = names
                .choose_multiple(&mut self.rng, size.min(vertices))
                .cloned()
                .collect();
            all.push(face);
        }
        SimplicialComplex::from_facets(all).expect("valid names")
    }

    /// A random order preserving map, built along a linear extension of the
    /// source: each image is drawn from the common upper bounds of the images
    /// of the lower covers. Falls back to a constant map.
    pub fn monotone_map(&mut self, source: &Poset, target: &Poset) -> PosetMap {
        assert!(
            !target.is_empty() || source.is_empty(),
            "no maps into the empty poset"
        );
        'attempt: for _ in 0..ATTEMPTS {
            let mut images = vec![usize::MAX; source.len()];
            for x in source.linear_extension_indices() {
                let mut candidates = target.full_set();
                for &z in source.lower_covers(x) {
                    candidates = candidates.intersection(&target.up_of(images[z]));
                }
                let options: Vec<usize> = candidates.iter().collect();
                match options.choose(&mut self.rng) {
                    Some(&y) => images[x] = y,
                    None => continue 'attempt,
                }
            }
            let pairs = (0..source.len()).map(|x| (source.id(x), target.id(images[x])));
            return PosetMap::new(source.clone(), target.clone(), pairs).expect("monotone");
        }
        let y = target.id(0);
        PosetMap::new(
            source.clone(),
            target.clone(),
            source.ids().iter().map(|x| (x.as_str(), y)),
        )
        .expect("constant maps are monotone")
    }

    /// A relation satisfying both hypotheses of the relation version of
    /// Quillen's theorem, drawn from several families and kept only once
    /// [`verify_theorem_a`] certifies it.
    pub fn certified_relation(&mut self, max: usize, oracle: &TrivialityOracle) -> Relation {
        for _ in 0..ATTEMPTS {
            let candidate = match self.rng.gen_range(0..4) {
                0 => {
                    let x = self.poset_up_to("x", 1, max);
                    let y = self.poset_up_to("y", 1, max);
                    let f = self.monotone_map(&x, &y);
                    Relation::from_map(&f)
                }
                1 => {
                    // x R y iff x <= g(y) for a random surjection-ish g
                    let x = self.poset_up_to("x", 1, max);
                    let y = self.poset_up_to("y", 1, max);
                    let g = self.monotone_map(&y, &x);
                    let pairs = (0..x.len()).flat_map(|a| {
                        let g = &g;
                        let x = &x;
                        (0..g.source().len())
                            .filter_map(move |b| x.leq(a, g.image_of(b)).then_some((a, b)))
                    });
                    let pairs: Vec<_> = pairs.collect();
                    Relation::from_indices(x.clone(), y, pairs)
                }
                2 => {
                    let x = self.poset_up_to("x", 1, max);
                    let pairs: Vec<_> = (0..x.len())
                        .flat_map(|a| (0..x.len()).map(move |b| (a, b)))
                        .filter(|&(a, b)| x.leq(a, b))
                        .collect();
                    let y = x
                        .renamed(|s| format!("y{}", &s[1..]))
                        .expect("renaming keeps ids distinct");
                    Relation::from_indices(x, y, pairs)
                }
                _ => {
                    let x = self.poset_up_to("x", 1, max);
                    let y = self.poset_up_to("y", 1, max);
                    let p = self.rng.gen_range(0.2..0.8);
                    let mut pairs = Vec::new();
                    for a in 0..x.len() {
                        for b in 0..y.len() {
                            if self.rng.gen_bool(p) {
                                pairs.push((a, b));
                            }
                        }
                    }
                    Relation::from_indices(x, y, pairs)
                }
            };
            if matches!(verify_theorem_a(&candidate, oracle), Ok(r) if r.status == Status::Certified)
            {
                return candidate;
            }
        }
        let x = self.poset_up_to("x", 1, max);
        Relation::identity(&x)
    }

    /// A good cover of a poset with at most `max` elements: either the
    /// facet cover of a face poset, whose intersections are principal, or
    /// the maximal down-sets of a random poset, kept when classified good.
    pub fn good_cover(&mut self, max: usize, oracle: &TrivialityOracle) -> PosetCover {
        loop {
            let candidate = if self.rng.gen_bool(0.5) {
                let k = self.small_complex(max);
                facet_cover(&k)
            } else {
                let x = self.poset_up_to("e", 1, max);
                principal_cover(&x, &self.extra_parts(&x))
            };
            if classify_cover(&candidate, oracle).status == CoverStatus::Good {
                return candidate;
            }
        }
    }

    /// A quasi-good cover of a poset with at most `max` elements: a graph
    /// covered by forests (every component of every intersection is a
    /// tree), or a random cover by principal down-sets kept when classified
    /// quasi-good. Good covers are avoided where possible.
    pub fn quasi_good_cover(&mut self, max: usize, oracle: &TrivialityOracle) -> PosetCover {
        let mut fallback = None;
        for _ in 0..ATTEMPTS {
            let candidate = if self.rng.gen_bool(0.6) {
                self.forest_cover(max).to_poset_cover()
            } else {
                let x = self.poset_up_to("e", 2, max);
                principal_cover(&x, &self.extra_parts(&x))
            };
            match classify_cover(&candidate, oracle).status {
                CoverStatus::QuasiGood => return candidate,
                CoverStatus::Good => fallback = Some(candidate),
                _ => {}
            }
        }
        fallback.expect("forest covers are quasi-good")
    }

    /// A random graph whose face poset has at most `max` elements, covered by
    /// forests.
    pub fn forest_cover(&mut self, max: usize) -> ComplexCover {
        let vertices = self.rng.gen_range(2..=(max / 2).max(2));
        let edges = self.rng.gen_range(1..=(max - vertices).max(1));
        let names: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
        let mut all_edges: Vec<(usize, usize)> = (0..vertices)
            .flat_map(|a| (a + 1..vertices).map(move |b| (a, b)))
            .collect();
        all_edges.shuffle(&mut self.rng);
        all_edges.truncate(edges);
        // greedy split of the edges into forests, one union-find per part
        let mut forests: Vec<(Vec<usize>, Vec<(usize, usize)>)> = Vec::new();
        for &(a, b) in &all_edges {
            let start = self.rng.gen_range(0..=forests.len());
            let mut placed = false;
            let count = forests.len();
            for k in (0..count).map(|k| (k + start) % count) {
                let (parent, part) = &mut forests[k];
                let (ra, rb) = (root(parent, a), root(parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    part.push((a, b));
                    placed = true;
                    break;
                }
            }
            if !placed {
                let mut parent: Vec<usize> = (0..vertices).collect();
                parent[a] = b;
                forests.push((parent, vec![(a, b)]));
            }
        }
        let mut facets: Vec<Vec<&str>> = names.iter().map(|v| vec![v.as_str()]).collect();
        facets.extend(
            all_edges
                .iter()
                .map(|&(a, b)| vec![names[a].as_str(), names[b].as_str()]),
        );
        let base = SimplicialComplex::from_facets(facets).expect("valid names");
        let mut parts: Vec<(String, Vec<Vec<&str>>)> = forests
            .iter()
            .enumerate()
            .map(|(k, (_, es))| {
                (
                    format!("F{k}"),
                    es.iter()
                        .map(|&(a, b)| vec![names[a].as_str(), names[b].as_str()])
                        .collect(),
                )
            })
            .collect();
        if parts.is_empty() {
            parts.push(("F0".into(), Vec::new()));
        }
        // isolated vertices go to a random forest
        for v in 0..vertices {
            let used = all_edges.iter().any(|&(a, b)| a == v || b == v);
            if !used {
                let k = self.rng.gen_range(0..parts.len());
                parts[k].1.push(vec![names[v].as_str()]);
            }
        }
        let parts = parts
            .into_iter()
            .map(|(n, fs)| (n, SimplicialComplex::from_facets(fs).expect("valid names")))
            .collect();
        ComplexCover::new(base, parts).expect("forests cover the graph")
    }

    /// A complex with face poset of at most `max` elements.
    fn small_complex(&mut self, max: usize) -> SimplicialComplex {
        loop {
            let vertices = self.rng.gen_range(1..=4);
            let facets = self.rng.gen_range(0..=3);
            let k = self.complex(vertices, facets, 2);
            if k.num_simplices() <= max {
                return k;
            }
        }
    }

    /// A few random unions of principal down-sets, added as extra parts.
    fn extra_parts(&mut self, x: &Poset) -> Vec<Vec<usize>> {
        let count = self.rng.gen_range(0..=2);
        (0..count)
            .map(|_| {
                let size = self.rng.gen_range(1..=x.len().min(3));
                let mut ids: Vec<usize> = (0..x.len()).collect();
                ids.shuffle(&mut self.rng);
                ids.truncate(size);
                ids
            })
            .collect()
    }
}

fn root(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Cover of the face poset of `k` by the down-sets of its facets.
pub fn facet_cover(k: &SimplicialComplex) -> PosetCover {
    let x = face_poset(k);
    let parts = k
        .facets()
        .iter()
        .map(|f| {
            let label = k.label_of(f);
            let set = x.down_set(&label).expect("facet is an element");
            (format!("U{label}"), set)
        })
        .collect();
    PosetCover::new(x, parts).expect("facets cover the face poset")
}

/// Cover of `x` by the down-sets of its maximal elements, plus the open
/// hulls of `extra` index sets.
pub fn principal_cover(x: &Poset, extra: &[Vec<usize>]) -> PosetCover {
    let mut parts: Vec<(String, crate::poset::ElementSet)> = x
        .maximal_in(&x.full_set())
        .into_iter()
        .map(|m| (format!("U{}", x.id(m)), x.down_of(m)))
        .collect();
    for (k, e) in extra.iter().enumerate() {
        let set = x
            .open_hull(&x.set_from_indices(e.iter().copied()))
            .expect("own set");
        parts.push((format!("W{k}"), set));
    }
    PosetCover::new(x.clone(), parts).expect("maximal down-sets cover")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::Budget;

    #[test]
    fn seeds_are_reproducible() {
        let a = Generator::new(7).poset("e", 8, 0.4);
        let b = Generator::new(7).poset("e", 8, 0.4);
        assert_eq!(a, b);
    }

    #[test]
    fn monotone_maps_are_monotone() {
        let mut g = Generator::new(1);
        for _ in 0..20 {
            let x = g.poset_up_to("x", 1, 8);
            let y = g.poset_up_to("y", 1, 8);
            let f = g.monotone_map(&x, &y);
            assert_eq!(f.source(), &x);
        }
    }

    #[test]
    fn covers_have_the_requested_kind() {
        let oracle = TrivialityOracle::new(Budget::DEFAULT);
        let mut g = Generator::new(2);
        for _ in 0..10 {
            let c = g.good_cover(12, &oracle);
            assert!(c.base().len() <= 12);
            assert_eq!(classify_cover(&c, &oracle).status, CoverStatus::Good);
            let q = g.quasi_good_cover(12, &oracle);
            assert!(q.base().len() <= 12);
            assert!(matches!(
                classify_cover(&q, &oracle).status,
                CoverStatus::Good | CoverStatus::QuasiGood
            ));
        }
    }

    #[test]
    fn certified_relations_are_certified() {
        let oracle = TrivialityOracle::new(Budget::DEFAULT);
        let mut g = Generator::new(3);
        for _ in 0..5 {
            let r = g.certified_relation(6, &oracle);
            assert_eq!(
                verify_theorem_a(&r, &oracle).unwrap().status,
                Status::Certified
            );
        }
    }
}

//! Mapper on point samples: pull back an interval cover along a filter, split
//! parts and their intersections into components of the ε-neighbourhood
//! graph, and take the completion of the nerve.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{simplex_label, SimplicialComplex};
use crate::cw::RegularCWComplex;
use crate::error::{Error, Result};
use crate::homology::{homology, HomologyProfile};
use crate::nerve::{completion_poset, nerve, CompletionPoset, ComplexCover};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    ids: Vec<String>,
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(ids: Vec<String>, points: Vec<Vec<f64>>) -> Result<Self> {
        if ids.len() != points.len() {
            return Err(Error::Invalid(format!(
                "{} identifiers for {} points",
                ids.len(),
                points.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::Duplicate(id.clone()));
            }
        }
        if let Some(first) = points.first() {
            let d = first.len();
            for (id, p) in ids.iter().zip(&points) {
                if p.len() != d {
                    return Err(Error::Invalid(format!(
                        "point `{id}` has dimension {} instead of {d}",
                        p.len()
                    )));
                }
                if p.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Invalid(format!(
                        "point `{id}` has a non-finite coordinate"
                    )));
                }
            }
        }
        Ok(PointCloud { ids, points })
    }

    /// Identifiers `p000`, `p001`, ... in row order.
    pub fn unnamed(points: Vec<Vec<f64>>) -> Result<Self> {
        let width = points.len().saturating_sub(1).to_string().len().max(2);
        let ids = (0..points.len()).map(|i| format!("p{i:0width$}")).collect();
        Self::new(ids, points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.points[a]
            .iter()
            .zip(&self.points[b])
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    /// 60-ish points near the unit circle with jittered angles and radii.
    pub fn noisy_circle(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let step = TAU / n as f64;
        let points = (0..n)
            .map(|k| {
                let t = step * (k as f64 + rng.gen_range(-0.3..0.3));
                let r = 1.0 + rng.gen_range(-0.03..0.03);
                vec![r * t.cos(), r * t.sin()]
            })
            .collect();
        Self::unnamed(points).expect("well-formed sample")
    }

    /// Two unit circles touching at the origin.
    pub fn noisy_figure_eight(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let half = n / 2;
        let mut points = Vec::with_capacity(n);
        for k in 0..n {
            let (count, centre, index) = if k < half {
                (half, -1.0, k)
            } else {
                (n - half, 1.0, k - half)
            };
            let t = TAU / count as f64 * (index as f64 + rng.gen_range(-0.3..0.3));
            let r = 1.0 + rng.gen_range(-0.03..0.03);
            points.push(vec![centre + r * t.cos(), r * t.sin()]);
        }
        Self::unnamed(points).expect("well-formed sample")
    }
}

/// A real valued function on the points of a cloud.
pub trait Filter: Send + Sync {
    fn name(&self) -> String;
    fn values(&self, pc: &PointCloud) -> Result<Vec<f64>>;
}

pub struct Projection(pub usize);

impl Filter for Projection {
    fn name(&self) -> String {
        format!("axis:{}", self.0)
    }

    fn values(&self, pc: &PointCloud) -> Result<Vec<f64>> {
        if self.0 >= pc.dim() {
            return Err(Error::Invalid(format!(
                "projection onto axis {} of {}-dimensional points",
                self.0,
                pc.dim()
            )));
        }
        Ok(pc.points().iter().map(|p| p[self.0]).collect())
    }
}

/// Mean distance to the other points.
pub struct Eccentricity;

impl Filter for Eccentricity {
    fn name(&self) -> String {
        "eccentricity".into()
    }

    fn values(&self, pc: &PointCloud) -> Result<Vec<f64>> {
        let n = pc.len();
        Ok((0..n)
            .map(|a| (0..n).map(|b| pc.distance(a, b)).sum::<f64>() / n.max(1) as f64)
            .collect())
    }
}

pub const FILTER_NAMES: &[&str] = &["x", "y", "z", "axis:<n>", "eccentricity"];

/// Looks up a filter by name.
pub fn filter(name: &str) -> Result<Arc<dyn Filter>> {
    let axis = match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "eccentricity" => return Ok(Arc::new(Eccentricity)),
        other => other.strip_prefix("axis:").and_then(|n| n.parse().ok()),
    };
    match axis {
        Some(i) => Ok(Arc::new(Projection(i))),
        None => Err(Error::Invalid(format!(
            "unknown filter `{name}` (expected one of {})",
            FILTER_NAMES.join(", ")
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalCover {
    pub intervals: usize,
    pub overlap: f64,
}

impl IntervalCover {
    pub fn new(intervals: usize, overlap: f64) -> Result<Self> {
        if intervals == 0 {
            return Err(Error::Invalid("at least one interval is needed".into()));
        }
        if !(0.0..1.0).contains(&overlap) {
            return Err(Error::Invalid(format!(
                "overlap {overlap} is outside [0, 1)"
            )));
        }
        Ok(IntervalCover { intervals, overlap })
    }

    /// Closed intervals of equal length covering `[lo, hi]`, consecutive
    /// ones sharing the fraction `overlap` of their length.
    pub fn intervals(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        let n = self.intervals as f64;
        let len = (hi - lo) / (n - (n - 1.0) * self.overlap);
        let stride = len * (1.0 - self.overlap);
        (0..self.intervals)
            .map(|k| {
                let a = if k == 0 { lo } else { lo + k as f64 * stride };
                let b = if k + 1 == self.intervals { hi } else { a + len };
                (a, b)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PullbackPart {
    pub name: String,
    pub interval: (f64, f64),
    /// Indices into the cloud, ascending.
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pullback {
    pub parts: Vec<PullbackPart>,
    pub warnings: Vec<String>,
}

pub fn pullback_cover(pc: &PointCloud, f: &dyn Filter, ic: &IntervalCover) -> Result<Pullback> {
    if pc.is_empty() {
        return Err(Error::Invalid("point cloud is empty".into()));
    }
    let values = f.values(pc)?;
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut warnings = Vec::new();
    let intervals = if lo == hi {
        let w = format!("filter {} is constant; using a single interval", f.name());
        log::warn!("{w}");
        warnings.push(w);
        vec![(lo, hi)]
    } else {
        ic.intervals(lo, hi)
    };
    let width = intervals.len().to_string().len().max(2);
    let parts = intervals
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| PullbackPart {
            name: format!("I{:0width$}", k + 1),
            interval: (a, b),
            points: (0..pc.len())
                .filter(|&i| a <= values[i] && values[i] <= b)
                .collect(),
        })
        .collect();
    Ok(Pullback { parts, warnings })
}

/// Pairs of points at distance at most `epsilon`, as a graph on the ids.
pub fn epsilon_graph(pc: &PointCloud, epsilon: f64) -> Result<SimplicialComplex> {
    if !(epsilon > 0.0) {
        return Err(Error::Invalid(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let mut facets: Vec<Vec<&str>> = pc.ids().iter().map(|id| vec![id.as_str()]).collect();
    for a in 0..pc.len() {
        for b in a + 1..pc.len() {
            if pc.distance(a, b) <= epsilon {
                facets.push(vec![&pc.ids()[a], &pc.ids()[b]]);
            }
        }
    }
    SimplicialComplex::from_facets(facets)
}

/// Components of the subgraph induced on `members`, each labelled by its
/// smallest identifier.
pub fn graph_components(
    pc: &PointCloud,
    epsilon: f64,
    members: &[usize],
) -> BTreeMap<String, Vec<usize>> {
    let n = members.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for a in 0..n {
        for b in a + 1..n {
            if pc.distance(members[a], members[b]) <= epsilon {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        let r = find(&mut parent, a);
        groups.entry(r).or_default().push(members[a]);
    }
    groups
        .into_values()
        .map(|mut g| {
            g.sort_by(|&a, &b| pc.ids()[a].cmp(&pc.ids()[b]));
            (pc.ids()[g[0]].clone(), g)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub parts: Vec<String>,
    /// Component label (smallest point id) to point ids.
    pub components: BTreeMap<String, Vec<String>>,
}

/// Components of every part and of every non-empty intersection of two or
/// three parts.
pub fn component_split(
    pc: &PointCloud,
    parts: &[PullbackPart],
    epsilon: f64,
) -> Result<Vec<SplitEntry>> {
    if !(epsilon > 0.0) {
        return Err(Error::Invalid(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = (0..parts.len())
        .rev()
        .map(|i| (vec![i], parts[i].points.clone()))
        .collect();
    while let Some((j, members)) = stack.pop() {
        if members.is_empty() {
            continue;
        }
        let components = graph_components(pc, epsilon, &members)
            .into_iter()
            .map(|(label, g)| (label, g.into_iter().map(|i| pc.ids()[i].clone()).collect()))
            .collect();
        out.push(SplitEntry {
            parts: j.iter().map(|&i| parts[i].name.clone()).collect(),
            components,
        });
        if j.len() < 3 {
            let last = *j.last().expect("non-empty");
            for i in (last + 1..parts.len()).rev() {
                let meet: Vec<usize> = members
                    .iter()
                    .copied()
                    .filter(|p| parts[i].points.binary_search(p).is_ok())
                    .collect();
                let mut bigger = j.clone();
                bigger.push(i);
                stack.push((bigger, meet));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MapperResult {
    pub pullback: Pullback,
    /// `N(V)`: parts only, components ignored.
    pub nerve: SimplicialComplex,
    /// `N(V̄)`: the classic Mapper graph on components of parts.
    pub component_nerve: SimplicialComplex,
    pub completion: CompletionPoset,
    pub completion_cw: RegularCWComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapperHomology {
    pub nerve: HomologyProfile,
    pub component_nerve: HomologyProfile,
    pub completion: HomologyProfile,
}

impl MapperResult {
    pub fn homology(&self) -> MapperHomology {
        MapperHomology {
            nerve: homology(&self.nerve, false),
            component_nerve: homology(&self.component_nerve, false),
            completion: homology(&self.completion_cw, false),
        }
    }
}

/// The point cover is realised on the ε-graph: each part becomes the
/// subgraph it induces and the base is their union, so that components of parts and of their
/// intersections are graph components, and the completion is that of the
/// resulting cover of a 1-dimensional complex.
pub fn mapper_completion(
    pc: &PointCloud,
    f: &dyn Filter,
    ic: &IntervalCover,
    epsilon: f64,
) -> Result<MapperResult> {
    let pullback = pullback_cover(pc, f, ic)?;
    let graph = epsilon_graph(pc, epsilon)?;
    let cover_parts = pullback
        .parts
        .iter()
        .filter(|p| !p.points.is_empty())
        .map(|p| Ok((p.name.clone(), induced_subgraph(pc, &graph, &p.points)?)))
        .collect::<Result<Vec<_>>>()?;
    // edges between points with no common part belong to no part
    let base =
        SimplicialComplex::from_facets(cover_parts.iter().flat_map(|(_, k)| k.facet_names()))?;
    let cover = ComplexCover::new(base, cover_parts)?;
    let poset_cover = cover.to_poset_cover();
    let completion = completion_poset(&poset_cover)?;
    let completion_cw = completion.cw()?;

    let point_parts: Vec<(String, Vec<usize>)> = pullback
        .parts
        .iter()
        .map(|p| (p.name.clone(), p.points.clone()))
        .collect();
    let nerve_complex = point_nerve(pc, &point_parts)?;
    debug_assert_eq!(
        nerve_complex.canonical_form(),
        nerve(&poset_cover).canonical_form()
    );
    let mut component_parts = Vec::new();
    for p in &pullback.parts {
        for (label, g) in graph_components(pc, epsilon, &p.points) {
            component_parts.push((format!("{}|{label}", p.name), g));
        }
    }
    let component_nerve = point_nerve(pc, &component_parts)?;
    Ok(MapperResult {
        pullback,
        nerve: nerve_complex,
        component_nerve,
        completion,
        completion_cw,
    })
}

/// Nerve of a family of point sets: each point spans the simplex of the
/// sets containing it.
fn point_nerve(pc: &PointCloud, parts: &[(String, Vec<usize>)]) -> Result<SimplicialComplex> {
    let mut containing: Vec<Vec<&str>> = vec![Vec::new(); pc.len()];
    for (name, members) in parts {
        for &i in members {
            containing[i].push(name);
        }
    }
    SimplicialComplex::from_facets(containing.into_iter().filter(|c| !c.is_empty()))
}

fn induced_subgraph(
    pc: &PointCloud,
    graph: &SimplicialComplex,
    members: &[usize],
) -> Result<SimplicialComplex> {
    let keep: BTreeSet<&str> = members.iter().map(|&i| pc.ids()[i].as_str()).collect();
    let facets = graph.all_faces().filter_map(|s| {
        let names = graph.names_of(s);
        names
            .iter()
            .all(|n| keep.contains(n.as_str()))
            .then_some(names)
    });
    SimplicialComplex::from_facets(facets)
}

/// Label used for a component-nerve vertex.
pub fn component_label(part: &str, min_point: &str) -> String {
    simplex_label(&[format!("{part}|{min_point}")])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> PointCloud {
        PointCloud::unnamed((0..n).map(|i| vec![i as f64]).collect()).unwrap()
    }

    #[test]
    fn one_interval_is_the_whole_cloud() {
        let pc = line(5);
        let cover = IntervalCover::new(1, 0.0).unwrap();
        let pb = pullback_cover(&pc, &Projection(0), &cover).unwrap();
        assert_eq!(pb.parts.len(), 1);
        assert_eq!(pb.parts[0].points, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn half_overlapping_intervals_share_the_middle() {
        let pc = line(5);
        let cover = IntervalCover::new(2, 0.5).unwrap();
        let pb = pullback_cover(&pc, &Projection(0), &cover).unwrap();
        // lengths 4 / 1.5, second interval starts at 4/3
        assert_eq!(pb.parts[0].points, [0, 1, 2]);
        assert_eq!(pb.parts[1].points, [2, 3, 4]);
    }

    #[test]
    fn constant_filter_falls_back_to_one_interval() {
        let pc = PointCloud::unnamed(vec![vec![1.0, 0.0], vec![1.0, 5.0]]).unwrap();
        let cover = IntervalCover::new(3, 0.2).unwrap();
        let pb = pullback_cover(&pc, &Projection(0), &cover).unwrap();
        assert_eq!(pb.parts.len(), 1);
        assert_eq!(pb.warnings.len(), 1);
    }

    #[test]
    fn components_of_two_clusters() {
        let pc = PointCloud::unnamed(vec![
            vec![0.0, 0.0],
            vec![0.1, 0.0],
            vec![5.0, 0.0],
            vec![5.1, 0.0],
        ])
        .unwrap();
        let comps = graph_components(&pc, 0.5, &[0, 1, 2, 3]);
        assert_eq!(comps.len(), 2);
        assert_eq!(graph_components(&pc, 100.0, &[0, 1, 2, 3]).len(), 1);

        let cover = IntervalCover::new(1, 0.0).unwrap();
        let result = mapper_completion(&pc, &Projection(1), &cover, 0.5).unwrap();
        assert_eq!(result.completion_cw.f_vector(), [2]);
        assert_eq!(result.homology().completion.betti_numbers(), [2]);
    }

    #[test]
    fn single_cluster_is_a_point() {
        let pc = line(6);
        let cover = IntervalCover::new(3, 0.3).unwrap();
        let result = mapper_completion(&pc, &Projection(0), &cover, 1.5).unwrap();
        let h = result.homology();
        assert_eq!(h.completion.betti_numbers(), [1]);
        // all intersections connected: completion and Mapper graph agree
        assert_eq!(
            result.completion_cw.f_vector(),
            result.component_nerve.f_vector()
        );
        assert_eq!(h.completion, h.component_nerve);
    }

    #[test]
    fn labels_do_not_depend_on_input_order() {
        let pc = PointCloud::noisy_circle(30, 3);
        let mut ids = pc.ids().to_vec();
        let mut points = pc.points().to_vec();
        ids.reverse();
        points.reverse();
        let flipped = PointCloud::new(ids, points).unwrap();
        let cover = IntervalCover::new(4, 0.3).unwrap();
        let a = mapper_completion(&pc, &Projection(0), &cover, 0.5).unwrap();
        let b = mapper_completion(&flipped, &Projection(0), &cover, 0.5).unwrap();
        assert_eq!(a.completion.poset, b.completion.poset);
        assert_eq!(a.component_nerve, b.component_nerve);
    }

    #[test]
    fn unknown_filter_is_an_error() {
        assert!(filter("w").is_err());
        assert_eq!(filter("axis:3").unwrap().name(), "axis:3");
        assert_eq!(filter("eccentricity").unwrap().name(), "eccentricity");
    }
}

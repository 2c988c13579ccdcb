//! Regular CW complexes whose closed cells are simplices, presented by their
//! face posets.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Poset, PosetJson};

/// A regular CW complex given by its face poset and cell dimensions.
///
/// Invariants (checked on construction): the face poset is graded by `dim`,
/// and the closed cell below each cell is the face poset of a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCWComplex {
    face_poset: Poset,
    dim: Vec<usize>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl RegularCWComplex {
    /// Validates `p` with the given cell dimensions.
    pub fn from_face_poset(p: Poset, dims: &HashMap<String, usize>) -> Result<Self> {
        let mut dim = Vec::with_capacity(p.len());
        for id in p.ids() {
            let d = dims.get(id).copied().ok_or_else(|| Error::NotRegularCw {
                cell: id.clone(),
                reason: "no dimension given".into(),
            })?;
            dim.push(d);
        }
        validate(&p, &dim)?;
        Ok(RegularCWComplex { face_poset: p, dim })
    }

    /// Validates `p`, taking the dimension of a cell to be the length of the
    /// longest chain below it.
    pub fn from_graded_poset(p: Poset) -> Result<Self> {
        let mut dim = vec![0usize; p.len()];
        for x in p.linear_extension_indices() {
            dim[x] = p
                .lower_covers(x)
                .iter()
                .map(|&y| dim[y] + 1)
                .max()
                .unwrap_or(0);
        }
        validate(&p, &dim)?;
        Ok(RegularCWComplex { face_poset: p, dim })
    }

    pub fn face_poset(&self) -> &Poset {
        &self.face_poset
    }

    pub fn into_face_poset(self) -> Poset {
        self.face_poset
    }

    pub fn cell_dim(&self, index: usize) -> usize {
        self.dim[index]
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim.iter().copied().max()
    }

    /// Number of cells in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.dim().map_or(0, |d| d + 1)];
        for &d in &self.dim {
            out[d] += 1;
        }
        out
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<&str> {
        (0..self.face_poset.len())
            .filter(|&i| self.dim[i] == d)
            .map(|i| self.face_poset.id(i))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn to_json(&self) -> CwJson {
        let PosetJson {
            elements,
            relations,
        } = self.face_poset.to_json();
        CwJson {
            elements,
            relations,
            dim: self
                .face_poset
                .ids()
                .iter()
                .cloned()
                .zip(self.dim.iter().copied())
                .collect(),
        }
    }
}

fn invalid(p: &Poset, cell: usize, reason: String) -> Error {
    Error::NotRegularCw {
        cell: p.id(cell).to_owned(),
        reason,
    }
}

fn validate(p: &Poset, dim: &[usize]) -> Result<()> {
    for x in 0..p.len() {
        for &y in p.upper_covers(x) {
            if dim[y] != dim[x] + 1 {
                return Err(invalid(
                    p,
                    y,
                    format!(
                        "covers `{}` but dimensions are {} and {}",
                        p.id(x),
                        dim[y],
                        dim[x]
                    ),
                ));
            }
        }
    }
    for c in 0..p.len() {
        let d = dim[c];
        let closed: Vec<usize> = p.below(c).ones().collect();
        let mut counts = vec![0usize; d + 1];
        for &e in &closed {
            counts[dim[e]] += 1;
        }
        for (k, &count) in counts.iter().enumerate() {
            let expected = binomial(d + 1, k + 1);
            if count != expected {
                return Err(invalid(
                    p,
                    c,
                    format!(
                        "has {count} faces of dimension {k}, a {d}-simplex has C({}, {}) = {expected}",
                        d + 1,
                        k + 1
                    ),
                ));
            }
        }
        // boolean lattice: faces are determined by their vertices, with the
        // right number of them, and ordered by inclusion of vertex sets
        let vertices: Vec<usize> = closed.iter().copied().filter(|&e| dim[e] == 0).collect();
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut vertex_sets: HashMap<usize, FixedBitSet> = HashMap::new();
        for &e in &closed {
            let vs: Vec<usize> = vertices.iter().copied().filter(|&v| p.leq(v, e)).collect();
            if vs.len() != dim[e] + 1 {
                return Err(invalid(
                    p,
                    c,
                    format!(
                        "face `{}` of dimension {} has {} vertices",
                        p.id(e),
                        dim[e],
                        vs.len()
                    ),
                ));
            }
            if let Some(other) = seen.insert(vs.clone(), e) {
                return Err(invalid(
                    p,
                    c,
                    format!(
                        "faces `{}` and `{}` share their vertices",
                        p.id(other),
                        p.id(e)
                    ),
                ));
            }
            let mut bits = FixedBitSet::with_capacity(p.len());
            for v in vs {
                bits.insert(v);
            }
            vertex_sets.insert(e, bits);
        }
        for &a in &closed {
            for &b in &closed {
                if p.leq(a, b) != vertex_sets[&a].is_subset(&vertex_sets[&b]) {
                    return Err(invalid(
                        p,
                        c,
                        format!(
                            "order between `{}` and `{}` is not inclusion of vertex sets",
                            p.id(a),
                            p.id(b)
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// JSON form: a face poset plus a `dim` map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwJson {
    #[serde(default)]
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
    pub dim: BTreeMap<String, usize>,
}

impl CwJson {
    pub fn into_complex(self) -> Result<RegularCWComplex> {
        let dims: HashMap<String, usize> = self.dim.clone().into_iter().collect();
        let mut elements = self.elements;
        elements.extend(self.dim.into_keys());
        let p = PosetJson {
            elements,
            relations: self.relations,
        }
        .into_poset()?;
        RegularCWComplex::from_face_poset(p, &dims)
    }
}

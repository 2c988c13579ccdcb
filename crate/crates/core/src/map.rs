//! Order preserving maps and relations between finite posets.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{ElementSet, Poset};

/// An order preserving map, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    source: Poset,
    target: Poset,
    images: Vec<usize>,
}

impl PosetMap {
    /// Builds a map from `(x, f(x))` pairs. Every source element needs
    /// exactly one image, and the map must preserve the order; the first
    /// offending cover relation is reported otherwise.
    pub fn new<S: AsRef<str>>(
        source: Poset,
        target: Poset,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut images = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            let (x, y) = (x.as_ref(), y.as_ref());
            let i = source.index_of(x)?;
            let j = target.index_of(y)?;
            if images[i] != usize::MAX && images[i] != j {
                return Err(Error::Invalid(format!(
                    "`{x}` is mapped to both `{}` and `{y}`",
                    target.id(images[i])
                )));
            }
            images[i] = j;
        }
        if let Some(i) = images.iter().position(|&j| j == usize::MAX) {
            return Err(Error::PartialMap(source.id(i).to_owned()));
        }
        for a in 0..source.len() {
            for &b in source.upper_covers(a) {
                if !target.leq(images[a], images[b]) {
                    return Err(Error::NotMonotone {
                        lower: source.id(a).to_owned(),
                        upper: source.id(b).to_owned(),
                        lower_image: target.id(images[a]).to_owned(),
                        upper_image: target.id(images[b]).to_owned(),
                    });
                }
            }
        }
        Ok(PosetMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(p: &Poset) -> Self {
        PosetMap {
            source: p.clone(),
            target: p.clone(),
            images: (0..p.len()).collect(),
        }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn image_of(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn apply(&self, x: &str) -> Result<&str> {
        Ok(self.target.id(self.images[self.source.index_of(x)?]))
    }

    /// `f^{-1}(B)`
    pub fn preimage(&self, set: &ElementSet) -> Result<ElementSet> {
        self.target.check(set)?;
        Ok(self
            .source
            .set_from_indices((0..self.source.len()).filter(|&x| set.contains(self.images[x]))))
    }

    pub fn pairs(&self) -> Vec<(String, String)> {
        (0..self.source.len())
            .map(|x| {
                (
                    self.source.id(x).to_owned(),
                    self.target.id(self.images[x]).to_owned(),
                )
            })
            .collect()
    }
}

/// A relation between the underlying sets of two posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    source: Poset,
    target: Poset,
    // related[x] = R({x}) as bits over the target
    forward: Vec<FixedBitSet>,
    backward: Vec<FixedBitSet>,
}

impl Relation {
    pub fn new<S: AsRef<str>>(
        source: Poset,
        target: Poset,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut indices = Vec::new();
        for (x, y) in pairs {
            indices.push((source.index_of(x.as_ref())?, target.index_of(y.as_ref())?));
        }
        Ok(Self::from_indices(source, target, indices))
    }

    pub fn from_indices(
        source: Poset,
        target: Poset,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut forward = vec![FixedBitSet::with_capacity(target.len()); source.len()];
        let mut backward = vec![FixedBitSet::with_capacity(source.len()); target.len()];
        for (x, y) in pairs {
            forward[x].insert(y);
            backward[y].insert(x);
        }
        Relation {
            source,
            target,
            forward,
            backward,
        }
    }

    /// The graph of a map: `x R f(x)`.
    pub fn from_map(f: &PosetMap) -> Self {
        Self::from_indices(
            f.source().clone(),
            f.target().clone(),
            (0..f.source().len()).map(|x| (x, f.image_of(x))),
        )
    }

    pub fn identity(p: &Poset) -> Self {
        Self::from_map(&PosetMap::identity(p))
    }

    pub fn full(source: &Poset, target: &Poset) -> Self {
        let (n, m) = (source.len(), target.len());
        Self::from_indices(
            source.clone(),
            target.clone(),
            (0..n).flat_map(|x| (0..m).map(move |y| (x, y))),
        )
    }

    pub fn empty(source: &Poset, target: &Poset) -> Self {
        Self::from_indices(source.clone(), target.clone(), [])
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.forward[x].contains(y)
    }

    pub fn pair_count(&self) -> usize {
        self.forward.iter().map(|f| f.count_ones(..)).sum()
    }

    pub fn pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (x, ys) in self.forward.iter().enumerate() {
            for y in ys.ones() {
                out.push((self.source.id(x).to_owned(), self.target.id(y).to_owned()));
            }
        }
        out
    }

    /// `R(A)`
    pub fn image(&self, set: &ElementSet) -> Result<ElementSet> {
        self.source.check(set)?;
        let mut bits = FixedBitSet::with_capacity(self.target.len());
        for x in set.iter() {
            bits.union_with(&self.forward[x]);
        }
        Ok(self.target.set_from_indices(bits.ones()))
    }

    /// `R^{-1}(B)`
    pub fn preimage(&self, set: &ElementSet) -> Result<ElementSet> {
        self.target.check(set)?;
        let mut bits = FixedBitSet::with_capacity(self.source.len());
        for y in set.iter() {
            bits.union_with(&self.backward[y]);
        }
        Ok(self.source.set_from_indices(bits.ones()))
    }

    /// The same pairs as a relation from the opposite of the target to the
    /// opposite of the source.
    pub fn transpose_opposite(&self) -> Relation {
        Relation {
            source: self.target.opposite(),
            target: self.source.opposite(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn to_json(&self) -> RelationJson {
        RelationJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            pairs: self.pairs().into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub source: crate::poset::PosetJson,
    pub target: crate::poset::PosetJson,
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
}

impl RelationJson {
    pub fn into_relation(self) -> Result<Relation> {
        let unique: BTreeSet<(String, String)> =
            self.pairs.into_iter().map(|[x, y]| (x, y)).collect();
        Relation::new(self.source.into_poset()?, self.target.into_poset()?, unique)
    }
}

//! Objects of the unitary partition complex: proper decompositions of `C^n`
//! into mutually orthogonal nonzero subspaces, the coarsening order, the
//! action of unitary matrices, and fixedness under a group.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclonum::{lcm, CycError, CycNumber};
use crate::exactla::{CMatrix, CSubspace, LinAlgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a proper partition needs at least two classes, got {0}")]
    TooFewClasses(usize),
    #[error("class {0} is the zero subspace")]
    ZeroClass(usize),
    #[error("classes {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("class dimensions sum to {got}, expected {expected}")]
    DimensionSum { expected: usize, got: usize },
    #[error("partition is not weakly fixed by the group")]
    NotWeaklyFixed,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

impl From<CycError> for PartitionError {
    fn from(e: CycError) -> Self {
        PartitionError::LinAlg(e.into())
    }
}

/// A proper orthogonal decomposition of `C^n`, classes in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrthoPartition {
    n: usize,
    conductor: u64,
    classes: Vec<CSubspace>,
}

/// How a matrix moves the classes of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassPermutation {
    /// `perm[i] = j` when `g · class_i = class_j`.
    Permutation(Vec<usize>),
    NotStable,
}

impl ClassPermutation {
    pub fn is_identity(&self) -> bool {
        matches!(self, ClassPermutation::Permutation(p) if p.iter().enumerate().all(|(i, &j)| i == j))
    }
}

/// Result of merging classes along group orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coarsening {
    Proper(OrthoPartition),
    /// Everything merged into the single class `C^n`.
    Improper,
}

impl OrthoPartition {
    /// Validates properness, nonzero classes, pairwise orthogonality and the
    /// dimension count; classes are lifted to a common conductor and sorted.
    pub fn new(classes: Vec<CSubspace>) -> Result<Self, PartitionError> {
        if classes.len() < 2 {
            return Err(PartitionError::TooFewClasses(classes.len()));
        }
        let n = classes[0].ambient_dim();
        if let Some(c) = classes.iter().find(|c| c.ambient_dim() != n) {
            return Err(LinAlgError::DimensionMismatch(format!(
                "class in C^{} inside a partition of C^{n}",
                c.ambient_dim()
            ))
            .into());
        }
        let m = classes.iter().map(CSubspace::conductor).fold(1, lcm);
        let mut classes = classes.into_iter().map(|c| c.embed(m)).collect::<Result<Vec<_>, _>>()?;
        classes.sort();
        if let Some(i) = classes.iter().position(CSubspace::is_zero) {
            return Err(PartitionError::ZeroClass(i));
        }
        let total: usize = classes.iter().map(CSubspace::dim).sum();
        if total != n {
            return Err(PartitionError::DimensionSum { expected: n, got: total });
        }
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                if !classes[i].is_orthogonal_to(&classes[j])? {
                    return Err(PartitionError::NotOrthogonal(i, j));
                }
            }
        }
        Ok(OrthoPartition { n, conductor: m, classes })
    }

    /// The partition of `C^n` into coordinate subspaces spanned by the given
    /// blocks of basis indices.
    pub fn coordinate(n: usize, m: u64, blocks: &[&[usize]]) -> Result<Self, PartitionError> {
        let classes = blocks
            .iter()
            .map(|b| {
                let vs = b
                    .iter()
                    .map(|&i| {
                        let mut v = vec![CycNumber::zero(m); n];
                        v[i] = CycNumber::one(m);
                        v
                    })
                    .collect();
                CSubspace::from_vectors(n, m, vs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(classes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn classes(&self) -> &[CSubspace] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn embed(&self, m2: u64) -> Result<Self, PartitionError> {
        if m2 == self.conductor {
            return Ok(self.clone());
        }
        let mut classes = self.classes.iter().map(|c| c.embed(m2)).collect::<Result<Vec<_>, _>>()?;
        classes.sort();
        Ok(OrthoPartition { n: self.n, conductor: m2, classes })
    }

    /// Sorted class dimensions.
    pub fn dimension_profile(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.classes.iter().map(CSubspace::dim).collect();
        d.sort_unstable();
        d
    }

    /// True iff every class of `self` lies inside some class of `coarser`,
    /// i.e. there is a morphism `self → coarser`.
    pub fn is_coarsening(&self, coarser: &OrthoPartition) -> Result<bool, PartitionError> {
        let (a, b) = align(self, coarser)?;
        for v in &a.classes {
            let mut found = false;
            for w in &b.classes {
                if w.contains(v)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `g · λ`, with classes re-sorted.
    pub fn act(&self, g: &CMatrix) -> Result<OrthoPartition, PartitionError> {
        let (lambda, g) = align_matrix(self, g)?;
        let mut classes = lambda.classes.iter().map(|c| c.apply(&g)).collect::<Result<Vec<_>, _>>()?;
        classes.sort();
        Ok(OrthoPartition { n: lambda.n, conductor: lambda.conductor, classes })
    }

    /// The permutation of classes induced by `g`, if `g` maps classes onto classes.
    pub fn induced_class_permutation(&self, g: &CMatrix) -> Result<ClassPermutation, PartitionError> {
        let (lambda, g) = align_matrix(self, g)?;
        let mut perm = Vec::with_capacity(lambda.classes.len());
        for c in &lambda.classes {
            let image = c.apply(&g)?;
            match lambda.classes.binary_search(&image) {
                Ok(j) => perm.push(j),
                Err(_) => return Ok(ClassPermutation::NotStable),
            }
        }
        Ok(ClassPermutation::Permutation(perm))
    }

    /// Every generator permutes the classes. Checking generators suffices:
    /// a product of class-permuting matrices permutes classes.
    pub fn is_weakly_fixed(&self, generators: &[CMatrix]) -> Result<bool, PartitionError> {
        for g in generators {
            if self.induced_class_permutation(g)? == ClassPermutation::NotStable {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every generator fixes every class.
    pub fn is_strongly_fixed(&self, generators: &[CMatrix]) -> Result<bool, PartitionError> {
        for g in generators {
            if !self.induced_class_permutation(g)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `λ/J`: merges classes along orbits of the class permutation action of
    /// the group generated by `generators`. Defined for weakly fixed `λ`.
    pub fn orbit_coarsening(&self, generators: &[CMatrix]) -> Result<Coarsening, PartitionError> {
        let k = self.classes.len();
        let mut root: Vec<usize> = (0..k).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for g in generators {
            let ClassPermutation::Permutation(perm) = self.induced_class_permutation(g)? else {
                return Err(PartitionError::NotWeaklyFixed);
            };
            for (i, j) in perm.into_iter().enumerate() {
                let (a, b) = (find(&mut root, i), find(&mut root, j));
                if a != b {
                    root[a.max(b)] = a.min(b);
                }
            }
        }
        let mut merged: Vec<(usize, CSubspace)> = Vec::new();
        for i in 0..k {
            let r = find(&mut root, i);
            match merged.iter_mut().find(|(key, _)| *key == r) {
                Some((_, space)) => *space = space.sum(&self.classes[i])?,
                None => merged.push((r, self.classes[i].clone())),
            }
        }
        if merged.len() < 2 {
            return Ok(Coarsening::Improper);
        }
        let mut classes: Vec<CSubspace> = merged.into_iter().map(|(_, s)| s).collect();
        classes.sort();
        Ok(Coarsening::Proper(OrthoPartition { n: self.n, conductor: self.conductor, classes }))
    }
}

fn align(a: &OrthoPartition, b: &OrthoPartition) -> Result<(OrthoPartition, OrthoPartition), PartitionError> {
    if a.n != b.n {
        return Err(LinAlgError::DimensionMismatch(format!("partitions of C^{} and C^{}", a.n, b.n)).into());
    }
    let m = lcm(a.conductor, b.conductor);
    Ok((a.embed(m)?, b.embed(m)?))
}

fn align_matrix(a: &OrthoPartition, g: &CMatrix) -> Result<(OrthoPartition, CMatrix), PartitionError> {
    let m = lcm(a.conductor, g.conductor());
    Ok((a.embed(m)?, g.embed(m)?))
}

/// Wire form `{"n": 3, "classes": [[vector, ...], ...]}`; each class is a
/// list of spanning vectors, canonicalized on load.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionRepr {
    pub n: usize,
    pub classes: Vec<Vec<Vec<CycNumber>>>,
}

impl PartitionRepr {
    pub fn from_classes(n: usize, classes: &[CSubspace]) -> Self {
        PartitionRepr { n, classes: classes.iter().map(|c| c.basis().to_vec()).collect() }
    }

    /// The classes as canonical subspaces, without partition validation.
    pub fn subspaces(&self) -> Result<Vec<CSubspace>, PartitionError> {
        let m = self.classes.iter().flatten().flatten().map(CycNumber::conductor).fold(1, lcm);
        self.classes
            .iter()
            .map(|vs| CSubspace::from_vectors(self.n, m, vs.clone()).map_err(PartitionError::from))
            .collect()
    }

    pub fn to_partition(&self) -> Result<OrthoPartition, PartitionError> {
        let classes = self.subspaces()?;
        if let Some(c) = classes.first() {
            if c.ambient_dim() != self.n {
                return Err(LinAlgError::DimensionMismatch("class length".into()).into());
            }
        }
        OrthoPartition::new(classes)
    }
}

impl Serialize for OrthoPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PartitionRepr::from_classes(self.n, &self.classes).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrthoPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PartitionRepr::deserialize(d)?.to_partition().map_err(serde::de::Error::custom)
    }
}

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::partition::PartitionPoset;
use super::snf::{sparse_invariant_factors, RankTorsion, SparseMatrix};

/// A finite abstract simplicial complex; simplices of each dimension are
/// sorted vertex lists kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// The smallest complex containing the given simplices.
    pub fn from_facets<S: AsRef<[u32]>>(facets: &[S]) -> Self {
        let mut sets: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for f in facets {
            let mut vs: Vec<u32> = f.as_ref().to_vec();
            vs.sort_unstable();
            vs.dedup();
            let k = vs.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| vs[i]).collect();
                let d = face.len() - 1;
                if sets.len() <= d {
                    sets.resize_with(d + 1, BTreeSet::new);
                }
                sets[d].insert(face);
            }
        }
        SimplicialComplex { by_dim: sets.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    /// Simplices given already closed under faces, grouped by dimension.
    fn from_closed(mut by_dim: Vec<Vec<Vec<u32>>>) -> Self {
        for level in by_dim.iter_mut() {
            level.sort_unstable();
        }
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        SimplicialComplex { by_dim }
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Number of simplices in each dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.counts())
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let boundaries = (1..self.by_dim.len())
            .into_par_iter()
            .map(|k| {
                let faces = &self.by_dim[k - 1];
                let columns = self.by_dim[k]
                    .iter()
                    .map(|s| {
                        let mut col: Vec<(u32, i64)> = (0..s.len())
                            .map(|i| {
                                let mut face = s.clone();
                                face.remove(i);
                                let row = faces.binary_search(&face).expect("complex is closed under faces");
                                (row as u32, if i % 2 == 0 { 1 } else { -1 })
                            })
                            .collect();
                        col.sort_unstable_by_key(|e| e.0);
                        col
                    })
                    .collect();
                SparseMatrix { rows: faces.len(), cols: self.by_dim[k].len(), columns }
            })
            .collect();
        ChainComplex { counts: self.counts(), boundaries }
    }
}

/// Order complex (nerve) of a partition poset: one simplex per nonempty
/// chain, vertices labelled by poset index.
pub fn order_complex(poset: &PartitionPoset) -> SimplicialComplex {
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut chain = Vec::new();
    fn extend(poset: &PartitionPoset, chain: &mut Vec<u32>, by_dim: &mut Vec<Vec<Vec<u32>>>) {
        let d = chain.len() - 1;
        if by_dim.len() <= d {
            by_dim.resize_with(d + 1, Vec::new);
        }
        by_dim[d].push(chain.clone());
        let last = *chain.last().expect("nonempty chain") as usize;
        for &next in poset.above(last) {
            chain.push(next);
            extend(poset, chain, by_dim);
            chain.pop();
        }
    }
    for i in 0..poset.len() {
        chain.push(i as u32);
        extend(poset, &mut chain, &mut by_dim);
        chain.pop();
    }
    SimplicialComplex::from_closed(by_dim)
}

/// Free chain groups `C_0..C_d` with boundary maps `∂_k: C_k → C_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainComplex {
    counts: Vec<usize>,
    /// `boundaries[k - 1]` is `∂_k`.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `∂_k` for `k ≥ 1`.
    pub fn boundary(&self, k: usize) -> Option<&SparseMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.counts)
    }

    /// `∂_k ∘ ∂_{k+1} = 0` for every `k`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul_is_zero(&w[1]))
    }
}

fn alternating_sum(counts: &[usize]) -> i64 {
    counts.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub betti: u64,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub reduced: bool,
    /// One entry per degree, from `-1` (reduced) or `0` up to the dimension.
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn group(&self, degree: i64) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    pub fn betti(&self, degree: i64) -> u64 {
        self.group(degree).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, degree: i64) -> &[u64] {
        self.group(degree).map_or(&[], |g| g.torsion.as_slice())
    }

    /// All reduced homology vanishes. For an unreduced result this means
    /// `H_0 = Z` and nothing else.
    pub fn is_z_acyclic(&self) -> bool {
        self.groups.iter().all(|g| {
            if !self.reduced && g.degree == 0 {
                g.betti == 1 && g.torsion.is_empty()
            } else {
                g.is_zero()
            }
        }) && (self.reduced || self.group(0).is_some())
    }

    /// Alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|g| if g.degree.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
    }
}

/// Integral homology `H_k`.
pub fn homology(c: &ChainComplex) -> HomologyResult {
    compute(c, false)
}

/// Reduced integral homology, with the augmentation `C_0 → Z` in degree 0
/// and `C_{-1} = Z`; the empty complex has `H̃_{-1} = Z`.
pub fn reduced_homology(c: &ChainComplex) -> HomologyResult {
    compute(c, true)
}

fn compute(c: &ChainComplex, reduced: bool) -> HomologyResult {
    let rt: Vec<RankTorsion> = c.boundaries.par_iter().map(sparse_invariant_factors).collect();
    // rank of ∂_k for k = 0..=d+1, with ∂_0 the augmentation when reduced
    let rank = |k: usize| -> usize {
        if k == 0 {
            usize::from(reduced && c.counts.first().is_some_and(|&n| n > 0))
        } else {
            rt.get(k - 1).map_or(0, |r| r.rank)
        }
    };
    let mut groups = Vec::new();
    if reduced {
        let betti = 1 - rank(0);
        groups.push(HomologyGroup { degree: -1, betti: betti as u64, torsion: Vec::new() });
    }
    for (k, &n) in c.counts.iter().enumerate() {
        let betti = n - rank(k) - rank(k + 1);
        let torsion = rt
            .get(k)
            .map(|r| r.torsion.iter().map(|t| t.to_u64().expect("torsion coefficient fits in u64")).collect())
            .unwrap_or_default();
        groups.push(HomologyGroup { degree: k as i64, betti: betti as u64, torsion });
    }
    HomologyResult { reduced, groups }
}

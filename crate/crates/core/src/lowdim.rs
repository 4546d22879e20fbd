//! Small cases worked out exactly: points of `L_2` and the fixed set of the
//! coordinate swap on it, a simplicial model of `L_2`, and the swap of two
//! coordinates in `U(3)`.

use serde::Serialize;
use thiserror::Error;

use crate::cyclonum::{CycNumber, Rational};
use crate::discretia::SimplicialComplex;
use crate::exactla::{CMatrix, CSubspace};
use crate::orthopart::{OrthoPartition, PartitionError};
use crate::verdict::{analyze, AnalysisConfig, AnalysisError, Route, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowDimError {
    #[error("z must be nonzero")]
    ZeroPoint,
    #[error("conductor {0} does not contain i")]
    NoImaginaryUnit(u64),
    #[error("classifiers disagree at {point}: predicate says {predicate:?}, symbolic says {symbolic:?}")]
    InternalInconsistency { point: String, predicate: L2Class, symbolic: L2Class },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// A point of `L_2`: the pair `{L_z, L_{-1/z̄}}` where `L_z = span(1, z)`,
/// or the pair of coordinate axes `{L_0, L_∞}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum L2Point {
    FinitePair(CycNumber),
    AxisPair,
}

impl L2Point {
    pub fn finite(z: CycNumber) -> Result<Self, LowDimError> {
        if !z.conductor().is_multiple_of(4) {
            return Err(LowDimError::NoImaginaryUnit(z.conductor()));
        }
        if z.is_zero() {
            return Err(LowDimError::ZeroPoint);
        }
        Ok(L2Point::FinitePair(z))
    }

    /// `a + b·i` at conductor 4.
    pub fn gaussian(a: Rational, b: Rational) -> Result<Self, LowDimError> {
        let z = &CycNumber::from_rational(a, 4) + &CycNumber::root_of_unity(4, 1).scale(&b);
        Self::finite(z)
    }

    fn conductor(&self) -> u64 {
        match self {
            L2Point::FinitePair(z) => z.conductor(),
            L2Point::AxisPair => 4,
        }
    }
}

impl std::fmt::Display for L2Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            L2Point::FinitePair(z) => write!(f, "z = {z}"),
            L2Point::AxisPair => f.write_str("axis pair"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum L2Class {
    NotFixed,
    CircleComponent,
    IsolatedPoint,
}

/// The two-line orthogonal partition of `C^2` at a point.
pub fn l2_partition(pt: &L2Point) -> Result<OrthoPartition, LowDimError> {
    let m = pt.conductor();
    match pt {
        L2Point::AxisPair => Ok(OrthoPartition::coordinate(2, m, &[&[0], &[1]])?),
        L2Point::FinitePair(z) => {
            let other = -z.conj().inv().map_err(|_| LowDimError::ZeroPoint)?;
            let line = |w: CycNumber| CSubspace::from_vectors(2, m, vec![vec![CycNumber::one(m), w]]);
            let classes = vec![line(z.clone()).map_err(PartitionError::from)?, line(other).map_err(PartitionError::from)?];
            Ok(OrthoPartition::new(classes)?)
        }
    }
}

fn swap() -> CMatrix {
    CMatrix::from_ints(1, &[&[0, 1], &[1, 0]])
}

/// Classification from the fixedness predicates: not weakly fixed, fixed
/// with both lines kept, or fixed with the lines exchanged.
fn classify_by_predicate(pt: &L2Point) -> Result<L2Class, LowDimError> {
    let lambda = l2_partition(pt)?;
    let tau = [swap()];
    Ok(if !lambda.is_weakly_fixed(&tau)? {
        L2Class::NotFixed
    } else if lambda.is_strongly_fixed(&tau)? {
        L2Class::IsolatedPoint
    } else {
        L2Class::CircleComponent
    })
}

/// `τ L_z = L_{1/z}`, so the pair is fixed iff `z = 1/z` or `1/z = -1/z̄`.
fn classify_symbolically(pt: &L2Point) -> L2Class {
    match pt {
        L2Point::AxisPair => L2Class::CircleComponent,
        L2Point::FinitePair(z) => {
            let m = z.conductor();
            if *z == CycNumber::one(m) || *z == CycNumber::from_int(-1, m) {
                L2Class::IsolatedPoint
            } else if z.conj() == -z.clone() {
                L2Class::CircleComponent
            } else {
                L2Class::NotFixed
            }
        }
    }
}

/// Fixed-set membership of a point of `L_2` under the coordinate swap,
/// computed by both methods and cross-checked.
pub fn classify_l2_fixed(pt: &L2Point) -> Result<L2Class, LowDimError> {
    let predicate = classify_by_predicate(pt)?;
    let symbolic = classify_symbolically(pt);
    if predicate != symbolic {
        return Err(LowDimError::InternalInconsistency { point: pt.to_string(), predicate, symbolic });
    }
    Ok(predicate)
}

/// `{a + b·i : a, b ∈ {-r..r}/d, d ∈ denominators} \ {0}` plus the axis pair.
pub fn gaussian_grid(r: i64, denominators: &[i64]) -> Vec<L2Point> {
    let mut values = Vec::new();
    for &d in denominators {
        for a in -r..=r {
            for b in -r..=r {
                let q = |x: i64| Rational::new(x.into(), d.into());
                values.push((q(a), q(b)));
            }
        }
    }
    values.sort();
    values.dedup();
    let mut pts: Vec<L2Point> =
        values.into_iter().filter_map(|(a, b)| L2Point::gaussian(a, b).ok()).collect();
    pts.push(L2Point::AxisPair);
    pts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L2Census {
    pub samples: usize,
    /// Distinct points of `L_2` classified isolated (`z = 1` and `z = -1`
    /// give the same partition).
    pub isolated_count: usize,
    pub circle_samples: usize,
    pub circle_witnessed: bool,
    pub not_fixed: usize,
    pub components: usize,
}

/// Classifies every sample and counts fixed components: the isolated
/// points plus one circle when any circle point was seen.
pub fn l2_fixed_component_census(grid: &[L2Point]) -> Result<L2Census, LowDimError> {
    let mut isolated: Vec<OrthoPartition> = Vec::new();
    let (mut circle, mut not_fixed) = (0, 0);
    for pt in grid {
        match classify_l2_fixed(pt)? {
            L2Class::IsolatedPoint => {
                let lambda = l2_partition(pt)?;
                if !isolated.contains(&lambda) {
                    isolated.push(lambda);
                }
            }
            L2Class::CircleComponent => circle += 1,
            L2Class::NotFixed => not_fixed += 1,
        }
    }
    Ok(L2Census {
        samples: grid.len(),
        isolated_count: isolated.len(),
        circle_samples: circle,
        circle_witnessed: circle > 0,
        not_fixed,
        components: isolated.len() + usize::from(circle > 0),
    })
}

/// The six-vertex triangulation of `RP^2` as a disk quotient: vertex 1 is
/// the center, 2..6 form a pentagon around it, and each outer triangle has
/// its apex on the boundary circle, where every label occurs at two
/// antipodal positions.
pub fn rp2_quotient_complex() -> SimplicialComplex {
    let ring = |k: u32| 2 + k % 5;
    let facets: Vec<[u32; 3]> = (0..5)
        .flat_map(|k| [[1, ring(k), ring(k + 1)], [ring(k), ring(k + 1), ring(k + 3)]])
        .collect();
    SimplicialComplex::from_facets(&facets)
}

fn swap3() -> CMatrix {
    CMatrix::from_ints(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])
}

/// `{(u, u, v)}` and `{(u, -u, 0)}` at conductor `m`.
pub fn l3_expected_mu(m: u64) -> Vec<CSubspace> {
    let mut mu =
        vec![CSubspace::span_ints(3, m, &[&[1, 1, 0], &[0, 0, 1]]), CSubspace::span_ints(3, m, &[&[1, -1, 0]])];
    mu.sort();
    mu
}

/// Analyzes the group generated by `generators` at `p = 2` and reports
/// whether it yields the dimension-criterion verdict with `μ` equal to the
/// symmetric/antisymmetric split of the first two coordinates.
pub fn l3_check_for(generators: &[CMatrix]) -> Result<bool, AnalysisError> {
    let report = analyze(generators, 2, &AnalysisConfig::default())?;
    let Some(w) = report.witness else { return Ok(false) };
    Ok(report.verdict == Verdict::ContractibleByDimensionCriterion
        && w.route == Route::B
        && w.mu == l3_expected_mu(w.conductor))
}

/// The swap of the first two coordinates of `C^3`.
pub fn l3_example_check() -> Result<bool, AnalysisError> {
    l3_check_for(&[swap3()])
}

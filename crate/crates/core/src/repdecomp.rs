//! Isotypic decomposition of `C^n` under a finite abelian unitary group.
//!
//! Irreducible representations of an abelian group are one dimensional, so
//! the isotypic components are the simultaneous eigenspaces of the
//! generators, labelled by the tuple of eigenvalues (the character).

use serde::Serialize;
use thiserror::Error;

use crate::cyclonum::{lcm, CycNumber};
use crate::exactla::{eigenpairs_finite_order, CMatrix, CSubspace, LinAlgError};
use crate::matgroup::FiniteMatrixGroup;
use crate::orthopart::{OrthoPartition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("isotypic decomposition is only implemented for abelian groups")]
    NonAbelianUnsupported,
    #[error("subspace is not invariant under the group")]
    NotInvariant,
    #[error("partition is not strongly fixed by the group")]
    NotStronglyFixed,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// One isotypic component: the eigenvalue of each generator, and the space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IsotypicComponent {
    pub character: Vec<CycNumber>,
    #[serde(rename = "basis", serialize_with = "basis_only")]
    pub subspace: CSubspace,
}

fn basis_only<S: serde::Serializer>(v: &CSubspace, s: S) -> Result<S::Ok, S::Error> {
    v.basis().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotypicDecomposition {
    pub conductor: u64,
    /// Components sorted by character.
    pub components: Vec<IsotypicComponent>,
}

impl IsotypicDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_polytypic(&self) -> bool {
        self.components.len() >= 2
    }

    /// The components as a partition of `C^n`; `None` when there is a single
    /// component.
    pub fn to_partition(&self) -> Result<Option<OrthoPartition>, RepError> {
        if !self.is_polytypic() {
            return Ok(None);
        }
        Ok(Some(OrthoPartition::new(self.components.iter().map(|c| c.subspace.clone()).collect())?))
    }
}

/// Simultaneous eigenspace decomposition for an abelian group.
pub fn isotypic_decomposition(j: &FiniteMatrixGroup) -> Result<IsotypicDecomposition, RepError> {
    if !j.is_abelian() {
        return Err(RepError::NonAbelianUnsupported);
    }
    let e = j.exponent();
    let m = lcm(j.conductor(), e);
    let gens = j.generators().iter().map(|g| g.embed(m)).collect::<Result<Vec<_>, _>>().map_err(LinAlgError::from)?;
    decompose(j.n(), m, &gens, e)
}

/// Splits `C^n` by the eigenspaces of each of `gens` in turn. The matrices
/// must commute, satisfy `g^e = I`, and live at a conductor divisible by `e`.
fn decompose(n: usize, m: u64, gens: &[CMatrix], e: u64) -> Result<IsotypicDecomposition, RepError> {
    let mut parts: Vec<(Vec<CycNumber>, CSubspace)> = vec![(Vec::new(), CSubspace::full(n, m))];
    for g in gens {
        let pairs = eigenpairs_finite_order(g, e)?;
        let mut next = Vec::new();
        for (chi, space) in parts {
            for pair in &pairs {
                let piece = space.intersect(&pair.space)?;
                if !piece.is_zero() {
                    let mut c = chi.clone();
                    c.push(pair.value.clone());
                    next.push((c, piece));
                }
            }
        }
        parts = next;
    }
    let mut components: Vec<IsotypicComponent> =
        parts.into_iter().map(|(character, subspace)| IsotypicComponent { character, subspace }).collect();
    components.sort();
    Ok(IsotypicDecomposition { conductor: m, components })
}

/// At least two isotypic components; for abelian `J` this is equivalent to
/// `J` not consisting of scalar matrices.
pub fn is_polytypic(j: &FiniteMatrixGroup) -> Result<bool, RepError> {
    Ok(isotypic_decomposition(j)?.is_polytypic())
}

/// `v` is `J`-invariant and lies inside a single isotypic component.
pub fn is_isotypic_subspace(v: &CSubspace, j: &FiniteMatrixGroup) -> Result<bool, RepError> {
    let dec = isotypic_decomposition(j)?;
    let m = lcm(dec.conductor, v.conductor());
    let v = v.embed(m).map_err(LinAlgError::from)?;
    for g in j.generators() {
        if !v.is_invariant_under(&g.embed(m).map_err(LinAlgError::from)?)? {
            return Err(RepError::NotInvariant);
        }
    }
    if v.is_zero() {
        return Ok(true);
    }
    for c in &dec.components {
        if c.subspace.embed(m).map_err(LinAlgError::from)?.contains(&v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Replaces each class of a strongly `J`-fixed partition by its nonzero
/// intersections with the isotypic components of `J`.
pub fn isotypic_refinement(lambda: &OrthoPartition, j: &FiniteMatrixGroup) -> Result<OrthoPartition, RepError> {
    if !lambda.is_strongly_fixed(j.generators())? {
        return Err(RepError::NotStronglyFixed);
    }
    let dec = isotypic_decomposition(j)?;
    let m = lcm(dec.conductor, lambda.conductor());
    let lambda = lambda.embed(m)?;
    let comps =
        dec.components.iter().map(|c| c.subspace.embed(m)).collect::<Result<Vec<_>, _>>().map_err(LinAlgError::from)?;
    let mut classes = Vec::new();
    for v in lambda.classes() {
        for w in &comps {
            let piece = v.intersect(w)?;
            if !piece.is_zero() {
                classes.push(piece);
            }
        }
    }
    Ok(OrthoPartition::new(classes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::DEFAULT_CLOSURE_CAP;

    fn group(gens: &[CMatrix]) -> FiniteMatrixGroup {
        FiniteMatrixGroup::generate(gens, DEFAULT_CLOSURE_CAP).unwrap()
    }

    fn tau() -> CMatrix {
        CMatrix::from_ints(1, &[&[0, 1], &[1, 0]])
    }

    fn tau3() -> CMatrix {
        CMatrix::from_ints(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])
    }

    #[test]
    fn swap_splits_into_symmetric_and_antisymmetric() {
        let dec = isotypic_decomposition(&group(&[tau()])).unwrap();
        let spaces: Vec<_> = dec.components.iter().map(|c| c.subspace.clone()).collect();
        assert_eq!(dec.len(), 2);
        assert!(spaces.contains(&CSubspace::span_ints(2, 2, &[&[1, 1]])));
        assert!(spaces.contains(&CSubspace::span_ints(2, 2, &[&[1, -1]])));
        for c in &dec.components {
            let expected = if c.subspace.contains_vector(&[CycNumber::one(2), CycNumber::one(2)]) { 1 } else { -1 };
            assert_eq!(c.character, vec![CycNumber::from_int(expected, 2)]);
        }
    }

    #[test]
    fn three_dimensional_swap() {
        let dec = isotypic_decomposition(&group(&[tau3()])).unwrap();
        let mu = dec.to_partition().unwrap().unwrap();
        let expected = OrthoPartition::new(vec![
            CSubspace::span_ints(3, 1, &[&[1, 1, 0], &[0, 0, 1]]),
            CSubspace::span_ints(3, 1, &[&[1, -1, 0]]),
        ])
        .unwrap();
        assert_eq!(mu, expected.embed(2).unwrap());
    }

    #[test]
    fn scalars_are_isotypic() {
        let i = CycNumber::root_of_unity(4, 1);
        let j = group(&[CMatrix::scalar(2, &i)]);
        assert!(!is_polytypic(&j).unwrap());
        assert_eq!(isotypic_decomposition(&j).unwrap().components[0].subspace, CSubspace::full(2, 4));
    }

    #[test]
    fn scalars_with_lift_are_polytypic() {
        let z8 = CycNumber::root_of_unity(8, 1);
        let b = CMatrix::from_rows(vec![
            vec![CycNumber::zero(8), CycNumber::root_of_unity(8, 7)],
            vec![z8.clone(), CycNumber::zero(8)],
        ])
        .unwrap();
        let j = group(&[CMatrix::scalar(2, &CycNumber::root_of_unity(4, 1)), b]);
        assert_eq!(j.order(), 8);
        let dec = isotypic_decomposition(&j).unwrap();
        assert!(dec.is_polytypic());
        let spaces: Vec<_> = dec.components.iter().map(|c| c.subspace.clone()).collect();
        let plus = CSubspace::from_vectors(2, 8, vec![vec![CycNumber::one(8), z8.clone()]]).unwrap();
        let minus = CSubspace::from_vectors(2, 8, vec![vec![CycNumber::one(8), -z8]]).unwrap();
        assert!(spaces.contains(&plus) && spaces.contains(&minus));
    }

    #[test]
    fn isotypic_subspace_predicate() {
        let j = group(&[tau()]);
        assert!(is_isotypic_subspace(&CSubspace::span_ints(2, 1, &[&[1, 1]]), &j).unwrap());
        assert!(!is_isotypic_subspace(&CSubspace::full(2, 1), &j).unwrap());
        assert_eq!(is_isotypic_subspace(&CSubspace::axis(2, 1, 0), &j), Err(RepError::NotInvariant));
    }

    #[test]
    fn refinement_examples() {
        let j = group(&[tau()]);
        let lam = OrthoPartition::new(vec![CSubspace::span_ints(2, 1, &[&[1, 1]]), CSubspace::span_ints(2, 1, &[&[1, -1]])])
            .unwrap();
        assert_eq!(isotypic_refinement(&lam, &j).unwrap(), lam.embed(2).unwrap());

        let d = group(&[CMatrix::from_ints(1, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]])]);
        let lam = OrthoPartition::coordinate(3, 1, &[&[0, 1], &[2]]).unwrap();
        let axes = OrthoPartition::coordinate(3, 2, &[&[0], &[1], &[2]]).unwrap();
        assert_eq!(isotypic_refinement(&lam, &d).unwrap(), axes);

        let axes2 = OrthoPartition::coordinate(2, 1, &[&[0], &[1]]).unwrap();
        assert_eq!(isotypic_refinement(&axes2, &j), Err(RepError::NotStronglyFixed));
    }

    #[test]
    fn non_abelian_rejected() {
        let i = CycNumber::root_of_unity(4, 1);
        let d = CMatrix::diagonal(&[CycNumber::one(4), i]).unwrap();
        let g = group(&[d, CMatrix::from_ints(4, &[&[0, 1], &[1, 0]])]);
        assert_eq!(isotypic_decomposition(&g), Err(RepError::NonAbelianUnsupported));
    }
}

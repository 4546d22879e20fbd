use serde::{Deserialize, Serialize};

use super::{embed_vector, hermitian, null_space, rref, CMatrix, LinAlgError};
use crate::cyclonum::{CycError, CycNumber};

/// A subspace of `C^n` with coordinates in `Q(ζ_m)`.
///
/// The basis is kept in reduced row echelon form (each basis vector has a
/// leading one, pivots increase, pivot columns are zero in the other
/// vectors). This is the unique representative of the subspace, so derived
/// equality is subspace equality and the derived order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CSubspace {
    ambient: usize,
    conductor: u64,
    basis: Vec<Vec<CycNumber>>,
}

impl CSubspace {
    /// Span of arbitrary vectors of length `n` at conductor `m` (entries at
    /// smaller conductors dividing `m` are lifted).
    pub fn from_vectors(n: usize, m: u64, vectors: Vec<Vec<CycNumber>>) -> Result<Self, LinAlgError> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != n {
                return Err(LinAlgError::DimensionMismatch(format!(
                    "vector of length {} in C^{n}",
                    v.len()
                )));
            }
            rows.push(embed_vector(&v, m)?);
        }
        rref(&mut rows);
        Ok(CSubspace { ambient: n, conductor: m, basis: rows })
    }

    /// Span of integer vectors; convenient in tests and examples.
    pub fn span_ints(n: usize, m: u64, vectors: &[&[i64]]) -> Self {
        let vs = vectors
            .iter()
            .map(|v| v.iter().map(|&x| CycNumber::from_int(x, m)).collect())
            .collect();
        Self::from_vectors(n, m, vs).expect("well-formed integer vectors")
    }

    pub fn zero(n: usize, m: u64) -> Self {
        CSubspace { ambient: n, conductor: m, basis: Vec::new() }
    }

    pub fn full(n: usize, m: u64) -> Self {
        let basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { CycNumber::one(m) } else { CycNumber::zero(m) })
                    .collect()
            })
            .collect();
        CSubspace { ambient: n, conductor: m, basis }
    }

    /// The coordinate line `span(e_i)`.
    pub fn axis(n: usize, m: u64, i: usize) -> Self {
        let mut v = vec![CycNumber::zero(m); n];
        v[i] = CycNumber::one(m);
        CSubspace { ambient: n, conductor: m, basis: vec![v] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// The canonical echelon basis.
    pub fn basis(&self) -> &[Vec<CycNumber>] {
        &self.basis
    }

    pub fn embed(&self, m2: u64) -> Result<CSubspace, CycError> {
        if m2 == self.conductor {
            return Ok(self.clone());
        }
        // Echelon form is field independent, so embedding entrywise keeps it canonical.
        let basis = self.basis.iter().map(|v| embed_vector(v, m2)).collect::<Result<_, _>>()?;
        Ok(CSubspace { ambient: self.ambient, conductor: m2, basis })
    }

    fn check_compatible(&self, other: &CSubspace) -> Result<(), LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::DimensionMismatch(format!(
                "subspaces of C^{} and C^{}",
                self.ambient, other.ambient
            )));
        }
        if self.conductor != other.conductor {
            return Err(CycError::ConductorMismatch(self.conductor, other.conductor).into());
        }
        Ok(())
    }

    /// Orthogonal complement under the Hermitian form.
    pub fn orth_complement(&self) -> CSubspace {
        let conj_rows: Vec<Vec<CycNumber>> =
            self.basis.iter().map(|v| v.iter().map(CycNumber::conj).collect()).collect();
        if conj_rows.is_empty() {
            return CSubspace::full(self.ambient, self.conductor);
        }
        let kernel = null_space(&conj_rows, self.ambient, self.conductor);
        CSubspace::from_vectors(self.ambient, self.conductor, kernel).expect("kernel of compatible rows")
    }

    pub fn sum(&self, other: &CSubspace) -> Result<CSubspace, LinAlgError> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rref(&mut rows);
        Ok(CSubspace { ambient: self.ambient, conductor: self.conductor, basis: rows })
    }

    /// `V ∩ W = (V⊥ + W⊥)⊥`; valid because the Hermitian form is anisotropic.
    pub fn intersect(&self, other: &CSubspace) -> Result<CSubspace, LinAlgError> {
        self.check_compatible(other)?;
        Ok(self.orth_complement().sum(&other.orth_complement())?.orth_complement())
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v ∈ self`.
    fn residual(&self, v: &[CycNumber]) -> Vec<CycNumber> {
        let mut r = v.to_vec();
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &[CycNumber]) -> bool {
        self.residual(v).iter().all(CycNumber::is_zero)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &CSubspace) -> Result<bool, LinAlgError> {
        self.check_compatible(other)?;
        Ok(other.dim() <= self.dim() && other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn is_orthogonal_to(&self, other: &CSubspace) -> Result<bool, LinAlgError> {
        self.check_compatible(other)?;
        Ok(self
            .basis
            .iter()
            .all(|u| other.basis.iter().all(|v| hermitian(u, v).is_zero())))
    }

    /// The canonical form of `A · V`.
    pub fn apply(&self, a: &CMatrix) -> Result<CSubspace, LinAlgError> {
        if a.cols() != self.ambient || a.rows() != self.ambient {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} matrix acting on C^{}",
                a.rows(),
                a.cols(),
                self.ambient
            )));
        }
        if a.conductor() != self.conductor {
            return Err(CycError::ConductorMismatch(a.conductor(), self.conductor).into());
        }
        let images = self.basis.iter().map(|v| a.apply_vector(v)).collect();
        Self::from_vectors(self.ambient, self.conductor, images)
    }

    pub fn is_invariant_under(&self, a: &CMatrix) -> Result<bool, LinAlgError> {
        Ok(self.apply(a)? == *self)
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    n: usize,
    m: u64,
    basis: Vec<Vec<CycNumber>>,
}

impl Serialize for CSubspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceRepr { n: self.ambient, m: self.conductor, basis: self.basis.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CSubspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(d)?;
        CSubspace::from_vectors(repr.n, repr.m, repr.basis).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclonum::Rational;

    fn gauss(a: i64, b: i64) -> CycNumber {
        // a + b i at conductor 4
        &CycNumber::from_int(a, 4) + &CycNumber::root_of_unity(4, 1).scale(&Rational::from_integer(b.into()))
    }

    #[test]
    fn complement_of_a_line() {
        let z = gauss(2, 1);
        let line = CSubspace::from_vectors(2, 4, vec![vec![CycNumber::one(4), z.clone()]]).unwrap();
        let perp = line.orth_complement();
        let expected = CSubspace::from_vectors(2, 4, vec![vec![z.conj(), CycNumber::from_int(-1, 4)]]).unwrap();
        assert_eq!(perp, expected);
        // canonical representative is (1, -1/conj(z))
        let minus_inv_conj = -z.conj().inv().unwrap();
        assert_eq!(perp.basis()[0], vec![CycNumber::one(4), minus_inv_conj]);
    }

    #[test]
    fn sum_and_intersection() {
        let a = CSubspace::span_ints(2, 1, &[&[1, 1]]);
        let b = CSubspace::span_ints(2, 1, &[&[1, -1]]);
        assert_eq!(a.sum(&b).unwrap(), CSubspace::full(2, 1));
        assert!(a.intersect(&a.orth_complement()).unwrap().is_zero());
        let p = CSubspace::span_ints(3, 1, &[&[1, 0, 0], &[0, 1, 0]]);
        let q = CSubspace::span_ints(3, 1, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(p.intersect(&q).unwrap(), CSubspace::axis(3, 1, 1));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = CSubspace::span_ints(3, 1, &[&[1, 2, 3], &[0, 1, 1]]);
        let b = CSubspace::span_ints(3, 1, &[&[1, 3, 4], &[2, 5, 7]]);
        assert_eq!(a, b);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = CSubspace::full(2, 1);
        let b = CSubspace::full(3, 1);
        assert!(matches!(a.sum(&b), Err(LinAlgError::DimensionMismatch(_))));
        let c = CSubspace::full(2, 4);
        assert!(a.intersect(&c).is_err());
    }

    #[test]
    fn apply_swaps_axes() {
        let tau = CMatrix::from_ints(1, &[&[0, 1], &[1, 0]]);
        assert_eq!(CSubspace::axis(2, 1, 0).apply(&tau).unwrap(), CSubspace::axis(2, 1, 1));
        assert!(CSubspace::span_ints(2, 1, &[&[1, 1]]).is_invariant_under(&tau).unwrap());
    }
}

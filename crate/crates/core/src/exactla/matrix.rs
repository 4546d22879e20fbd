use std::fmt;

use serde::{Deserialize, Serialize};

use super::{null_space, rref, CSubspace, LinAlgError};
use crate::cyclonum::{lcm, CycError, CycNumber};

/// A dense matrix over `Q(ζ_m)`; all entries share the conductor `m`.
///
/// The derived ordering (shape, conductor, then entries row-major) is the
/// canonical element order used for deterministic group enumeration.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    conductor: u64,
    entries: Vec<CycNumber>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, conductor: u64, entries: Vec<CycNumber>) -> Result<Self, LinAlgError> {
        if rows == 0 || cols == 0 {
            return Err(LinAlgError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|e| if e.conductor() == conductor { Ok(e) } else { e.embed(conductor) })
            .collect::<Result<Vec<_>, CycError>>()?;
        Ok(CMatrix { rows, cols, conductor, entries })
    }

    /// Builds a matrix from rows, lifting entries to the lcm of their conductors.
    pub fn from_rows(rows: Vec<Vec<CycNumber>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        let m = rows.iter().flatten().map(CycNumber::conductor).fold(1, lcm);
        Self::new(r, c, m, rows.into_iter().flatten().collect())
    }

    /// Integer matrix at conductor `m`.
    pub fn from_ints(m: u64, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| CycNumber::from_int(x, m)).collect())
            .collect();
        Self::from_rows(data).expect("well-formed integer matrix")
    }

    pub fn identity(n: usize, m: u64) -> Self {
        Self::scalar(n, &CycNumber::one(m))
    }

    pub fn scalar(n: usize, c: &CycNumber) -> Self {
        let m = c.conductor();
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { c.clone() } else { CycNumber::zero(m) })
            .collect();
        CMatrix { rows: n, cols: n, conductor: m, entries }
    }

    pub fn diagonal(diag: &[CycNumber]) -> Result<Self, LinAlgError> {
        let n = diag.len();
        let m = diag.iter().map(CycNumber::conductor).fold(1, lcm);
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { diag[i].embed(m) } else { Ok(CycNumber::zero(m)) })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize], m: u64) -> Self {
        let n = perm.len();
        let mut entries = vec![CycNumber::zero(m); n * n];
        for (j, &i) in perm.iter().enumerate() {
            entries[i * n + j] = CycNumber::one(m);
        }
        CMatrix { rows: n, cols: n, conductor: m, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<CycNumber>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[CycNumber] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize, LinAlgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinAlgError::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn try_mul(&self, other: &CMatrix) -> Result<CMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.conductor != other.conductor {
            return Err(CycError::ConductorMismatch(self.conductor, other.conductor).into());
        }
        let m = self.conductor;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = CycNumber::zero(m);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                entries.push(acc);
            }
        }
        Ok(CMatrix { rows: self.rows, cols: other.cols, conductor: m, entries })
    }

    /// Product; panics on shape or conductor mismatch.
    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        self.try_mul(other).expect("matrix product of incompatible operands")
    }

    pub fn scale(&self, c: &CycNumber) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).conj());
            }
        }
        CMatrix { rows: self.cols, cols: self.rows, conductor: self.conductor, entries }
    }

    /// `A · A* = I` exactly.
    pub fn is_unitary(&self) -> Result<bool, LinAlgError> {
        let n = self.require_square()?;
        Ok(self.mul(&self.adjoint()) == CMatrix::identity(n, self.conductor))
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(CycNumber::is_one)
    }

    /// The scalar `c` if this matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<&CycNumber> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let ok = if i == j { e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn pow(&self, mut e: u64) -> CMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = CMatrix::identity(self.rows, self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse of a unitary matrix (its adjoint).
    pub fn unitary_inverse(&self) -> CMatrix {
        self.adjoint()
    }

    pub fn embed(&self, m2: u64) -> Result<CMatrix, CycError> {
        if m2 == self.conductor {
            return Ok(self.clone());
        }
        let entries = self.entries.iter().map(|e| e.embed(m2)).collect::<Result<Vec<_>, _>>()?;
        Ok(CMatrix { rows: self.rows, cols: self.cols, conductor: m2, entries })
    }

    pub fn apply_vector(&self, v: &[CycNumber]) -> Vec<CycNumber> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(CycNumber::zero(self.conductor), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// `self - c·I`.
    pub fn minus_scalar(&self, c: &CycNumber) -> CMatrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let k = i * self.cols + i;
            out.entries[k] = &out.entries[k] - c;
        }
        out
    }

    /// `{x : A x = 0}` as a canonical subspace.
    pub fn kernel(&self) -> CSubspace {
        let basis = null_space(&self.row_vecs(), self.cols, self.conductor);
        CSubspace::from_vectors(self.cols, self.conductor, basis).expect("kernel vectors are well formed")
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref(&mut rows).len()
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// An eigenvalue of a finite-order matrix with its eigenspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenpair {
    pub value: CycNumber,
    pub space: CSubspace,
}

/// Eigenvalues and eigenspaces of a matrix `A` with `A^e = I`.
///
/// The eigenvalues of such a matrix are `e`-th roots of unity, so the search
/// runs over `ζ_e^k` for `k = 0..e` in that order. The matrix is lifted to
/// conductor `lcm(m, e)` first when `e` does not divide its conductor, and
/// the returned values and subspaces live at that conductor.
pub fn eigenpairs_finite_order(a: &CMatrix, e: u64) -> Result<Vec<Eigenpair>, LinAlgError> {
    let n = a.require_square()?;
    if e == 0 {
        return Err(LinAlgError::OrderViolation { order: e });
    }
    let m = lcm(a.conductor, e);
    let a = a.embed(m)?;
    if !a.pow(e).is_identity() {
        return Err(LinAlgError::OrderViolation { order: e });
    }
    let mut out = Vec::new();
    let mut total = 0;
    for k in 0..e {
        let zeta = CycNumber::root_of_unity(e, k as i64).embed(m)?;
        let space = a.minus_scalar(&zeta).kernel();
        if space.dim() > 0 {
            total += space.dim();
            out.push(Eigenpair { value: zeta, space });
        }
        if total == n {
            break;
        }
    }
    debug_assert_eq!(total, n, "finite-order matrix must be diagonalizable");
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CMatrixRepr {
    n: usize,
    m: u64,
    rows: Vec<Vec<CycNumber>>,
}

/// Wire form `{"n": 3, "m": 8, "rows": [[scalar, ...], ...]}`.
impl Serialize for CMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CMatrixRepr { n: self.rows, m: self.conductor, rows: self.row_vecs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = CMatrixRepr::deserialize(d)?;
        if repr.rows.len() != repr.n || repr.rows.iter().any(|r| r.len() != repr.n) {
            return Err(D::Error::custom(format!("matrix rows do not form a {0}x{0} grid", repr.n)));
        }
        let entries = repr
            .rows
            .into_iter()
            .flatten()
            .map(|x| {
                if repr.m % x.conductor() != 0 {
                    Err(D::Error::custom(format!(
                        "entry conductor {} does not divide matrix conductor {}",
                        x.conductor(),
                        repr.m
                    )))
                } else {
                    x.embed(repr.m).map_err(D::Error::custom)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        CMatrix::new(repr.n, repr.n, repr.m, entries).map_err(D::Error::custom)
    }
}

//! Exact linear algebra over [`CycNumber`].
//!
//! Vectors are plain `Vec<CycNumber>`. The Hermitian form is
//! `⟨u, v⟩ = Σ u_i · conj(v_i)` everywhere in the crate.

mod matrix;
mod subspace;

use thiserror::Error;

use crate::cyclonum::{CycError, CycNumber};

pub use matrix::{eigenpairs_finite_order, CMatrix, Eigenpair};
pub use subspace::CSubspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix does not satisfy A^{order} = I")]
    OrderViolation { order: u64 },
    #[error("matrix must have at least one row and column")]
    Empty,
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// `⟨u, v⟩ = Σ u_i · conj(v_i)`.
pub fn hermitian(u: &[CycNumber], v: &[CycNumber]) -> CycNumber {
    assert_eq!(u.len(), v.len(), "hermitian product of vectors of different length");
    let m = u.first().map(CycNumber::conductor).unwrap_or(1);
    u.iter()
        .zip(v)
        .fold(CycNumber::zero(m), |acc, (a, b)| &acc + &(a * &b.conj()))
}

pub fn embed_vector(v: &[CycNumber], m: u64) -> Result<Vec<CycNumber>, CycError> {
    v.iter().map(|x| x.embed(m)).collect()
}

/// Row-reduces `rows` in place to reduced row echelon form with leading
/// ones. Returns the pivot columns. Zero rows are dropped.
pub(crate) fn rref(rows: &mut Vec<Vec<CycNumber>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for the matrix with the given rows.
pub(crate) fn null_space(rows: &[Vec<CycNumber>], ncols: usize, m: u64) -> Vec<Vec<CycNumber>> {
    let mut reduced: Vec<Vec<CycNumber>> = rows.to_vec();
    let pivots = rref(&mut reduced);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycNumber::zero(m); ncols];
            v[f] = CycNumber::one(m);
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            v
        })
        .collect()
}

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub s: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    /// Nonzero diagonal entries of `S`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.len().min(self.s.first().map_or(0, Vec::len)))
            .map(|i| self.s[i][i].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut s = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    reduce(&mut s, Some((&mut u, &mut v)));
    SmithForm { u, s, v }
}

/// Nonzero invariant factors of a dense matrix, without transforms.
pub fn dense_invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut s = m.to_vec();
    let k = reduce(&mut s, None);
    (0..k).map(|i| s[i][i].clone()).collect()
}

/// Optional `(U, V)` accumulators for the row and column operations.
type Transforms<'a> = Option<(&'a mut Vec<Vec<BigInt>>, &'a mut Vec<Vec<BigInt>>)>;

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Row op `row_i -= q·row_t`, mirrored on `U`.
fn row_sub(s: &mut [Vec<BigInt>], u: &mut Transforms, i: usize, t: usize, q: &BigInt) {
    let (a, b) = pair_mut(s, i, t);
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
    if let Some((u, _)) = u {
        let (a, b) = pair_mut(u, i, t);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x -= q * y;
        }
    }
}

/// Column op `col_j -= q·col_t`, mirrored on `V`.
fn col_sub(s: &mut [Vec<BigInt>], uv: &mut Transforms, j: usize, t: usize, q: &BigInt) {
    for row in s.iter_mut() {
        let y = row[t].clone();
        row[j] -= q * y;
    }
    if let Some((_, v)) = uv {
        for row in v.iter_mut() {
            let y = row[t].clone();
            row[j] -= q * y;
        }
    }
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = v.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

/// In-place reduction; returns the number of nonzero diagonal entries.
fn reduce(s: &mut [Vec<BigInt>], mut uv: Transforms) -> usize {
    let rows = s.len();
    let cols = s.first().map_or(0, Vec::len);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[i][j].is_zero() && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(s, &mut uv, t, pi);
        swap_cols(s, &mut uv, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !s[i][t].is_zero() {
                    let q = s[i][t].div_floor(&s[t][t]);
                    row_sub(s, &mut uv, i, t, &q);
                    if !s[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !s[t][j].is_zero() {
                    let q = s[t][j].div_floor(&s[t][t]);
                    col_sub(s, &mut uv, j, t, &q);
                    if !s[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // a remainder smaller than the pivot is left in row or column t
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !s[i][t].is_zero() && s[i][t].abs() < s[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !s[t][j].is_zero() && s[t][j].abs() < s[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(s, &mut uv, t, best.0);
                swap_cols(s, &mut uv, t, best.1);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[i][j].is_multiple_of(&s[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_sub(s, &mut uv, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -&*x;
            }
            if let Some((u, _)) = &mut uv {
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        t += 1;
    }
    t
}

fn swap_rows(s: &mut [Vec<BigInt>], uv: &mut Transforms, a: usize, b: usize) {
    if a != b {
        s.swap(a, b);
        if let Some((u, _)) = uv {
            u.swap(a, b);
        }
    }
}

fn swap_cols(s: &mut [Vec<BigInt>], uv: &mut Transforms, a: usize, b: usize) {
    if a != b {
        for row in s.iter_mut() {
            row.swap(a, b);
        }
        if let Some((_, v)) = uv {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
    }
}

/// A sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `columns[j]`: `(row, value)` pairs with nonzero values, rows ascending.
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                d[i as usize][j] = BigInt::from(x);
            }
        }
        d
    }

    /// `self · other`, dense result; used to check `∂∂ = 0`.
    pub fn mul_is_zero(&self, other: &SparseMatrix) -> bool {
        assert_eq!(self.cols, other.rows);
        other.columns.iter().all(|col| {
            let mut acc = std::collections::HashMap::<u32, i128>::new();
            for &(k, y) in col {
                for &(i, x) in &self.columns[k as usize] {
                    *acc.entry(i).or_default() += x as i128 * y as i128;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// Rank and the invariant factors greater than one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankTorsion {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Invariant factors of a sparse matrix. Entries of absolute value one are
/// used as pivots and eliminated in `i64` arithmetic (rows with few entries
/// first); the block that remains without unit entries goes through the
/// dense BigInt reduction. Overflow falls back to the dense path for the
/// whole matrix.
pub fn sparse_invariant_factors(m: &SparseMatrix) -> RankTorsion {
    match eliminate(m) {
        Some(rt) => rt,
        None => rank_torsion(dense_invariant_factors(&m.to_dense())),
    }
}

fn rank_torsion(factors: Vec<BigInt>) -> RankTorsion {
    let rank = factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    RankTorsion { rank, torsion }
}

fn eliminate(m: &SparseMatrix) -> Option<RankTorsion> {
    let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); m.rows];
    let mut col_rows: Vec<HashSet<u32>> = vec![HashSet::new(); m.cols];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, x) in col {
            if x != 0 {
                rows[i as usize].push((j as u32, x));
                col_rows[j].insert(i);
            }
        }
    }
    for r in rows.iter_mut() {
        r.sort_unstable_by_key(|e| e.0);
    }
    let mut alive = vec![true; m.rows];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i as u32))).collect();
    let mut rank = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        if !alive[r] || rows[r].len() != len || len == 0 {
            continue;
        }
        let pivot = rows[r]
            .iter()
            .filter(|e| e.1.abs() == 1)
            .min_by_key(|e| (col_rows[e.0 as usize].len(), e.0))
            .copied();
        let Some((c, u)) = pivot else { continue };
        let pivot_row = std::mem::take(&mut rows[r]);
        alive[r] = false;
        let others: Vec<u32> = col_rows[c as usize].iter().copied().filter(|&i| i as usize != r).collect();
        for r2 in others {
            let r2 = r2 as usize;
            let a = rows[r2].iter().find(|e| e.0 == c).expect("column index is consistent").1;
            let factor = a.checked_mul(u)?;
            let merged = axpy(&rows[r2], &pivot_row, factor)?;
            for &(j, _) in &rows[r2] {
                col_rows[j as usize].remove(&(r2 as u32));
            }
            for &(j, _) in &merged {
                col_rows[j as usize].insert(r2 as u32);
            }
            rows[r2] = merged;
            heap.push(Reverse((rows[r2].len(), r2 as u32)));
        }
        for &(j, _) in &pivot_row {
            col_rows[j as usize].remove(&(r as u32));
        }
        rank += 1;
    }
    let rest: Vec<&Vec<(u32, i64)>> = rows.iter().filter(|r| !r.is_empty()).collect();
    if rest.is_empty() {
        return Some(RankTorsion { rank, torsion: Vec::new() });
    }
    let mut cols: Vec<u32> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let dense: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); cols.len()];
            for &(j, x) in r.iter() {
                row[cols.binary_search(&j).expect("column collected")] = BigInt::from(x);
            }
            row
        })
        .collect();
    let tail = rank_torsion(dense_invariant_factors(&dense));
    Some(RankTorsion { rank: rank + tail.rank, torsion: tail.torsion })
}

/// `x - f·y` on sorted sparse rows; `None` on overflow.
fn axpy(x: &[(u32, i64)], y: &[(u32, i64)], f: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, y[j].1.checked_mul(f)?.checked_neg()?));
            j += 1;
        } else {
            let v = x[i].1.checked_sub(y[j].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|r| (0..cols).map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum()).collect())
            .collect()
    }

    fn sparse(m: &[&[i64]]) -> SparseMatrix {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let columns = (0..cols)
            .map(|j| (0..rows).filter(|&i| m[i][j] != 0).map(|i| (i as u32, m[i][j])).collect())
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    #[test]
    fn single_entry() {
        let f = smith_normal_form(&big(&[&[2]]));
        assert_eq!(f.s, big(&[&[2]]));
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let f = smith_normal_form(&m);
        assert_eq!(matmul(&matmul(&f.u, &m), &f.v), f.s);
        assert_eq!(f.invariant_factors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn rectangular_and_zero() {
        let m = big(&[&[0, 0], &[0, 0], &[0, 0]]);
        assert!(smith_normal_form(&m).invariant_factors().is_empty());
        let m = big(&[&[1, 2, 3], &[4, 5, 6]]);
        let f = smith_normal_form(&m);
        assert_eq!(matmul(&matmul(&f.u, &m), &f.v), f.s);
        assert_eq!(f.invariant_factors(), vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn sparse_matches_dense() {
        let cases: [&[&[i64]]; 3] = [
            &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]],
            &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]],
            &[&[1, -1, 0, 0], &[-1, 0, 1, 0], &[0, 1, -1, 0]],
        ];
        for m in cases {
            let d = rank_torsion(dense_invariant_factors(&big(m)));
            assert_eq!(sparse_invariant_factors(&sparse(m)), d);
        }
        // the triangle boundary mod the cycle relation gives Z/2 torsion
        let rt = sparse_invariant_factors(&sparse(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
        assert_eq!(rt.rank, 3);
        assert_eq!(rt.torsion, vec![BigInt::from(2)]);
    }
}

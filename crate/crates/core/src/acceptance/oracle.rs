//! Slow, independent reference computations used to cross-check the main
//! implementation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::discretia::PartitionPoset;
use crate::exactla::CMatrix;

/// Rank over `Q` by fraction-field elimination.
pub fn rank_q(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest.iter_mut().filter(|r| !r[c].is_zero()) {
            let f = &row[c] / &pivot[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p`.
pub fn rank_mod(m: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = ((x % &pb) + &pb) % &pb;
                    u64::try_from(v).expect("reduced mod p")
                })
                .collect()
        })
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).expect("p prime");
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for x in &mut a[rank][c..] {
            *x = *x * s % p;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest.iter_mut().filter(|r| r[c] != 0) {
            let f = row[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x = (*x + (p - f) * y) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free determinant.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = ((k + 1)..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, r);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Closure of `generators` under multiplication by plain set saturation.
pub fn naive_closure(generators: &[CMatrix]) -> BTreeSet<CMatrix> {
    let mut seen: BTreeSet<CMatrix> = generators.iter().cloned().collect();
    loop {
        let next: BTreeSet<CMatrix> =
            seen.iter().flat_map(|a| generators.iter().map(move |g| a.mul(g))).filter(|x| !seen.contains(x)).collect();
        if next.is_empty() {
            return seen;
        }
        seen.extend(next);
    }
}

/// All chains of the poset, grouped by length (`chains[k]` has `k + 1`
/// elements), listed from `less_than` alone.
pub fn chains(poset: &PartitionPoset) -> Vec<Vec<Vec<usize>>> {
    let n = poset.len();
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while !layer.is_empty() {
        let next = layer
            .iter()
            .flat_map(|c| {
                let top = *c.last().expect("nonempty chain");
                (0..n).filter(move |&j| poset.less_than(top, j)).map(move |j| {
                    let mut d = c.clone();
                    d.push(j);
                    d
                })
            })
            .collect();
        out.push(layer);
        layer = next;
    }
    out
}

/// Dense boundary from `k`-chains to `(k-1)`-chains; `k = 0` gives the
/// augmentation row.
fn boundary(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Vec<Vec<BigInt>> {
    let mut d = vec![vec![BigInt::zero(); upper.len()]; lower.len().max(1)];
    for (j, c) in upper.iter().enumerate() {
        if c.len() == 1 {
            d[0][j] = BigInt::one();
            continue;
        }
        for drop in 0..c.len() {
            let face: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
            let i = lower.iter().position(|f| *f == face).expect("face is a chain");
            d[i][j] = if drop % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        }
    }
    d
}

/// Reduced Betti numbers of the order complex, from degree `-1`, with ranks
/// computed by `rank`.
pub fn reduced_betti_with(poset: &PartitionPoset, rank: impl Fn(&[Vec<BigInt>]) -> usize) -> Vec<u64> {
    let ch = chains(poset);
    let top = ch.len();
    // ranks[k] = rank of the boundary out of k-chains (k = 0 is augmentation)
    let ranks: Vec<usize> = (0..top)
        .map(|k| {
            let lower: &[Vec<usize>] = if k == 0 { &[] } else { &ch[k - 1] };
            rank(&boundary(lower, &ch[k]))
        })
        .collect();
    let mut betti = vec![1 - ranks.first().copied().unwrap_or(0) as u64];
    for k in 0..top {
        let next = ranks.get(k + 1).copied().unwrap_or(0);
        betti.push((ch[k].len() - ranks[k] - next) as u64);
    }
    betti
}

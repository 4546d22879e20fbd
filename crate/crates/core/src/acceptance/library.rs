//! Curated groups and seeded random inputs for the acceptance criteria.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cyclonum::{lcm, totient, CycNumber, Rational};
use crate::exactla::CMatrix;

pub struct CuratedGroup {
    pub name: &'static str,
    pub p: u64,
    pub generators: Vec<CMatrix>,
    pub expected_order: usize,
}

fn z(m: u64, k: i64) -> CycNumber {
    CycNumber::root_of_unity(m, k)
}

fn diag(entries: &[CycNumber]) -> CMatrix {
    CMatrix::diagonal(entries).expect("nonempty diagonal")
}

/// Non-elementary-abelian p-groups of order at most 64.
pub fn curated_groups() -> Vec<CuratedGroup> {
    let one4 = CycNumber::one(4);
    let i = z(4, 1);
    vec![
        CuratedGroup {
            name: "D8",
            p: 2,
            generators: vec![CMatrix::from_ints(1, &[&[0, 1], &[1, 0]]), CMatrix::from_ints(1, &[&[1, 0], &[0, -1]])],
            expected_order: 8,
        },
        CuratedGroup {
            name: "Q8",
            p: 2,
            generators: vec![diag(&[i.clone(), -i.clone()]), CMatrix::from_ints(4, &[&[0, -1], &[1, 0]])],
            expected_order: 8,
        },
        CuratedGroup { name: "Z/4", p: 2, generators: vec![diag(&[i.clone(), one4])], expected_order: 4 },
        CuratedGroup { name: "Z/8", p: 2, generators: vec![diag(&[z(8, 1)])], expected_order: 8 },
        CuratedGroup {
            name: "Heisenberg mod 3",
            p: 3,
            generators: vec![
                CMatrix::permutation(&[1, 2, 0], 3),
                diag(&[CycNumber::one(3), z(3, 1), z(3, 2)]),
            ],
            expected_order: 27,
        },
        CuratedGroup {
            name: "D8 x Z/2",
            p: 2,
            generators: vec![
                CMatrix::from_ints(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
                CMatrix::from_ints(1, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
                CMatrix::from_ints(1, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
            ],
            expected_order: 16,
        },
    ]
}

/// A random element of `Q(ζ_m)` with small rational coefficients.
pub fn random_cyc(rng: &mut ChaCha8Rng, m: u64) -> CycNumber {
    let coeffs = (0..totient(m))
        .map(|_| {
            if rng.gen_bool(0.3) {
                Rational::from_integer(0.into())
            } else {
                Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
            }
        })
        .collect();
    CycNumber::from_reduced(m, coeffs).expect("length matches the totient")
}

/// A random monomial unitary: a permutation matrix times a diagonal of
/// `order`-th roots of unity, written at conductor `m` (`order | m`).
pub fn random_monomial(rng: &mut ChaCha8Rng, n: usize, m: u64, order: u64) -> CMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let step = (m / order) as i64;
    let d: Vec<CycNumber> = (0..n).map(|_| z(m, step * rng.gen_range(0..order as i64))).collect();
    diag(&d).mul(&CMatrix::permutation(&perm, m))
}

/// Like [`random_monomial`] but with a cyclic rotation as the permutation,
/// so the result lies in `μ_order ≀ C_n`.
pub fn random_rotation_monomial(rng: &mut ChaCha8Rng, n: usize, m: u64, order: u64) -> CMatrix {
    let shift = rng.gen_range(0..n);
    let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
    let step = (m / order) as i64;
    let d: Vec<CycNumber> = (0..n).map(|_| z(m, step * rng.gen_range(0..order as i64))).collect();
    diag(&d).mul(&CMatrix::permutation(&perm, m))
}

/// `(1/√2)[[1, 1], [1, -1]]` in the top-left block; needs `8 | m`.
fn hadamard_block(n: usize, m: u64) -> CMatrix {
    let s = (&z(m, (m / 8) as i64) + &z(m, (7 * m / 8) as i64)).scale(&Rational::new(1.into(), 2.into()));
    let mut rows: Vec<Vec<CycNumber>> = CMatrix::identity(n, m).row_vecs();
    rows[0][0] = s.clone();
    rows[0][1] = s.clone();
    rows[1][0] = s.clone();
    rows[1][1] = -s;
    CMatrix::from_rows(rows).expect("square")
}

/// `(1/√3)[ω^{jk}]` in the top-left 3×3 block; needs `12 | m`.
fn fourier_block(n: usize, m: u64) -> CMatrix {
    let root3 = &z(m, (m / 12) as i64) + &z(m, (11 * m / 12) as i64);
    let s = root3.scale(&Rational::new(1.into(), 3.into()));
    let mut rows: Vec<Vec<CycNumber>> = CMatrix::identity(n, m).row_vecs();
    for (j, row) in rows.iter_mut().take(3).enumerate() {
        for (k, x) in row.iter_mut().take(3).enumerate() {
            *x = &s * &z(m, ((j * k) as u64 * m / 3) as i64);
        }
    }
    CMatrix::from_rows(rows).expect("square")
}

/// One random input for the lift property: `A = s·W·D·W⁻¹` with `D` a
/// non-scalar diagonal of p-th roots of unity, `s` a root of unity and `W`
/// unitary, so `A^p = s^p·I`.
pub struct LiftCase {
    pub a: CMatrix,
    pub p: u64,
    pub m: u64,
}

pub fn random_lift_case(rng: &mut ChaCha8Rng) -> LiftCase {
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let conductors: Vec<u64> = (1..=24u64).filter(|m| m.is_multiple_of(p)).collect();
    let m = *conductors.choose(rng).expect("nonempty");
    let n = rng.gen_range(2..=4usize);
    let zp = |k: i64| CycNumber::root_of_unity(p, k).embed(lcm(m, p)).expect("p divides");
    let mm = lcm(m, p);
    let mut d: Vec<CycNumber> = (0..n).map(|_| zp(rng.gen_range(0..p as i64))).collect();
    if d.iter().all(|x| *x == d[0]) {
        d[0] = &d[0] * &zp(1);
    }
    let mut w = random_monomial(rng, n, mm, mm);
    if mm.is_multiple_of(8) && rng.gen_bool(0.5) {
        w = w.mul(&hadamard_block(n, mm));
    }
    if mm.is_multiple_of(12) && n >= 3 && rng.gen_bool(0.5) {
        w = fourier_block(n, mm).mul(&w);
    }
    let k = rng.gen_range(0..mm as i64);
    let s = CycNumber::root_of_unity(mm, k);
    let a = w.mul(&diag(&d)).mul(&w.unitary_inverse()).scale(&s);
    LiftCase { a, p, m: mm }
}

/// Random integer matrix with entries in `[-r, r]`.
pub fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-r..=r)).collect()).collect()
}

/// Random facets on at most `v` vertices.
pub fn random_facets(rng: &mut ChaCha8Rng, v: u32, count: usize, max_size: usize) -> Vec<Vec<u32>> {
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            let mut all: Vec<u32> = (0..v).collect();
            all.shuffle(rng);
            all.truncate(size);
            all
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn curated_orders() {
        for g in curated_groups() {
            let grp = crate::matgroup::FiniteMatrixGroup::generate(&g.generators, 1000).unwrap();
            assert_eq!(grp.order(), g.expected_order, "{}", g.name);
        }
    }

    #[test]
    fn random_lift_inputs_are_unitary_with_scalar_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let c = random_lift_case(&mut rng);
            assert!(c.a.is_unitary().unwrap());
            assert!(c.a.pow(c.p).as_scalar().is_some());
            assert!(c.a.as_scalar().is_none());
        }
    }

    #[test]
    fn special_blocks_are_unitary() {
        assert!(hadamard_block(3, 8).is_unitary().unwrap());
        assert!(fourier_block(3, 12).is_unitary().unwrap());
        assert!(fourier_block(4, 24).is_unitary().unwrap());
    }
}

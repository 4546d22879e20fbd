//! Dense univariate polynomials used by the cyclotomic field code.
//!
//! Coefficient vectors are stored lowest degree first. Integer polynomials
//! are only needed for the cyclotomic polynomials themselves; everything
//! else works over the rationals.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=m).take_while(|d| d * d <= m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut upper: Vec<u64> = out.iter().rev().map(|d| m / d).filter(|&q| q * q != m).collect();
    out.append(&mut upper);
    out
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial with integer coefficients, lowest degree
/// first. Obtained from `x^m - 1` by exact division by `Φ_d` for every
/// proper divisor `d` of `m`. Results are memoized.
///
/// Panics if `m == 0`.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    if let Some(p) = phi_cache().read().expect("phi cache poisoned").get(&m) {
        return Arc::clone(p);
    }
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &phi_d);
    }
    let phi = Arc::new(num);
    phi_cache()
        .write()
        .expect("phi cache poisoned")
        .insert(m, Arc::clone(&phi));
    phi
}

/// Exact quotient of integer polynomials by a monic divisor.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Reduces `coeffs` (any length) modulo the monic integer polynomial `modulus`,
/// returning exactly `deg(modulus)` coefficients.
pub fn reduce_mod_monic(mut coeffs: Vec<Rational>, modulus: &[BigInt]) -> Vec<Rational> {
    let deg = modulus.len() - 1;
    if coeffs.len() > deg {
        let nonzero: Vec<(usize, &BigInt)> = modulus[..deg]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for k in (deg..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[k], Rational::zero());
            let shift = k - deg;
            for &(j, mj) in &nonzero {
                let term = &c * Rational::from_integer(mj.clone());
                coeffs[shift + j] -= term;
            }
        }
    }
    coeffs.resize(deg, Rational::zero());
    coeffs
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Quotient and remainder of rational polynomials. `den` must be nonzero.
pub fn divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = degree(den).expect("polynomial division by zero");
    let lead_inv = den[dd].recip();
    let mut rem: Vec<Rational> = num.to_vec();
    trim(&mut rem);
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[k + j] -= t;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    // a - q*b
    let len = a.len().max(if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 });
    let mut out = vec![Rational::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    trim(&mut out);
    out
}

/// Returns `s` with `a * s ≡ 1 (mod modulus)`, or `None` if `a` and the
/// modulus share a nontrivial factor (for an irreducible modulus: `a ≡ 0`).
pub fn inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0: Vec<Rational> = modulus.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s2 = sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; invertible iff it is a nonzero constant.
    if degree(&r0) != Some(0) {
        return None;
    }
    let g_inv = r0[0].recip();
    Some(s0.into_iter().map(|c| c * &g_inv).collect())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub(crate) fn int_poly_to_rational(p: &[BigInt]) -> Vec<Rational> {
    p.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

#[allow(dead_code)]
pub(crate) fn max_abs(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

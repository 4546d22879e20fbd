//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`CycNumber`] stores its conductor `m` together with the `φ(m)`
//! rational coefficients of its power-basis representation, reduced modulo
//! the cyclotomic polynomial `Φ_m`. The remainder is unique, so equality,
//! hashing and ordering are plain coefficient comparisons at a shared
//! conductor.
//!
//! Arithmetic between numbers of different conductors is an error; callers
//! move both operands to a common conductor with [`CycNumber::embed`].

mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use poly::{cyclotomic_polynomial, divisors, gcd, is_prime, lcm, totient};

/// Rational coefficient type.
pub type Rational = num_rational::BigRational;

/// Largest conductor the library will construct unless told otherwise.
pub const DEFAULT_CONDUCTOR_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    NotADivisor { from: u64, to: u64 },
    #[error("conductor {requested} exceeds the cap {cap}")]
    ConductorOverflow { requested: u64, cap: u64 },
    #[error("invalid conductor {0}")]
    InvalidConductor(u64),
    #[error("expected {expected} coefficients for conductor {m}, got {got}")]
    CoefficientCount { m: u64, expected: usize, got: usize },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// An element of `Q(ζ_m)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNumber {
    conductor: u64,
    coeffs: Vec<Rational>,
}

fn check_conductor(m: u64) -> Result<(), CycError> {
    if m == 0 {
        Err(CycError::InvalidConductor(m))
    } else {
        Ok(())
    }
}

pub fn check_cap(m: u64, cap: u64) -> Result<(), CycError> {
    if m > cap {
        Err(CycError::ConductorOverflow { requested: m, cap })
    } else {
        Ok(())
    }
}

impl CycNumber {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        CycNumber { conductor: m, coeffs: vec![Rational::zero(); totient(m) as usize] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(Rational::one(), m)
    }

    pub fn from_rational(q: Rational, m: u64) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(i: i64, m: u64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(i)), m)
    }

    /// `ζ_m^k`, with `k` taken modulo `m`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::from_power_coeffs(m, v)
    }

    /// Builds `Σ coeffs[k] ζ_m^k` from a coefficient vector of any length.
    pub fn from_power_coeffs(m: u64, coeffs: Vec<Rational>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let mut folded = vec![Rational::zero(); m as usize];
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                folded[k % m as usize] += c;
            }
        }
        let phi = cyclotomic_polynomial(m);
        CycNumber { conductor: m, coeffs: poly::reduce_mod_monic(folded, &phi) }
    }

    /// Builds a number from already-reduced coefficients (length `φ(m)`).
    pub fn from_reduced(m: u64, coeffs: Vec<Rational>) -> Result<Self, CycError> {
        check_conductor(m)?;
        let expected = totient(m) as usize;
        if coeffs.len() != expected {
            return Err(CycError::CoefficientCount { m, expected, got: coeffs.len() });
        }
        Ok(CycNumber { conductor: m, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this number lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_conductor(&self, other: &Self) -> Result<(), CycError> {
        if self.conductor == other.conductor {
            Ok(())
        } else {
            Err(CycError::ConductorMismatch(self.conductor, other.conductor))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.same_conductor(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycNumber { conductor: self.conductor, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.same_conductor(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycNumber { conductor: self.conductor, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.same_conductor(other)?;
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(q));
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(q));
        }
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let phi = cyclotomic_polynomial(self.conductor);
        Ok(CycNumber { conductor: self.conductor, coeffs: poly::reduce_mod_monic(prod, &phi) })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_m`.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip(), self.conductor));
        }
        let modulus = poly::int_poly_to_rational(&cyclotomic_polynomial(self.conductor));
        let s = poly::inverse_mod(&self.coeffs, &modulus).ok_or(CycError::DivisionByZero)?;
        Ok(Self::from_power_coeffs(self.conductor, s))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex conjugation, `ζ_m ↦ ζ_m^{m-1}`.
    pub fn conj(&self) -> Self {
        if self.as_rational().is_some() {
            return self.clone();
        }
        let m = self.conductor as usize;
        let mut v = vec![Rational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(m - k) % m] += c;
            }
        }
        Self::from_power_coeffs(self.conductor, v)
    }

    /// True when the number equals its conjugate (a totally real number).
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// The same field element written at conductor `m2`, a multiple of the
    /// current conductor. Uses [`DEFAULT_CONDUCTOR_CAP`].
    pub fn embed(&self, m2: u64) -> Result<Self, CycError> {
        self.embed_with_cap(m2, DEFAULT_CONDUCTOR_CAP)
    }

    pub fn embed_with_cap(&self, m2: u64, cap: u64) -> Result<Self, CycError> {
        check_conductor(m2)?;
        if !m2.is_multiple_of(self.conductor) {
            return Err(CycError::NotADivisor { from: self.conductor, to: m2 });
        }
        check_cap(m2, cap)?;
        if m2 == self.conductor {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.clone(), m2));
        }
        let f = (m2 / self.conductor) as usize;
        let mut v = vec![Rational::zero(); (self.coeffs.len() - 1) * f + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * f] = c.clone();
        }
        Ok(Self::from_power_coeffs(m2, v))
    }

    /// If this number is a root of unity, its multiplicative order.
    ///
    /// The roots of unity in `Q(ζ_m)` are `±ζ_m^k`, so the search is finite.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let m = self.conductor;
        let bound = if m.is_multiple_of(2) { m } else { 2 * m };
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Display-only floating point approximation `(re, im)`.
    pub fn approx(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * k as f64 / m;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.conductor)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn expect_same(a: &CycNumber, b: &CycNumber) {
    assert_eq!(
        a.conductor, b.conductor,
        "cyclotomic arithmetic across conductors {} and {}",
        a.conductor, b.conductor
    );
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        expect_same(self, rhs);
        self.try_add(rhs).expect("conductors checked")
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        expect_same(self, rhs);
        self.try_sub(rhs).expect("conductors checked")
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        expect_same(self, rhs);
        self.try_mul(rhs).expect("conductors checked")
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl Add for CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: CycNumber) -> CycNumber {
        &self + &rhs
    }
}

impl Sub for CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: CycNumber) -> CycNumber {
        &self - &rhs
    }
}

impl Mul for CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: CycNumber) -> CycNumber {
        &self * &rhs
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, CycError> {
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| CycError::BadRational(s.into()))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| CycError::BadRational(s.into()))?;
            if d.is_zero() {
                return Err(CycError::BadRational(s.into()));
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| CycError::BadRational(s.into())),
    }
}

/// Wire form: `{"m": 8, "coeffs": ["1/2","0","-1/3","0"]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycNumberRepr {
    m: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumberRepr { m: self.conductor, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CycNumberRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        CycNumber::from_reduced(repr.m, coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn z(m: u64, k: i64) -> CycNumber {
        CycNumber::root_of_unity(m, k)
    }

    #[test]
    fn zeta3_plus_zeta3_squared_is_minus_one() {
        assert_eq!(&z(3, 1) + &z(3, 2), CycNumber::from_int(-1, 3));
    }

    #[test]
    fn additive_identity_and_rational_sum() {
        let x = &z(5, 2) + &CycNumber::from_rational(q(3, 4), 5);
        assert_eq!(&x + &CycNumber::zero(5), x);
        let s = &CycNumber::from_rational(q(1, 2), 1) + &CycNumber::from_rational(q(1, 3), 1);
        assert_eq!(s, CycNumber::from_rational(q(5, 6), 1));
    }

    #[test]
    fn mismatched_conductors_error() {
        assert_eq!(z(3, 1).try_add(&z(4, 1)), Err(CycError::ConductorMismatch(3, 4)));
        assert!(z(3, 1).try_mul(&z(4, 1)).is_err());
    }

    #[test]
    fn multiplication_and_inverse_examples() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNumber::from_int(-1, 4));
        assert_eq!(z(8, 1).inv().unwrap(), z(8, 7));
        assert_eq!(CycNumber::from_int(2, 1).inv().unwrap(), CycNumber::from_rational(q(1, 2), 1));
        assert_eq!(CycNumber::zero(7).inv(), Err(CycError::DivisionByZero));
    }

    #[test]
    fn inverse_of_generic_element() {
        let a = CycNumber::from_power_coeffs(12, vec![q(1, 2), q(-3, 1), q(0, 1), q(2, 7)]);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(z(5, 1).conj(), z(5, 4));
        let a = &CycNumber::from_rational(q(1, 2), 5) + &z(5, 1).scale(&q(1, 3));
        let expected = &CycNumber::from_rational(q(1, 2), 5) + &z(5, 4).scale(&q(1, 3));
        assert_eq!(a.conj(), expected);
        assert_eq!(CycNumber::from_int(-1, 5).conj(), CycNumber::from_int(-1, 5));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(z(4, 1).embed(8).unwrap(), z(8, 2));
        let r = CycNumber::from_rational(q(3, 7), 1);
        assert_eq!(r.embed(12).unwrap(), CycNumber::from_rational(q(3, 7), 12));
        // ζ3 = ζ6^2 = ζ6 - 1 since Φ6 = x^2 - x + 1.
        let e = z(3, 1).embed(6).unwrap();
        assert_eq!(e, z(6, 2));
        assert_eq!(e, &z(6, 1) - &CycNumber::one(6));
        assert_eq!(
            z(4, 1).embed(6),
            Err(CycError::NotADivisor { from: 4, to: 6 })
        );
        assert_eq!(
            z(4, 1).embed_with_cap(16, 8),
            Err(CycError::ConductorOverflow { requested: 16, cap: 8 })
        );
    }

    #[test]
    fn root_of_unity_orders() {
        for m in 1..=24u64 {
            for k in 0..m as i64 {
                let w = z(m, k);
                assert!(w.pow(m).is_one());
                let expected = m / gcd(m, k as u64);
                assert_eq!(w.root_of_unity_order(), Some(expected), "m={m} k={k}");
            }
        }
        // -ζ3 has order 6 inside Q(ζ3).
        assert_eq!((-z(3, 1)).root_of_unity_order(), Some(6));
        assert_eq!(CycNumber::from_int(2, 4).root_of_unity_order(), None);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let a = CycNumber::from_power_coeffs(8, vec![q(1, 2), q(0, 1), q(-1, 3)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"m":8,"coeffs":["1/2","0","-1/3","0"]}"#);
        let back: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<CycNumber>(r#"{"m":8,"coeffs":["1"]}"#).is_err());
        assert!(serde_json::from_str::<CycNumber>(r#"{"m":1,"coeffs":["1/0"]}"#).is_err());
    }

    #[test]
    fn display_is_readable() {
        let a = CycNumber::from_power_coeffs(8, vec![q(1, 2), q(0, 1), q(-1, 3)]);
        assert_eq!(a.to_string(), "1/2 - 1/3*z8^2");
        assert_eq!(CycNumber::zero(3).to_string(), "0");
    }
}

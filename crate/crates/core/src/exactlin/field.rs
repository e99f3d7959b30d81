//! Exact scalar fields: the rationals and prime fields 𝔽_p.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinAlgError;

/// Largest modulus accepted for a prime field. Residues are stored in `u64`
/// and products of two residues must not overflow.
pub const MAX_PRIME: u64 = 1 << 31;

/// Which field a complex lives over. This is the serializable description;
/// arithmetic goes through the [`Field`] implementations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    PrimeField(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinAlgError;

    /// Accepts `Q`, `F<p>` and `Fp<p>` (e.g. `F2`, `Fp3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp")
            .or_else(|| s.strip_prefix("F"))
            .ok_or_else(|| LinAlgError::BadField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| LinAlgError::BadField(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::PrimeField(p))
    }
}

/// Arithmetic of an exact field. The field is a value (a prime field
/// carries its modulus), elements are plain data.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Canonical text form: integers as `a`, rationals as `a/b`.
    fn format(&self, a: &Self::Elem) -> String;
    /// Parses the canonical text form. Prime-field input must already be a
    /// reduced residue.
    fn parse(&self, s: &str) -> Result<Self::Elem, LinAlgError>;

    /// `a + b * c`, the elimination step.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The field ℚ, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, LinAlgError> {
        let bad = || LinAlgError::BadScalar(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                // Only lowest terms with a positive denominator are accepted.
                if !d.is_positive() || !n.gcd(&d).is_one() {
                    return Err(bad());
                }
                Ok(BigRational::new_raw(n, d))
            }
        }
    }
}

/// 𝔽_p for a prime `p < 2^31`; residues live in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if p < 2 || p >= MAX_PRIME || !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, LinAlgError> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| LinAlgError::BadScalar(s.to_string()))?;
        if v >= self.p {
            return Err(LinAlgError::BadScalar(s.to_string()));
        }
        Ok(v)
    }
    fn mul_add(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + b * c % self.p) % self.p
    }
}

/// Converts a rational to `i64` when it is an integer in range.
pub fn rational_as_i64(a: &BigRational) -> Option<i64> {
    if a.is_integer() {
        a.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rejects_composite_and_huge_moduli() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(MAX_PRIME + 11).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn rational_text_form() {
        let q = Rationals;
        let x = q.parse("-6/4");
        assert!(x.is_err(), "non-reduced fractions are rejected");
        let x = q.parse("-3/2").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert_eq!(q.format(&q.from_i64(5)), "5");
        assert!(q.parse("1/-2").is_err());
        assert!(q.parse("1/0").is_err());
        let big = q.parse("1000000000000000000000000000000").unwrap();
        assert_eq!(q.format(&q.mul(&big, &big)).len(), 61);
    }

    #[test]
    fn field_spec_text() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(2));
        assert_eq!("Fp3".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(3));
        assert!("F4".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::PrimeField(5).to_string(), "F5");
    }
}

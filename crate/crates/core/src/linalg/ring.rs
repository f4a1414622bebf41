use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact scalar. Over `Z` and `Z/m` the denominator is always one and, for
/// `Z/m`, the numerator is the canonical representative in `[0, m)`.
pub type Scalar = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroundRing {
    Integers,
    IntegersMod(u64),
    Rationals,
}

impl GroundRing {
    pub fn modulo(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("Z/{m}: modulus must be at least 2")));
        }
        Ok(GroundRing::IntegersMod(m))
    }

    pub fn modulus(&self) -> Option<BigInt> {
        match self {
            GroundRing::IntegersMod(m) => Some(BigInt::from(*m)),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            GroundRing::Rationals => true,
            GroundRing::IntegersMod(m) => is_prime(*m),
            GroundRing::Integers => false,
        }
    }

    /// Canonical representative of an integer.
    pub fn reduce_int(&self, a: &BigInt) -> BigInt {
        match self {
            GroundRing::IntegersMod(m) => a.mod_floor(&BigInt::from(*m)),
            _ => a.clone(),
        }
    }

    /// Canonical form of a scalar in this ring.
    ///
    /// Panics if a non-integral rational is pushed into `Z`, or into `Z/m`
    /// with a denominator that is not invertible mod `m`.
    pub fn normalize(&self, q: Scalar) -> Scalar {
        match self {
            GroundRing::Rationals => q,
            GroundRing::Integers => {
                assert!(q.is_integer(), "non-integral scalar {q} over Z");
                q
            }
            GroundRing::IntegersMod(m) => {
                let m = BigInt::from(*m);
                let num = q.numer().mod_floor(&m);
                let value = if q.denom().is_one() {
                    num
                } else {
                    let inv = mod_inverse(q.denom(), &m)
                        .unwrap_or_else(|| panic!("denominator of {q} not invertible mod {m}"));
                    (num * inv).mod_floor(&m)
                };
                Scalar::from_integer(value)
            }
        }
    }

    pub fn from_int(&self, a: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(a)))
    }

    pub fn is_zero(&self, q: &Scalar) -> bool {
        self.normalize(q.clone()).is_zero()
    }

    pub fn is_unit(&self, q: &Scalar) -> bool {
        match self {
            GroundRing::Rationals => !q.is_zero(),
            GroundRing::Integers => q.is_integer() && q.numer().abs().is_one(),
            GroundRing::IntegersMod(m) => {
                let q = self.normalize(q.clone());
                q.numer().gcd(&BigInt::from(*m)).is_one()
            }
        }
    }

    pub fn is_unit_int(&self, a: &BigInt) -> bool {
        self.is_unit(&Scalar::from_integer(a.clone()))
    }

    pub fn inverse(&self, q: &Scalar) -> Option<Scalar> {
        match self {
            GroundRing::Rationals => (!q.is_zero()).then(|| q.recip()),
            GroundRing::Integers => self.is_unit(q).then(|| q.clone()),
            GroundRing::IntegersMod(m) => {
                let m = BigInt::from(*m);
                let a = self.normalize(q.clone());
                mod_inverse(a.numer(), &m).map(Scalar::from_integer)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }
}

impl fmt::Display for GroundRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundRing::Integers => write!(f, "Z"),
            GroundRing::IntegersMod(m) => write!(f, "Z/{m}"),
            GroundRing::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for GroundRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" | "ZZ" => Ok(GroundRing::Integers),
            "Q" | "QQ" => Ok(GroundRing::Rationals),
            _ => {
                let m = s
                    .strip_prefix("Z/")
                    .or_else(|| s.strip_prefix("ZZ/"))
                    .ok_or_else(|| Error::InvalidRing(format!("unknown ring `{s}`")))?;
                let m: u64 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidRing(format!("bad modulus in `{s}`")))?;
                GroundRing::modulo(m)
            }
        }
    }
}

impl From<GroundRing> for String {
    fn from(r: GroundRing) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for GroundRing {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

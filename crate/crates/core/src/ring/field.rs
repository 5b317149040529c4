use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalars are stored as rationals for every field. Over a prime field the
/// value is always an integer in `0..p`.
pub type Scalar = BigRational;

/// The coefficient field of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientField::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => *p,
        }
    }

    fn residue(p: u64, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
    }

    fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u128;
        let m = p as u128;
        let mut b = (base % p) as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        acc as u64
    }

    fn from_residue(r: u64) -> Scalar {
        BigRational::from_integer(BigInt::from(r))
    }

    /// Maps an arbitrary rational into the field.
    pub fn coerce(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            CoefficientField::Rationals => Ok(q.clone()),
            CoefficientField::PrimeField(p) => {
                let num = Self::residue(*p, q.numer());
                let den = Self::residue(*p, q.denom());
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let inv = Self::pow_mod(den, p - 2, *p);
                Ok(Self::from_residue(
                    ((num as u128 * inv as u128) % *p as u128) as u64,
                ))
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            CoefficientField::Rationals => BigRational::from_integer(n.clone()),
            CoefficientField::PrimeField(p) => Self::from_residue(Self::residue(*p, n)),
        }
    }

    pub fn zero(&self) -> Scalar {
        BigRational::zero()
    }

    pub fn one(&self) -> Scalar {
        BigRational::one()
    }

    fn as_residue(q: &Scalar) -> u64 {
        q.numer().to_u64().expect("prime field scalar out of range")
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoefficientField::Rationals => a + b,
            CoefficientField::PrimeField(p) => {
                let s = (Self::as_residue(a) as u128 + Self::as_residue(b) as u128) % *p as u128;
                Self::from_residue(s as u64)
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            CoefficientField::Rationals => -a,
            CoefficientField::PrimeField(p) => {
                let r = Self::as_residue(a);
                Self::from_residue(if r == 0 { 0 } else { p - r })
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoefficientField::Rationals => a * b,
            CoefficientField::PrimeField(p) => {
                let s = (Self::as_residue(a) as u128 * Self::as_residue(b) as u128) % *p as u128;
                Self::from_residue(s as u64)
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            CoefficientField::Rationals => Ok(a.recip()),
            CoefficientField::PrimeField(p) => {
                Ok(Self::from_residue(Self::pow_mod(Self::as_residue(a), p - 2, *p)))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// True when the scalar is a valid canonical element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match self {
            CoefficientField::Rationals => true,
            CoefficientField::PrimeField(p) => {
                a.is_integer() && !a.is_negative() && a.numer() < &BigInt::from(*p)
            }
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::PrimeField(p) => write!(f, "ZZ/{p}"),
        }
    }
}

//! Coefficient fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coefficient field a ring is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    Prime(u32),
}

impl FieldKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldKind::Rationals => Ok(()),
            FieldKind::Prime(p) if (2..1 << 31).contains(&p) && is_prime(p) => Ok(()),
            FieldKind::Prime(p) => Err(Error::Input(format!("characteristic {p} is not a prime below 2^31"))),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of an exact coefficient field.
///
/// Constants are minted through [`Field::from_integer`], which takes the ring's
/// [`FieldKind`] so that prime-field elements know their modulus.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Whether this element type can represent the given field.
    fn supports(kind: &FieldKind) -> bool;
    fn from_integer(n: &BigInt, kind: &FieldKind) -> Result<Self>;
    /// `num / den`, failing when `den` vanishes in the field.
    fn from_fraction(num: &BigInt, den: &BigInt, kind: &FieldKind) -> Result<Self> {
        let n = Self::from_integer(num, kind)?;
        let d = Self::from_integer(den, kind)?;
        if d.is_zero() {
            return Err(Error::Input(format!("denominator {den} vanishes in {kind}")));
        }
        Ok(n.mul(&d.inv()))
    }
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    /// True when the printed form should carry a leading minus sign.
    fn is_negative_display(&self) -> bool;
    /// Absolute value for display purposes.
    fn abs_display(&self) -> Self;
}

pub(crate) fn small(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Rational numbers with arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(pub BigRational);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    fn supports(kind: &FieldKind) -> bool {
        matches!(kind, FieldKind::Rationals)
    }
    fn from_integer(n: &BigInt, kind: &FieldKind) -> Result<Self> {
        if !Self::supports(kind) {
            return Err(Error::RingMismatch(format!("rational coefficient in {kind}")));
        }
        Ok(Rational(BigRational::from_integer(n.clone())))
    }
    fn zero_like(&self) -> Self {
        Rational(BigRational::zero())
    }
    fn one_like(&self) -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }
    fn is_negative_display(&self) -> bool {
        self.0.is_negative()
    }
    fn abs_display(&self) -> Self {
        Rational(self.0.abs())
    }
}

/// Element of the prime field GF(p); the modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: u64, modulus: u32) -> Self {
        Fp {
            value: (value % modulus as u64) as u32,
            modulus,
        }
    }
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    fn supports(kind: &FieldKind) -> bool {
        matches!(kind, FieldKind::Prime(_))
    }
    fn from_integer(n: &BigInt, kind: &FieldKind) -> Result<Self> {
        let FieldKind::Prime(p) = *kind else {
            return Err(Error::RingMismatch(format!("prime-field coefficient in {kind}")));
        };
        let r = n.mod_floor(&BigInt::from(p));
        Ok(Fp::new(r.to_u64().expect("reduced residue fits"), p))
    }
    fn zero_like(&self) -> Self {
        Fp::new(0, self.modulus)
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::new(self.value as u64 + other.value as u64, self.modulus)
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::new(
            self.value as u64 + self.modulus as u64 - other.value as u64,
            self.modulus,
        )
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::new(self.value as u64 * other.value as u64, self.modulus)
    }
    fn neg(&self) -> Self {
        Fp::new(self.modulus as u64 - self.value as u64, self.modulus)
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Fp::new(acc, self.modulus)
    }
    fn is_negative_display(&self) -> bool {
        false
    }
    fn abs_display(&self) -> Self {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldKind::Prime(101).validate().is_ok());
        assert!(FieldKind::Prime(100).validate().is_err());
        assert!(FieldKind::Prime(1).validate().is_err());
    }

    #[test]
    fn fp_inverse() {
        let k = FieldKind::Prime(101);
        for n in 1..101 {
            let a = Fp::from_integer(&small(n), &k).unwrap();
            assert!(a.mul(&a.inv()).is_one());
        }
        let m = Fp::from_integer(&small(-1), &k).unwrap();
        assert_eq!(m.value(), 100);
    }

    #[test]
    fn fraction_with_vanishing_denominator() {
        let k = FieldKind::Prime(7);
        assert!(Fp::from_fraction(&small(1), &small(14), &k).is_err());
        let half = Fp::from_fraction(&small(1), &small(2), &k).unwrap();
        assert_eq!(half.value(), 4);
    }
}

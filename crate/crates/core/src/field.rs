//! Exact coefficient fields.
//!
//! Two backends implement [`Field`]: the rationals [`Q`] (arbitrary
//! precision, the default everywhere) and the prime fields [`Fp`], selected
//! at compile time through a const parameter. No floating point is used
//! anywhere in the crate.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The rationals.
pub type Q = BigRational;

/// The default prime field used for heavy Betti computations.
pub type Fp32003 = Fp<32003>;

/// An exact field.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u64;

    /// Short human-readable name, e.g. `Q` or `F_32003`.
    fn name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn name() -> String {
        "Q".to_string()
    }
}

/// Builds a rational `num/den`.
///
/// Panics if `den` is zero.
pub fn rational(num: i64, den: i64) -> Q {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Element of the prime field `F_P`. `P` must be a prime below `2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(P >= 2 && P < (1u64 << 32), "modulus must lie in [2, 2^32)");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v.rem_euclid(P as i64) as u64)
    }

    /// Canonical representative in `0..P`.
    pub fn value(self) -> u64 {
        self.0
    }

    /// Reduction of a rational number; `None` when `P` divides the denominator.
    pub fn from_rational(q: &Q) -> Option<Self> {
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        Fp(den).inv().map(|d| Fp(num) * d)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Prints the symmetric representative, so `-1` reads as `-1` rather than `P-1`.
impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp::new(1)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn characteristic() -> u64 {
        P
    }

    fn name() -> String {
        format!("F_{}", P)
    }
}

/// Integer square root test for the rationals: returns `Some(r)` with
/// `r*r == q` when `q` is the square of a rational.
pub fn rational_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        for v in 1..200 {
            let a = Fp32003::new(v);
            assert_eq!(a * a.inv().unwrap(), Fp32003::one());
        }
        assert!(Fp32003::zero().inv().is_none());
    }

    #[test]
    fn fp_negative_reduction() {
        assert_eq!(Fp::<7>::new(-1).value(), 6);
        assert_eq!(Fp::<7>::new(-1).to_string(), "-1");
        assert_eq!((Fp::<7>::new(3) - Fp::<7>::new(5)).value(), 5);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let half = rational(1, 2);
        let h = Fp::<7>::from_rational(&half).unwrap();
        assert_eq!(h * Fp::new(2), Fp::one());
        assert!(Fp::<7>::from_rational(&rational(1, 7)).is_none());
        assert_eq!(Fp::<7>::from_rational(&rational(-3, 1)).unwrap().value(), 4);
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(<Q as Field>::one().checked_div(&<Q as Field>::zero()).is_none());
        assert!(Fp32003::one().checked_div(&Fp32003::zero()).is_none());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rational(9, 4)), Some(rational(3, 2)));
        assert_eq!(rational_sqrt(&rational(2, 1)), None);
        assert_eq!(rational_sqrt(&rational(-4, 1)), None);
    }
}

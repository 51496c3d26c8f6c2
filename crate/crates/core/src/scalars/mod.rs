//! Involutive commutative semirings and the scalar algebra built on them.
//!
//! Every scalar type implements [`Semiring`]; the richer capabilities
//! (negatives, inverses, square roots of positives) are layered as
//! [`Ring`], [`Field`] and [`FloatScalar`]. Tolerance-aware equality is
//! centralized in [`Tolerance`] and used by every downstream module.

mod algebra;
mod difference;
mod impls;
mod value;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use algebra::{
    classify_involution, phased_ring_decompose, polar_decompose, selfadjoint_parts,
    InvolutionClass, PhasedRingSplit,
};
pub use difference::DifferenceRingElement;
pub use impls::NonNegRational;
pub use num_rational::BigRational;
pub use value::{difference_ring_eq, difference_ring_lift, ScalarValue};

/// Identifier of a concrete scalar ring, as used in files and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingId {
    #[serde(rename = "complex64")]
    Complex64,
    #[serde(rename = "real64")]
    Real64,
    #[serde(rename = "nnrational")]
    NonNegRational,
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "boolean")]
    Boolean,
}

impl RingId {
    pub const ALL: [RingId; 5] = [
        RingId::Complex64,
        RingId::Real64,
        RingId::NonNegRational,
        RingId::Rational,
        RingId::Boolean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RingId::Complex64 => "complex64",
            RingId::Real64 => "real64",
            RingId::NonNegRational => "nnrational",
            RingId::Rational => "rational",
            RingId::Boolean => "boolean",
        }
    }

    pub fn flags(self) -> RingFlags {
        match self {
            RingId::Complex64 => Complex64::FLAGS,
            RingId::Real64 => f64::FLAGS,
            RingId::NonNegRational => NonNegRational::FLAGS,
            RingId::Rational => BigRational::FLAGS,
            RingId::Boolean => bool::FLAGS,
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RingId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownRing(s.to_string()))
    }
}

/// Declared structural properties of a ring.
///
/// `bounded` and the square-root flag are order-theoretic statements about
/// infinitely many elements; they are declared per ring, never decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFlags {
    pub has_negatives: bool,
    pub has_square_roots: bool,
    pub all_nonzero_invertible: bool,
    pub bounded: bool,
    pub zero_sum_free: bool,
    pub exact: bool,
}

/// Hybrid absolute/relative tolerance: `|a - b| <= abs + rel * max(|a|, |b|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        abs: 1e-9,
        rel: 1e-9,
    };

    /// Same value for the absolute and relative parts.
    pub fn new(tol: f64) -> Self {
        Tolerance { abs: tol, rel: tol }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Tolerance {
            abs: self.abs * factor,
            rel: self.rel * factor,
        }
    }

    /// True when a difference of size `diff` is negligible next to quantities of size `scale`.
    pub fn accepts(&self, diff: f64, scale: f64) -> bool {
        diff <= self.abs + self.rel * scale
    }

    /// Rank threshold used by Gram–Schmidt: `abs * max(1, norm)`.
    pub fn rank_threshold(&self, norm: f64) -> f64 {
        self.abs * norm.max(1.0)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

/// Commutative semiring with an involutive automorphism `s ↦ s†`.
pub trait Semiring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const RING: RingId;
    const FLAGS: RingFlags;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// The involution `s ↦ s†`.
    fn conj(&self) -> Self;

    /// Tolerance-aware equality; exact rings ignore `tol`.
    fn approx_eq(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }

    fn is_zero_within(&self, tol: &Tolerance) -> bool {
        self.approx_eq(&Self::zero(), tol)
    }

    /// Size of the element, used to build residual norms (1 or 0 for Booleans).
    fn magnitude(&self) -> f64;

    /// Whether `self = t† · t` for some `t` in the ring.
    fn is_positive(&self, tol: &Tolerance) -> bool;

    fn to_value(&self) -> ScalarValue;
    fn from_value(value: &ScalarValue) -> Result<Self>;

    /// `n · 1`, computed by repeated addition.
    fn from_nat(n: u64) -> Self {
        let mut acc = Self::zero();
        for _ in 0..n {
            acc = acc.add(&Self::one());
        }
        acc
    }

    fn sum<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        items
            .into_iter()
            .fold(Self::zero(), |acc, item| acc.add(item))
    }
}

/// A semiring with additive inverses.
pub trait Ring: Semiring {
    fn neg(&self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Floating-point phased fields (`real64`, `complex64`): square roots of
/// positives, moduli, and random sampling.
pub trait FloatScalar: Field + Copy {
    fn from_real(x: f64) -> Self;
    fn re(&self) -> f64;
    fn im(&self) -> f64;
    /// Modulus `sqrt(s† s)`.
    fn abs(&self) -> f64;
    fn norm_sqr(&self) -> f64;
    fn scale(&self, x: f64) -> Self;
    /// Square root of the real part, clamped at zero (positives only).
    fn sqrt_positive(&self) -> Self;
    /// A unitary square root of −1, when the ring has one.
    fn imaginary_unit() -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    /// Conversion from a complex number; real rings drop the imaginary part.
    fn from_c64(z: Complex64) -> Self;
    /// Standard Gaussian sample (complex: independent real and imaginary parts).
    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// Uniformly random unitary scalar (`±1` for reals, `e^{iθ}` for complex).
    fn sample_phase<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

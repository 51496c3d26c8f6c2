use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{
    Field, FloatScalar, Ring, RingFlags, RingId, ScalarValue, Semiring, Tolerance,
};
use crate::error::{Error, Result};

fn float_close(diff: f64, a: f64, b: f64, tol: &Tolerance) -> bool {
    tol.accepts(diff, a.max(b))
}

fn wrong_value(expected: RingId, value: &ScalarValue) -> Error {
    Error::MixedRings {
        expected,
        found: value.ring(),
    }
}

// ---------------------------------------------------------------------------
// complex64

impl Semiring for Complex64 {
    const RING: RingId = RingId::Complex64;
    const FLAGS: RingFlags = RingFlags {
        has_negatives: true,
        has_square_roots: true,
        all_nonzero_invertible: true,
        bounded: true,
        zero_sum_free: false,
        exact: false,
    };

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        float_close((self - other).norm(), self.norm(), other.norm(), tol)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_positive(&self, tol: &Tolerance) -> bool {
        tol.accepts(self.im.abs(), self.re.abs()) && self.re >= -tol.abs
    }
    fn to_value(&self) -> ScalarValue {
        ScalarValue::Complex(*self)
    }
    fn from_value(value: &ScalarValue) -> Result<Self> {
        match value {
            ScalarValue::Complex(z) => Ok(*z),
            other => Err(wrong_value(RingId::Complex64, other)),
        }
    }
}

impl Ring for Complex64 {
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Option<Self> {
        (self.norm_sqr() > 0.0).then(|| Complex64::inv(self))
    }
}

impl FloatScalar for Complex64 {
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn norm_sqr(&self) -> f64 {
        Complex64::norm_sqr(self)
    }
    fn scale(&self, x: f64) -> Self {
        self * x
    }
    fn sqrt_positive(&self) -> Self {
        Complex64::new(self.re.max(0.0).sqrt(), 0.0)
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Complex64::new(0.0, 1.0))
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    }
    fn sample_phase<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(1.0, theta)
    }
}

// ---------------------------------------------------------------------------
// real64 (trivial involution)

impl Semiring for f64 {
    const RING: RingId = RingId::Real64;
    const FLAGS: RingFlags = RingFlags {
        has_negatives: true,
        has_square_roots: true,
        all_nonzero_invertible: true,
        bounded: true,
        zero_sum_free: false,
        exact: false,
    };

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        *self
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        float_close(f64::abs(self - other), f64::abs(*self), f64::abs(*other), tol)
    }
    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }
    fn is_positive(&self, tol: &Tolerance) -> bool {
        *self >= -tol.abs
    }
    fn to_value(&self) -> ScalarValue {
        ScalarValue::Real(*self)
    }
    fn from_value(value: &ScalarValue) -> Result<Self> {
        match value {
            ScalarValue::Real(x) => Ok(*x),
            other => Err(wrong_value(RingId::Real64, other)),
        }
    }
}

impl Ring for f64 {
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for f64 {
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}

impl FloatScalar for f64 {
    fn from_real(x: f64) -> Self {
        x
    }
    fn re(&self) -> f64 {
        *self
    }
    fn im(&self) -> f64 {
        0.0
    }
    fn abs(&self) -> f64 {
        f64::abs(*self)
    }
    fn norm_sqr(&self) -> f64 {
        self * self
    }
    fn scale(&self, x: f64) -> Self {
        self * x
    }
    fn sqrt_positive(&self) -> Self {
        self.max(0.0).sqrt()
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z.re
    }
    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
    fn sample_phase<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.random_bool(0.5) {
            1.0
        } else {
            -1.0
        }
    }
}

// ---------------------------------------------------------------------------
// nnrational: exact non-negative rationals, the scalars of Class

/// Exact non-negative rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonNegRational(BigRational);

impl NonNegRational {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidScalar {
                ring: RingId::NonNegRational,
                detail: format!("{value} is negative"),
            });
        }
        Ok(NonNegRational(value))
    }

    pub fn from_ratio(numer: u32, denom: u32) -> Self {
        assert!(denom != 0, "zero denominator");
        NonNegRational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }
}

impl fmt::Debug for NonNegRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for NonNegRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semiring for NonNegRational {
    const RING: RingId = RingId::NonNegRational;
    const FLAGS: RingFlags = RingFlags {
        has_negatives: false,
        has_square_roots: false,
        all_nonzero_invertible: true,
        bounded: true,
        zero_sum_free: true,
        exact: true,
    };

    fn zero() -> Self {
        NonNegRational(<BigRational as Zero>::zero())
    }
    fn one() -> Self {
        NonNegRational(BigRational::from_integer(1.into()))
    }
    fn add(&self, rhs: &Self) -> Self {
        NonNegRational(&self.0 + &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        NonNegRational(&self.0 * &rhs.0)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_positive(&self, _tol: &Tolerance) -> bool {
        // the whole semiring is the non-negative cone
        true
    }
    fn to_value(&self) -> ScalarValue {
        ScalarValue::NonNegRational(self.clone())
    }
    fn from_value(value: &ScalarValue) -> Result<Self> {
        match value {
            ScalarValue::NonNegRational(q) => Ok(q.clone()),
            other => Err(wrong_value(RingId::NonNegRational, other)),
        }
    }
}

// ---------------------------------------------------------------------------
// rational: exact rationals with the trivial involution

impl Semiring for BigRational {
    const RING: RingId = RingId::Rational;
    const FLAGS: RingFlags = RingFlags {
        has_negatives: true,
        has_square_roots: false,
        all_nonzero_invertible: true,
        bounded: true,
        zero_sum_free: false,
        exact: true,
    };

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        BigRational::from_integer(1.into())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_positive(&self, _tol: &Tolerance) -> bool {
        // order-positive, matching nnrational as the positive cone of D(ℚ⁺) = ℚ
        !self.is_negative()
    }
    fn to_value(&self) -> ScalarValue {
        ScalarValue::Rational(self.clone())
    }
    fn from_value(value: &ScalarValue) -> Result<Self> {
        match value {
            ScalarValue::Rational(q) => Ok(q.clone()),
            other => Err(wrong_value(RingId::Rational, other)),
        }
    }
}

impl Ring for BigRational {
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

// ---------------------------------------------------------------------------
// boolean: the scalars of Rel (or, and, trivial involution)

impl Semiring for bool {
    const RING: RingId = RingId::Boolean;
    const FLAGS: RingFlags = RingFlags {
        has_negatives: false,
        has_square_roots: true,
        all_nonzero_invertible: true,
        // 1 = n·1 + 1 for every n
        bounded: false,
        zero_sum_free: true,
        exact: true,
    };

    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(&self, rhs: &Self) -> Self {
        *self || *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self && *rhs
    }
    fn conj(&self) -> Self {
        *self
    }
    fn magnitude(&self) -> f64 {
        if *self {
            1.0
        } else {
            0.0
        }
    }
    fn is_positive(&self, _tol: &Tolerance) -> bool {
        true
    }
    fn to_value(&self) -> ScalarValue {
        ScalarValue::Boolean(*self)
    }
    fn from_value(value: &ScalarValue) -> Result<Self> {
        match value {
            ScalarValue::Boolean(b) => Ok(*b),
            other => Err(wrong_value(RingId::Boolean, other)),
        }
    }
}

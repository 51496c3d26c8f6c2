use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::Value;

use super::{
    phased_ring_decompose, polar_decompose, selfadjoint_parts, DifferenceRingElement,
    NonNegRational, RingId, Semiring, Tolerance,
};
use crate::error::{Error, Result};

/// A scalar tagged with its ring, for file loading and dynamic dispatch.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarValue {
    Complex(Complex64),
    Real(f64),
    NonNegRational(NonNegRational),
    Rational(BigRational),
    Boolean(bool),
}

impl ScalarValue {
    pub fn ring(&self) -> RingId {
        match self {
            ScalarValue::Complex(_) => RingId::Complex64,
            ScalarValue::Real(_) => RingId::Real64,
            ScalarValue::NonNegRational(_) => RingId::NonNegRational,
            ScalarValue::Rational(_) => RingId::Rational,
            ScalarValue::Boolean(_) => RingId::Boolean,
        }
    }

    pub fn zero(ring: RingId) -> Self {
        match ring {
            RingId::Complex64 => Complex64::zero().to_value(),
            RingId::Real64 => f64::zero().to_value(),
            RingId::NonNegRational => NonNegRational::zero().to_value(),
            RingId::Rational => BigRational::zero().to_value(),
            RingId::Boolean => bool::zero().to_value(),
        }
    }

    /// Complex as `[re, im]`, reals as numbers, rationals as `"p/q"`, Booleans as `true`/`false`.
    pub fn to_json(&self) -> Value {
        match self {
            ScalarValue::Complex(z) => serde_json::json!([z.re, z.im]),
            ScalarValue::Real(x) => serde_json::json!(x),
            ScalarValue::NonNegRational(q) => Value::String(ratio_string(q.as_rational())),
            ScalarValue::Rational(q) => Value::String(ratio_string(q)),
            ScalarValue::Boolean(b) => Value::Bool(*b),
        }
    }

    pub fn from_json(ring: RingId, value: &Value) -> Result<Self> {
        let bad = |detail: &str| Error::InvalidScalar {
            ring,
            detail: format!("{detail}: {value}"),
        };
        match ring {
            RingId::Complex64 => {
                let parts = value.as_array().ok_or_else(|| bad("expected [re, im]"))?;
                match parts.as_slice() {
                    [re, im] => {
                        let re = re.as_f64().ok_or_else(|| bad("non-numeric part"))?;
                        let im = im.as_f64().ok_or_else(|| bad("non-numeric part"))?;
                        Ok(ScalarValue::Complex(Complex64::new(re, im)))
                    }
                    _ => Err(bad("expected [re, im]")),
                }
            }
            RingId::Real64 => value
                .as_f64()
                .map(ScalarValue::Real)
                .ok_or_else(|| bad("expected a number")),
            RingId::Rational => parse_ratio(value)
                .map(ScalarValue::Rational)
                .ok_or_else(|| bad("expected \"p/q\"")),
            RingId::NonNegRational => {
                let q = parse_ratio(value).ok_or_else(|| bad("expected \"p/q\""))?;
                NonNegRational::new(q).map(ScalarValue::NonNegRational)
            }
            RingId::Boolean => match value {
                Value::Bool(b) => Ok(ScalarValue::Boolean(*b)),
                Value::Number(n) if n.as_u64() == Some(0) => Ok(ScalarValue::Boolean(false)),
                Value::Number(n) if n.as_u64() == Some(1) => Ok(ScalarValue::Boolean(true)),
                _ => Err(bad("expected a bit")),
            },
        }
    }

    pub fn is_positive(&self, tol: &Tolerance) -> bool {
        match self {
            ScalarValue::Complex(z) => z.is_positive(tol),
            ScalarValue::Real(x) => x.is_positive(tol),
            ScalarValue::NonNegRational(q) => q.is_positive(tol),
            ScalarValue::Rational(q) => q.is_positive(tol),
            ScalarValue::Boolean(b) => b.is_positive(tol),
        }
    }

    /// `(r, u)` with `r` positive, `u` unitary and `self = r·u`.
    pub fn polar_decompose(&self, tol: &Tolerance) -> Result<(ScalarValue, ScalarValue)> {
        match self {
            ScalarValue::Complex(z) => {
                polar_decompose(*z, tol).map(|(r, u)| (r.to_value(), u.to_value()))
            }
            ScalarValue::Real(x) => {
                polar_decompose(*x, tol).map(|(r, u)| (r.to_value(), u.to_value()))
            }
            // 1 = 1·1 is the only nonzero case
            ScalarValue::Boolean(true) => {
                Ok((ScalarValue::Boolean(true), ScalarValue::Boolean(true)))
            }
            ScalarValue::Boolean(false) => Err(Error::ZeroInput),
            other => Err(Error::UnsupportedRing {
                op: "polar_decompose",
                ring: other.ring(),
            }),
        }
    }

    pub fn selfadjoint_parts(&self) -> Result<(ScalarValue, ScalarValue)> {
        match self {
            ScalarValue::Complex(z) => {
                selfadjoint_parts(*z).map(|(a, b)| (a.to_value(), b.to_value()))
            }
            other => Err(Error::UnsupportedRing {
                op: "selfadjoint_parts",
                ring: other.ring(),
            }),
        }
    }

    pub fn phased_ring_decompose(
        &self,
        other: &ScalarValue,
        tol: &Tolerance,
    ) -> Result<(ScalarValue, ScalarValue, ScalarValue)> {
        same_ring(self, other)?;
        match (self, other) {
            (ScalarValue::Complex(a), ScalarValue::Complex(b)) => phased_ring_decompose(*a, *b, tol)
                .map(|s| (s.c.to_value(), s.d.to_value(), s.e.to_value())),
            (ScalarValue::Real(a), ScalarValue::Real(b)) => phased_ring_decompose(*a, *b, tol)
                .map(|s| (s.c.to_value(), s.d.to_value(), s.e.to_value())),
            _ => Err(Error::UnsupportedRing {
                op: "phased_ring_decompose",
                ring: self.ring(),
            }),
        }
    }

    pub fn add(&self, other: &ScalarValue) -> Result<ScalarValue> {
        self.binary(other, |a, b| a.add(b), |a, b| a.add(b), |a, b| a.add(b), |a, b| a.add(b), |a, b| a.add(b))
    }

    pub fn mul(&self, other: &ScalarValue) -> Result<ScalarValue> {
        self.binary(other, |a, b| a.mul(b), |a, b| a.mul(b), |a, b| a.mul(b), |a, b| a.mul(b), |a, b| a.mul(b))
    }

    pub fn approx_eq(&self, other: &ScalarValue, tol: &Tolerance) -> Result<bool> {
        same_ring(self, other)?;
        Ok(match (self, other) {
            (ScalarValue::Complex(a), ScalarValue::Complex(b)) => a.approx_eq(b, tol),
            (ScalarValue::Real(a), ScalarValue::Real(b)) => a.approx_eq(b, tol),
            _ => self == other,
        })
    }

    fn binary(
        &self,
        other: &ScalarValue,
        c: impl Fn(&Complex64, &Complex64) -> Complex64,
        r: impl Fn(&f64, &f64) -> f64,
        n: impl Fn(&NonNegRational, &NonNegRational) -> NonNegRational,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        b: impl Fn(&bool, &bool) -> bool,
    ) -> Result<ScalarValue> {
        same_ring(self, other)?;
        Ok(match (self, other) {
            (ScalarValue::Complex(x), ScalarValue::Complex(y)) => ScalarValue::Complex(c(x, y)),
            (ScalarValue::Real(x), ScalarValue::Real(y)) => ScalarValue::Real(r(x, y)),
            (ScalarValue::NonNegRational(x), ScalarValue::NonNegRational(y)) => {
                ScalarValue::NonNegRational(n(x, y))
            }
            (ScalarValue::Rational(x), ScalarValue::Rational(y)) => ScalarValue::Rational(q(x, y)),
            (ScalarValue::Boolean(x), ScalarValue::Boolean(y)) => ScalarValue::Boolean(b(x, y)),
            _ => unreachable!("rings checked above"),
        })
    }
}

fn same_ring(a: &ScalarValue, b: &ScalarValue) -> Result<()> {
    if a.ring() == b.ring() {
        Ok(())
    } else {
        Err(Error::MixedRings {
            expected: a.ring(),
            found: b.ring(),
        })
    }
}

/// Lifts `(a, b)` into the difference ring; both entries must share a ring.
pub fn difference_ring_lift(
    a: ScalarValue,
    b: ScalarValue,
) -> Result<DifferenceRingElement<ScalarValue>> {
    same_ring(&a, &b)?;
    Ok(DifferenceRingElement { pos: a, neg: b })
}

/// `(a, b) ≡ (c, d)` iff `a + d = b + c`.
pub fn difference_ring_eq(
    x: &DifferenceRingElement<ScalarValue>,
    y: &DifferenceRingElement<ScalarValue>,
    tol: &Tolerance,
) -> Result<bool> {
    let lhs = x.pos.add(&y.neg)?;
    let rhs = x.neg.add(&y.pos)?;
    lhs.approx_eq(&rhs, tol)
}

fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_ratio(value: &Value) -> Option<BigRational> {
    match value {
        Value::String(s) => {
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s.trim(), "1"),
            };
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())),
        _ => None,
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Complex(z) => write!(f, "{z}"),
            ScalarValue::Real(x) => write!(f, "{x}"),
            ScalarValue::NonNegRational(q) => write!(f, "{q}"),
            ScalarValue::Rational(q) => write!(f, "{q}"),
            ScalarValue::Boolean(b) => write!(f, "{}", u8::from(*b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn nnq(n: u32, d: u32) -> ScalarValue {
        ScalarValue::NonNegRational(NonNegRational::from_ratio(n, d))
    }

    #[test]
    fn json_round_trip_for_every_ring() {
        let samples = [
            ScalarValue::Complex(Complex64::new(0.5, -2.0)),
            ScalarValue::Real(-3.25),
            nnq(3, 7),
            ScalarValue::Rational(BigRational::new((-5).into(), 4.into())),
            ScalarValue::Boolean(true),
        ];
        for s in samples {
            let back = ScalarValue::from_json(s.ring(), &s.to_json()).unwrap();
            assert_eq!(back, s);
        }
        assert_eq!(nnq(3, 7).to_json(), Value::String("3/7".into()));
    }

    #[test]
    fn json_rejects_invalid_payloads() {
        let neg = Value::String("-1/2".into());
        assert!(ScalarValue::from_json(RingId::NonNegRational, &neg).is_err());
        assert!(ScalarValue::from_json(RingId::Complex64, &serde_json::json!(1.0)).is_err());
        assert!(ScalarValue::from_json(RingId::Rational, &serde_json::json!("1/0")).is_err());
    }

    #[test]
    fn dynamic_wrappers() {
        assert!(ScalarValue::Complex(Complex64::new(2.0, 0.0)).is_positive(&TOL));
        assert!(!ScalarValue::Complex(Complex64::new(0.0, 1.0)).is_positive(&TOL));
        assert!(ScalarValue::Boolean(true).is_positive(&TOL));

        let (r, u) = ScalarValue::Real(-2.0).polar_decompose(&TOL).unwrap();
        assert_eq!((r, u), (ScalarValue::Real(2.0), ScalarValue::Real(-1.0)));
        assert!(matches!(
            nnq(1, 2).polar_decompose(&TOL),
            Err(Error::UnsupportedRing { .. })
        ));
        assert!(ScalarValue::Real(1.0).selfadjoint_parts().is_err());

        let (c, _, _) = ScalarValue::Complex(Complex64::new(3.0, 0.0))
            .phased_ring_decompose(&ScalarValue::Complex(Complex64::new(4.0, 0.0)), &TOL)
            .unwrap();
        assert!(c.approx_eq(&ScalarValue::Complex(Complex64::new(5.0, 0.0)), &TOL).unwrap());
    }

    #[test]
    fn difference_ring_over_values() {
        let x = difference_ring_lift(nnq(3, 1), nnq(1, 1)).unwrap();
        let y = difference_ring_lift(nnq(5, 1), nnq(3, 1)).unwrap();
        let z = difference_ring_lift(nnq(1, 1), nnq(3, 1)).unwrap();
        assert!(difference_ring_eq(&x, &y, &TOL).unwrap());
        assert!(!difference_ring_eq(&x, &z, &TOL).unwrap());
        assert!(matches!(
            difference_ring_lift(nnq(1, 1), ScalarValue::Boolean(true)),
            Err(Error::MixedRings { .. })
        ));
    }
}

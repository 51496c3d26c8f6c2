//! Scalar structure of phased fields: polar form, self-adjoint parts and
//! the norm-sum decomposition that defines a phased ring.

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{FloatScalar, Ring, RingId, Semiring, Tolerance};
use crate::error::{Error, Result};

/// Splits a nonzero `s` as `r · u` with `r = sqrt(s† s)` positive and `u` unitary.
pub fn polar_decompose<F: FloatScalar>(s: F, tol: &Tolerance) -> Result<(F, F)> {
    let radius = s.abs();
    if radius <= tol.abs {
        return Err(Error::ZeroInput);
    }
    let r = F::from_real(radius);
    Ok((r, s.scale(1.0 / radius)))
}

/// `(½(s + s†), (i/2)(s† − s))`; both parts are self-adjoint and `s = re + i·im`.
pub fn selfadjoint_parts<F: FloatScalar>(s: F) -> Result<(F, F)> {
    let i = F::imaginary_unit().ok_or(Error::UnsupportedRing {
        op: "selfadjoint_parts",
        ring: F::RING,
    })?;
    let re = s.add(&s.conj()).scale(0.5);
    let im = i.mul(&s.conj().sub(&s)).scale(0.5);
    Ok((re, im))
}

/// Witnesses for `a†a + b†b = c†c` with `a = c·d`, `b = c·e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasedRingSplit<F> {
    pub c: F,
    pub d: F,
    pub e: F,
}

impl<F: FloatScalar> PhasedRingSplit<F> {
    /// Largest back-substitution error over the three defining equations.
    pub fn residual(&self, a: F, b: F) -> f64 {
        let norm_sum = a.norm_sqr() + b.norm_sqr();
        let norm_eq = (self.c.norm_sqr() - norm_sum).abs();
        let a_eq = (self.c.mul(&self.d).sub(&a)).abs();
        let b_eq = (self.c.mul(&self.e).sub(&b)).abs();
        norm_eq.max(a_eq).max(b_eq)
    }
}

pub fn phased_ring_decompose<F: FloatScalar>(
    a: F,
    b: F,
    tol: &Tolerance,
) -> Result<PhasedRingSplit<F>> {
    let radius = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if radius <= tol.abs {
        return Err(Error::BothZero);
    }
    let inv = 1.0 / radius;
    Ok(PhasedRingSplit {
        c: F::from_real(radius),
        d: a.scale(inv),
        e: b.scale(inv),
    })
}

/// The two shapes a phased ring with square roots can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InvolutionClass {
    TrivialInvolution,
    HasImaginaryUnit,
}

/// Decides whether the ring carries a unitary square root of −1.
///
/// With a trivial involution a unitary `i` would satisfy both `i·i = 1` and
/// `i·i = −1`, so the answer is `TrivialInvolution` as soon as the
/// involution is the identity.
pub fn classify_involution(ring: RingId) -> Result<InvolutionClass> {
    let tol = Tolerance::DEFAULT;
    match ring {
        RingId::Complex64 => {
            let i = Complex64::imaginary_unit().expect("complex unit");
            let squares_to_minus_one = i.mul(&i).approx_eq(&Complex64::one().neg(), &tol);
            let unitary = i.conj().mul(&i).approx_eq(&Complex64::one(), &tol);
            Ok(if squares_to_minus_one && unitary {
                InvolutionClass::HasImaginaryUnit
            } else {
                InvolutionClass::TrivialInvolution
            })
        }
        RingId::Real64 => Ok(trivial_if_identity(&[0.5f64, -3.0, 7.25])),
        RingId::Rational => {
            let samples: Vec<BigRational> = [(1, 2), (-3, 1), (5, 7)]
                .into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            Ok(trivial_if_identity(&samples))
        }
        RingId::NonNegRational | RingId::Boolean => Err(Error::UnsupportedRing {
            op: "classify_involution",
            ring,
        }),
    }
}

fn trivial_if_identity<S: Ring>(samples: &[S]) -> InvolutionClass {
    debug_assert!(samples.iter().all(|s| s.conj() == *s));
    InvolutionClass::TrivialInvolution
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: Tolerance = Tolerance::DEFAULT;

    #[test]
    fn polar_examples() {
        let (r, u) = polar_decompose(-2.0f64, &TOL).unwrap();
        assert_eq!((r, u), (2.0, -1.0));

        // oracle: r = sqrt(3² + 4²) evaluated directly
        let (r, u) = polar_decompose(Complex64::new(3.0, 4.0), &TOL).unwrap();
        assert!((r - Complex64::new(5.0, 0.0)).norm() < 1e-12);
        assert!((u - Complex64::new(0.6, 0.8)).norm() < 1e-12);

        let (r, u) = polar_decompose(Complex64::new(1.0, 0.0), &TOL).unwrap();
        assert_eq!((r, u), (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)));

        assert_eq!(polar_decompose(0.0f64, &TOL), Err(Error::ZeroInput));
    }

    #[test]
    fn selfadjoint_examples() {
        let cases = [
            (Complex64::new(3.0, 4.0), 3.0, 4.0),
            (Complex64::new(5.0, 0.0), 5.0, 0.0),
            (Complex64::new(0.0, 1.0), 0.0, 1.0),
        ];
        for (s, re, im) in cases {
            let (a, b) = selfadjoint_parts(s).unwrap();
            assert!((a - Complex64::new(re, 0.0)).norm() < 1e-12, "{s}");
            assert!((b - Complex64::new(im, 0.0)).norm() < 1e-12, "{s}");
        }
        assert!(matches!(
            selfadjoint_parts(2.0f64),
            Err(Error::UnsupportedRing { .. })
        ));
    }

    #[test]
    fn phased_ring_examples() {
        let split = phased_ring_decompose(Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0), &TOL)
            .unwrap();
        assert!((split.c.re - 5.0).abs() < 1e-12);
        assert!((split.d.re - 0.6).abs() < 1e-12);
        assert!((split.e.re - 0.8).abs() < 1e-12);

        let split = phased_ring_decompose(2.0f64, 0.0, &TOL).unwrap();
        assert_eq!((split.c, split.d, split.e), (2.0, 1.0, 0.0));

        let split = phased_ring_decompose(1.0f64, 1.0, &TOL).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((split.c - 2f64.sqrt()).abs() < 1e-12);
        assert!((split.d - h).abs() < 1e-12 && (split.e - h).abs() < 1e-12);
        assert!(split.residual(1.0, 1.0) < 1e-12);

        assert_eq!(
            phased_ring_decompose(0.0f64, 0.0, &TOL),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn involution_classes() {
        assert_eq!(
            classify_involution(RingId::Complex64).unwrap(),
            InvolutionClass::HasImaginaryUnit
        );
        assert_eq!(
            classify_involution(RingId::Real64).unwrap(),
            InvolutionClass::TrivialInvolution
        );
        assert_eq!(
            classify_involution(RingId::Rational).unwrap(),
            InvolutionClass::TrivialInvolution
        );
        assert!(classify_involution(RingId::Boolean).is_err());
        assert!(classify_involution(RingId::NonNegRational).is_err());
    }

    fn complex() -> impl Strategy<Value = Complex64> {
        (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(re, im)| Complex64::new(re, im))
    }

    proptest! {
        #[test]
        fn polar_round_trip_and_uniqueness(s in complex(), phase in 0.0..std::f64::consts::TAU) {
            prop_assume!(s.norm() > 1e-6);
            let (r, u) = polar_decompose(s, &TOL).unwrap();
            prop_assert!(r.mul(&u).approx_eq(&s, &TOL));
            prop_assert!(r.is_positive(&TOL));
            prop_assert!((u.conj() * u - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            // another candidate r'·u' = s with u' unitary forces r' = r
            let u2 = Complex64::from_polar(1.0, phase);
            let r2 = s * u2.conj();
            if r2.is_positive(&TOL) {
                prop_assert!(r2.approx_eq(&r, &Tolerance::new(1e-8)));
                prop_assert!(u2.approx_eq(&u, &Tolerance::new(1e-8)));
            } else {
                prop_assert!(!r2.approx_eq(&r, &TOL));
            }
        }

        #[test]
        fn selfadjoint_round_trip(s in complex()) {
            let (re, im) = selfadjoint_parts(s).unwrap();
            let i = Complex64::new(0.0, 1.0);
            prop_assert!((re + i * im).approx_eq(&s, &TOL));
            prop_assert!(re.conj().approx_eq(&re, &TOL));
            prop_assert!(im.conj().approx_eq(&im, &TOL));
        }

        #[test]
        fn phased_ring_back_substitution(a in complex(), b in complex()) {
            prop_assume!(a.norm() + b.norm() > 1e-6);
            let split = phased_ring_decompose(a, b, &TOL).unwrap();
            prop_assert!(split.residual(a, b) < 1e-9 * (1.0 + a.norm_sqr() + b.norm_sqr()));
        }
    }
}

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{NonNegRational, Semiring, Tolerance};

/// Formal difference `pos − neg` over a semiring.
///
/// `(a, b)` and `(c, d)` denote the same element iff `a + d = b + c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifferenceRingElement<S> {
    pub pos: S,
    pub neg: S,
}

impl<S: Semiring> DifferenceRingElement<S> {
    pub fn lift(pos: S, neg: S) -> Self {
        DifferenceRingElement { pos, neg }
    }

    /// The image of `s` under the embedding `s ↦ (s, 0)`.
    pub fn embed(s: S) -> Self {
        Self::lift(s, S::zero())
    }

    pub fn zero() -> Self {
        Self::embed(S::zero())
    }

    pub fn one() -> Self {
        Self::embed(S::one())
    }

    pub fn equiv(&self, other: &Self, tol: &Tolerance) -> bool {
        self.pos
            .add(&other.neg)
            .approx_eq(&self.neg.add(&other.pos), tol)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::lift(self.pos.add(&rhs.pos), self.neg.add(&rhs.neg))
    }

    /// `(a − b)(c − d) = (ac + bd) − (ad + bc)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self::lift(
            self.pos.mul(&rhs.pos).add(&self.neg.mul(&rhs.neg)),
            self.pos.mul(&rhs.neg).add(&self.neg.mul(&rhs.pos)),
        )
    }

    pub fn neg(&self) -> Self {
        Self::lift(self.neg.clone(), self.pos.clone())
    }
}

impl DifferenceRingElement<NonNegRational> {
    /// The isomorphism `D(ℚ⁺) ≅ ℚ`.
    pub fn to_rational(&self) -> BigRational {
        self.pos.as_rational() - self.neg.as_rational()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: u32) -> NonNegRational {
        NonNegRational::from_ratio(n, 1)
    }

    const TOL: Tolerance = Tolerance::DEFAULT;

    #[test]
    fn identification_examples() {
        let x = DifferenceRingElement::lift(q(3), q(1));
        assert!(x.equiv(&DifferenceRingElement::lift(q(5), q(3)), &TOL));
        assert!(!x.equiv(&DifferenceRingElement::lift(q(1), q(3)), &TOL));

        let a = q(7);
        let sum = DifferenceRingElement::lift(a.clone(), q(0))
            .add(&DifferenceRingElement::lift(q(0), a));
        assert!(sum.equiv(&DifferenceRingElement::zero(), &TOL));
    }

    #[test]
    fn boolean_difference_ring_collapses() {
        // idempotent addition: (1,1) ~ (0,0) and (1,0) ~ (1,1) ~ (0,1)
        let zero = DifferenceRingElement::<bool>::zero();
        let both = DifferenceRingElement::lift(true, true);
        assert!(both.equiv(&zero, &TOL));
        assert!(DifferenceRingElement::lift(true, false).equiv(&both, &TOL));
        assert!(DifferenceRingElement::lift(false, true).equiv(&both, &TOL));
    }

    fn nnq() -> impl Strategy<Value = NonNegRational> {
        (0u32..60, 1u32..10).prop_map(|(n, d)| NonNegRational::from_ratio(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn nnrational_difference_ring_is_the_rationals(
            a in nnq(), b in nnq(), c in nnq(), d in nnq()
        ) {
            let x = DifferenceRingElement::lift(a, b);
            let y = DifferenceRingElement::lift(c, d);
            prop_assert_eq!(x.add(&y).to_rational(), x.to_rational() + y.to_rational());
            prop_assert_eq!(x.mul(&y).to_rational(), x.to_rational() * y.to_rational());
            prop_assert_eq!(x.equiv(&y, &TOL), x.to_rational() == y.to_rational());
            prop_assert!(x.add(&x.neg()).equiv(&DifferenceRingElement::zero(), &TOL));
        }

        #[test]
        fn lift_is_a_homomorphism(a in nnq(), b in nnq()) {
            let sum = DifferenceRingElement::embed(a.add(&b));
            let prod = DifferenceRingElement::embed(a.mul(&b));
            let la = DifferenceRingElement::embed(a);
            let lb = DifferenceRingElement::embed(b);
            prop_assert!(la.add(&lb).equiv(&sum, &TOL));
            prop_assert!(la.mul(&lb).equiv(&prod, &TOL));
        }
    }
}

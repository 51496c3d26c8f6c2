//! Conditioning on orthonormal states, and coarse-graining derived from it.

use super::{pure_kraus, CPMorphism, QuantScalar};
use crate::error::{Error, Result};
use crate::matcat::Matrix;
use crate::scalars::{FloatScalar, Tolerance};

fn require_states<F: FloatScalar>(op: &'static str, a: &CPMorphism<F>, b: &CPMorphism<F>) -> Result<()> {
    if a.in_dim() != 1 || b.in_dim() != 1 || a.out_dim() != b.out_dim() {
        return Err(Error::dims(op, "expected two states of the same system"));
    }
    Ok(())
}

/// `s = discard ∘ (a† ∘ b)` read as a real number.
fn pairing<F: FloatScalar>(a: &CPMorphism<F>, b: &CPMorphism<F>) -> f64 {
    a.dagger().compose(b).expect("states of one system").doubled().get(0, 0).re()
}

/// A map `f` with `f ∘ k0 = ρ` and `f ∘ k1 = σ`.
///
/// Mixed mode builds `ρ ∘ k0† + σ ∘ k1†`. Pure mode requires pure targets
/// with vectors `ψ`, `φ` and returns `dbl(ψ v0† + φ v1†)`.
pub fn conditioning<F: QuantScalar>(
    k0: &CPMorphism<F>,
    k1: &CPMorphism<F>,
    rho: &CPMorphism<F>,
    sigma: &CPMorphism<F>,
    pure_mode: bool,
    tol: &Tolerance,
) -> Result<CPMorphism<F>> {
    require_states("conditioning", k0, k1)?;
    require_states("conditioning", rho, sigma)?;
    let residual = (pairing(k0, k0) - 1.0)
        .abs()
        .max((pairing(k1, k1) - 1.0).abs())
        .max(pairing(k0, k1).abs());
    if residual > tol.scaled(10.0).abs {
        return Err(Error::NotOrthonormal { residual });
    }
    if !pure_mode {
        return rho.compose(&k0.dagger())?.add(&sigma.compose(&k1.dagger())?);
    }
    let psi = pure_kraus(rho, tol).ok_or(Error::PurityViolation)?;
    let phi = pure_kraus(sigma, tol).ok_or(Error::PurityViolation)?;
    let v0 = pure_kraus(k0, tol).ok_or(Error::NotOrthonormal { residual })?;
    let v1 = pure_kraus(k1, tol).ok_or(Error::NotOrthonormal { residual })?;
    let k = psi.dot(&v0.dagger()).plus(&phi.dot(&v1.dagger()));
    Ok(CPMorphism::dbl(&k))
}

/// Coarse-graining reconstructed from conditioning alone.
///
/// With `f̂ = (id_A ⊗ f) ∘ cup_A` and `ĝ` likewise, condition on the qubit
/// basis to get `c : 2 → A ⊗ B`, bend back to `h : A → B ⊗ 2` through
/// `(cap_A ⊗ id) ∘ (id_A ⊗ (c ⊗ id_2) ∘ cup_2)`, check that the two
/// branches of `h` are `f` and `g`, and discard the qubit.
pub fn derived_coarse_grain<F: QuantScalar>(
    f: &CPMorphism<F>,
    g: &CPMorphism<F>,
    tol: &Tolerance,
) -> Result<CPMorphism<F>> {
    if (f.in_dim(), f.out_dim()) != (g.in_dim(), g.out_dim()) {
        return Err(Error::dims("derived_coarse_grain", "maps of different types"));
    }
    let (a, b) = (f.in_dim(), f.out_dim());
    let bend = |m: &CPMorphism<F>| {
        CPMorphism::identity(a)
            .tensor(m)
            .compose(&CPMorphism::cup(a))
            .expect("dims")
    };
    let ket = |i| CPMorphism::dbl(&Matrix::basis(2, i));
    let c = conditioning(&ket(0), &ket(1), &bend(f), &bend(g), false, tol)?;
    let c_hat = c
        .tensor(&CPMorphism::identity(2))
        .compose(&CPMorphism::cup(2))?;
    let h = CPMorphism::cap(a)
        .tensor(&CPMorphism::identity(b * 2))
        .compose(&CPMorphism::identity(a).tensor(&c_hat))?;
    let branch = |i| {
        CPMorphism::identity(b)
            .tensor(&ket(i).dagger())
            .compose(&h)
            .expect("dims")
    };
    let residual = branch(0).distance(f).max(branch(1).distance(g));
    let scale = f.doubled().frobenius_norm().max(g.doubled().frobenius_norm());
    if !tol.scaled(10.0).accepts(residual, scale) {
        return Err(Error::NoSolution { residual });
    }
    CPMorphism::identity(b)
        .tensor(&CPMorphism::discard(2))
        .compose(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use num_complex::Complex64;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn ket(i: usize) -> CPMorphism<Complex64> {
        CPMorphism::dbl(&Matrix::basis(2, i))
    }

    #[test]
    fn hadamard_from_pure_conditioning() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = Matrix::column(vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)]);
        let minus = Matrix::column(vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)]);
        let (rho, sigma) = (CPMorphism::dbl(&plus), CPMorphism::dbl(&minus));
        let f = conditioning(&ket(0), &ket(1), &rho, &sigma, true, &TOL).unwrap();
        let hadamard = Matrix::hstack(&[plus, minus]).unwrap();
        assert!(f.close_to(&CPMorphism::dbl(&hadamard), &TOL));
        assert!(f.compose(&ket(0)).unwrap().close_to(&rho, &TOL));
        assert!(f.compose(&ket(1)).unwrap().close_to(&sigma, &TOL));
    }

    #[test]
    fn mixed_conditioning() {
        let mixed = ket(0).add(&ket(1)).unwrap().scale_real(0.5);
        let f = conditioning(&ket(0), &ket(1), &mixed, &ket(0), false, &TOL).unwrap();
        assert!(f.compose(&ket(0)).unwrap().distance(&mixed) <= 1e-9);
        assert!(f.compose(&ket(1)).unwrap().distance(&ket(0)) <= 1e-9);

        let same = conditioning(&ket(0), &ket(1), &mixed, &mixed, false, &TOL).unwrap();
        assert!(same.compose(&ket(0)).unwrap().close_to(&mixed, &TOL));
        assert!(same.compose(&ket(1)).unwrap().close_to(&mixed, &TOL));
    }

    #[test]
    fn conditioning_errors() {
        let mixed = ket(0).add(&ket(1)).unwrap().scale_real(0.5);
        assert!(matches!(
            conditioning(&ket(0), &ket(0), &ket(0), &ket(1), false, &TOL),
            Err(Error::NotOrthonormal { .. })
        ));
        assert!(matches!(
            conditioning(&ket(0), &ket(1), &mixed, &ket(1), true, &TOL),
            Err(Error::PurityViolation)
        ));
    }

    #[test]
    fn coarse_graining_examples() {
        let zero = CPMorphism::<Complex64>::zero(2, 2);
        assert!(derived_coarse_grain(&zero, &zero, &TOL).unwrap().is_zero(&TOL));

        let p = |i| CPMorphism::dbl(&Matrix::<Complex64>::basis(2, i).dot(&Matrix::basis(2, i).dagger()));
        let deph = derived_coarse_grain(&p(0), &p(1), &TOL).unwrap();
        let expected = Matrix::diagonal(&[1.0, 0.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0)));
        assert!(deph.doubled().close_to(&expected, &TOL));

        let mut rng = random::seeded(21);
        let f = CPMorphism::<Complex64>::random_channel(&mut rng, 2, 2, 2);
        let g = CPMorphism::<Complex64>::random_channel(&mut rng, 2, 2, 3);
        let derived = derived_coarse_grain(&f, &g, &TOL).unwrap();
        assert!(derived.distance(&f.add(&g).unwrap()) <= 1e-8);
    }
}

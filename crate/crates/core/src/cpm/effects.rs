//! Kernels, effects and states at the level of CP maps.

use super::{pure_kraus, CPMorphism, QuantScalar};
use crate::error::{Error, Result};
use crate::kernels::{cokernel, complement, kernel, KernelArrow};
use crate::matcat::{hermitian_eigenvalues, Matrix};
use crate::scalars::Tolerance;

/// The joint null space `⋂_i ker(M_i)`, as a kernel arrow in the matrix category.
pub fn kernel_cpm_inclusion<F: QuantScalar>(f: &CPMorphism<F>, tol: &Tolerance) -> KernelArrow<F> {
    let stacked = if f.kraus().is_empty() {
        Matrix::zeros(0, f.in_dim())
    } else {
        Matrix::vstack(f.kraus()).expect("Kraus operators share a domain")
    };
    kernel(&stacked, tol)
}

/// `dbl` of the joint null-space inclusion.
pub fn kernel_cpm<F: QuantScalar>(f: &CPMorphism<F>, tol: &Tolerance) -> CPMorphism<F> {
    CPMorphism::dbl(kernel_cpm_inclusion(f, tol).arrow())
}

/// `discard ∘ dbl(k)† + discard ∘ dbl(k⊥)† = discard`.
pub fn causal_complement_check<F: QuantScalar>(k: &KernelArrow<F>, tol: &Tolerance) -> bool {
    let kp = complement(k, tol);
    let effect = |m: &Matrix<F>| CPMorphism::dbl(&m.dagger()).discarded();
    match effect(k.arrow()).add(&effect(kp.arrow())) {
        Ok(sum) => sum.close_to(&CPMorphism::discard(k.ambient_dim()), tol),
        Err(_) => false,
    }
}

/// The nonzero effect `discard ∘ dbl(coker(ψ))`, which annihilates `ψ`.
pub fn pure_exclusion_witness<F: QuantScalar>(
    psi: &CPMorphism<F>,
    tol: &Tolerance,
) -> Result<CPMorphism<F>> {
    if psi.in_dim() != 1 {
        return Err(Error::dims("pure_exclusion_witness", "input is not a state"));
    }
    let n = psi.out_dim();
    if n <= 1 {
        return Err(Error::TrivialObject { dim: n });
    }
    let v = pure_kraus(psi, tol).ok_or(Error::PurityViolation)?;
    if v.frobenius_norm() <= tol.abs {
        return Err(Error::ZeroState);
    }
    Ok(CPMorphism::dbl(&cokernel(&v, tol)).discarded())
}

/// `id − Σ M†M` is positive, i.e. `discard − discard ∘ f` is an effect.
pub fn subcausal_check<F: QuantScalar>(f: &CPMorphism<F>, tol: &Tolerance) -> bool {
    let gap = Matrix::identity(f.in_dim()).minus(&f.effect_operator());
    let floor = tol.rank_threshold(gap.frobenius_norm());
    hermitian_eigenvalues(&gap).first().is_none_or(|&l| l >= -floor)
}

/// `ρ = r · σ` with `σ` causal and `r = discard ∘ ρ`.
pub fn normalise_state<F: QuantScalar>(
    rho: &CPMorphism<F>,
    tol: &Tolerance,
) -> Result<(CPMorphism<F>, F)> {
    if rho.in_dim() != 1 {
        return Err(Error::dims("normalise_state", "input is not a state"));
    }
    let r = rho.total_weight();
    if r <= tol.abs {
        return Err(Error::ZeroState);
    }
    Ok((rho.scale_real(1.0 / r), F::from_real(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::image;
    use num_complex::Complex64;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn ket(n: usize, i: usize) -> Matrix<Complex64> {
        Matrix::basis(n, i)
    }

    #[test]
    fn kernel_of_a_projection_effect() {
        // the effect ⟨0|·|0⟩, i.e. the dagger of the state |0⟩⟨0|
        let effect = CPMorphism::dbl(&ket(2, 0)).dagger();
        let k = kernel_cpm(&effect, &TOL);
        assert!(k.close_to(&CPMorphism::dbl(&ket(2, 1)), &TOL));
        assert!(effect.compose(&k).unwrap().is_zero(&TOL));
    }

    #[test]
    fn trivial_kernels() {
        assert_eq!(kernel_cpm(&CPMorphism::<Complex64>::identity(2), &TOL).in_dim(), 0);
        assert_eq!(kernel_cpm(&CPMorphism::<Complex64>::discard(3), &TOL).in_dim(), 0);
    }

    #[test]
    fn causal_complement_examples() {
        let k = image(&ket(2, 0), &TOL);
        assert!(causal_complement_check(&k, &TOL));
        let id = image(&Matrix::<Complex64>::identity(3), &TOL);
        assert!(complement(&id, &TOL).is_zero_object());
        assert!(causal_complement_check(&id, &TOL));
    }

    #[test]
    fn exclusion_witness_for_ket_zero() {
        let psi = CPMorphism::dbl(&ket(2, 0));
        let e = pure_exclusion_witness(&psi, &TOL).unwrap();
        assert!(e.close_to(&CPMorphism::dbl(&ket(2, 1)).dagger(), &TOL));
        assert!(e.compose(&psi).unwrap().is_zero(&TOL));
        let other = e.compose(&CPMorphism::dbl(&ket(2, 1))).unwrap();
        assert!((other.doubled().get(0, 0).re - 1.0).abs() < 1e-12);
        assert!(matches!(
            pure_exclusion_witness(&CPMorphism::dbl(&ket(1, 0)), &TOL),
            Err(Error::TrivialObject { dim: 1 })
        ));
    }

    #[test]
    fn subcausality_and_normalisation() {
        let k = image(&ket(2, 0), &TOL);
        assert!(subcausal_check(&CPMorphism::dbl(&k.arrow().dagger()), &TOL));
        let twice = CPMorphism::dbl(&Matrix::<Complex64>::identity(2)).scale_real(2.0);
        assert!(!subcausal_check(&twice, &TOL));

        let rho = CPMorphism::dbl(&ket(2, 0)).add(&CPMorphism::dbl(&ket(2, 1))).unwrap();
        let (sigma, r) = normalise_state(&rho, &TOL).unwrap();
        assert_eq!(r, Complex64::new(2.0, 0.0));
        assert!(sigma.close_to(&rho.scale_real(0.5), &TOL));
        assert!(sigma.is_causal(&TOL));
        assert!(matches!(
            normalise_state(&CPMorphism::<Complex64>::zero(1, 2), &TOL),
            Err(Error::ZeroState)
        ));
    }
}

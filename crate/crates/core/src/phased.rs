//! Matrices up to global phase, the phased biproduct `I ⊕̇ I` and its
//! tensor powers, and sampled audits of the quantum-category and
//! phased-ring properties of the float matrix categories.

use crate::audit::{Check, Tally};
use crate::error::{Error, Result};
use crate::kernels::{complement, image, is_kernel, KernelRing};
use crate::matcat::{
    bound_holds, bound_scalar, complete_basis, dagger_normalise_state, homogeneity_solve, Matrix,
    MatrixPositivity,
};
use crate::random::{self, SeededRng};
use crate::scalars::{phased_ring_decompose, FloatScalar, Tolerance};
use rand::Rng;

/// Acceptance bound for constructed-instance residuals.
pub const RESIDUAL_BOUND: f64 = 1e-8;

fn pivot<F: FloatScalar>(m: &Matrix<F>) -> Option<usize> {
    let max = m.max_magnitude();
    if max == 0.0 {
        return None;
    }
    let floor = max * (1.0 - 1e-9);
    m.entries().iter().position(|x| x.abs() >= floor)
}

/// `Some(u)` with `|u| = 1` and `f = u · g` when `f ∼ g`; `0 ∼ 0` with `u = 1`.
pub fn eq_up_to_phase<F: FloatScalar>(
    f: &Matrix<F>,
    g: &Matrix<F>,
    tol: &Tolerance,
) -> Result<Option<F>> {
    if f.shape() != g.shape() {
        return Err(Error::dims(
            "eq_up_to_phase",
            format!("{:?} vs {:?}", f.shape(), g.shape()),
        ));
    }
    let scale = f.frobenius_norm().max(g.frobenius_norm());
    if scale <= tol.abs {
        return Ok(Some(F::one()));
    }
    let Some(p) = pivot(g) else {
        return Ok(None);
    };
    let u = f.entries()[p].div(&g.entries()[p]).expect("pivot is nonzero");
    let unit = tol.scaled(10.0).accepts((u.abs() - 1.0).abs(), 1.0);
    Ok((unit && tol.accepts(f.distance(&g.scale(&u)), scale)).then_some(u))
}

/// A matrix read up to a unitary scalar. The stored representative has its
/// largest-magnitude entry real and positive.
#[derive(Debug, Clone)]
pub struct PhasedMorphism<F> {
    rep: Matrix<F>,
}

impl<F: FloatScalar> PhasedMorphism<F> {
    pub fn new(m: Matrix<F>) -> Self {
        let rep = match pivot(&m) {
            Some(p) => {
                let x = m.entries()[p];
                m.scale(&x.conj().scale(1.0 / x.abs()))
            }
            None => m,
        };
        PhasedMorphism { rep }
    }

    pub fn rep(&self) -> &Matrix<F> {
        &self.rep
    }

    pub fn approx_eq(&self, other: &PhasedMorphism<F>, tol: &Tolerance) -> bool {
        matches!(eq_up_to_phase(&self.rep, &other.rep, tol), Ok(Some(_)))
    }

    pub fn compose(&self, f: &PhasedMorphism<F>) -> Result<Self> {
        Ok(Self::new(self.rep.compose(&f.rep)?))
    }

    pub fn tensor(&self, g: &PhasedMorphism<F>) -> Self {
        Self::new(self.rep.tensor(&g.rep))
    }

    pub fn dagger(&self) -> Self {
        Self::new(self.rep.dagger())
    }
}

/// The object `A ⊗ (I ⊕̇ I)` with coprojections `id_A ⊗ e_i`.
#[derive(Debug, Clone)]
pub struct PhasedBiproductWitness<F> {
    pub object_dim: usize,
    pub coprojections: Vec<Matrix<F>>,
    pub phase_parameters: String,
}

impl<F: FloatScalar> PhasedBiproductWitness<F> {
    /// `id_A ⊗ diag(u, 1)`.
    pub fn phase(&self, u: F) -> Matrix<F> {
        let a = self.object_dim / 2;
        Matrix::identity(a).tensor(&Matrix::diagonal(&[u, F::one()]))
    }

    /// Whether `U ∘ κ_i ∼ κ_i` for both coprojections.
    pub fn is_phase(&self, u: &Matrix<F>, tol: &Tolerance) -> bool {
        self.coprojections.iter().all(|k| {
            u.compose(k)
                .ok()
                .and_then(|uk| eq_up_to_phase(&uk, k, tol).ok().flatten())
                .is_some()
        })
    }

    /// Orthogonal isometries, as required of coprojections.
    pub fn is_valid(&self, tol: &Tolerance) -> bool {
        let [k0, k1] = &self.coprojections[..] else {
            return false;
        };
        k0.is_isometry(tol) && k1.is_isometry(tol) && k1.dagger().dot(k0).is_zero(tol)
    }

    /// The mediating morphism `f κ_0† + g κ_1†`.
    pub fn copair(&self, f: &Matrix<F>, g: &Matrix<F>) -> Result<Matrix<F>> {
        let [k0, k1] = &self.coprojections[..] else {
            unreachable!("two coprojections")
        };
        f.compose(&k0.dagger())?.add(&g.compose(&k1.dagger())?)
    }
}

pub fn tensor_phased_biproduct<F: FloatScalar>(a_dim: usize) -> PhasedBiproductWitness<F> {
    assert!(a_dim >= 1, "the summand must be nonzero");
    let id = Matrix::<F>::identity(a_dim);
    let phase_parameters = match F::imaginary_unit() {
        Some(_) => "id_A ⊗ diag(u, 1), |u| = 1",
        None => "id_A ⊗ diag(±1, 1)",
    };
    PhasedBiproductWitness {
        object_dim: 2 * a_dim,
        coprojections: (0..2).map(|i| id.tensor(&Matrix::basis(2, i))).collect(),
        phase_parameters: phase_parameters.into(),
    }
}

/// The phase relating `h'` to `h = [f, g]`, recovered from the coprojection
/// witnesses of `h' ∘ κ_0 ∼ f` and `h' ∘ κ_1 ∼ g`.
pub fn recover_phase<F: FloatScalar>(
    w: &PhasedBiproductWitness<F>,
    h_prime: &Matrix<F>,
    f: &Matrix<F>,
    g: &Matrix<F>,
    tol: &Tolerance,
) -> Result<Option<F>> {
    let alpha = eq_up_to_phase(&h_prime.compose(&w.coprojections[0])?, f, tol)?;
    let beta = eq_up_to_phase(&h_prime.compose(&w.coprojections[1])?, g, tol)?;
    Ok(alpha.zip(beta).map(|(a, b)| a.div(&b).expect("unit scalar")))
}

/// Existence, uniqueness up to a phase `id_A ⊗ diag(u, 1)`, dagger-closure
/// of phases, and rejection of non-phase rescalings, on random `f, g : A → C`.
pub fn phased_biproduct_audit<F: FloatScalar>(
    a_dim: usize,
    samples: usize,
    rng: &mut SeededRng,
    tol: &Tolerance,
) -> Vec<Check> {
    let w = tensor_phased_biproduct::<F>(a_dim);
    let mut valid = Tally::new("coprojections");
    valid.exact(w.is_valid(tol), || "coprojections are not orthogonal isometries".into());
    let mut exist = Tally::new("existence");
    let mut unique = Tally::new("uniqueness-up-to-phase");
    let mut shape = Tally::new("phase-shape");
    let mut closure = Tally::new("phase-dagger-closure");
    let mut reject = Tally::new("non-phase-rejected");
    for s in 0..samples {
        let c = rng.random_range(1..=3);
        let f: Matrix<F> = random::gaussian_matrix(rng, c, a_dim);
        let g: Matrix<F> = if s % 10 == 9 {
            Matrix::zeros(c, a_dim)
        } else {
            random::gaussian_matrix(rng, c, a_dim)
        };
        let h = w.copair(&f, &g).expect("shapes agree");
        let r0 = h.dot(&w.coprojections[0]).distance(&f);
        let r1 = h.dot(&w.coprojections[1]).distance(&g);
        exist.within(r0.max(r1), RESIDUAL_BOUND, "h ∘ κ_i");

        let (alpha, beta) = (F::sample_phase(rng), F::sample_phase(rng));
        let h_prime = Matrix::hstack(&[f.scale(&alpha), g.scale(&beta)])
            .map(|m| m.dot(&reorder(a_dim)))
            .expect("shapes agree");
        match recover_phase(&w, &h_prime, &f, &g, tol) {
            Ok(Some(u)) => {
                let p = w.phase(u);
                let rel = eq_up_to_phase(&h_prime, &h.dot(&p), tol).ok().flatten();
                unique.exact(rel.is_some(), || format!("h' is not h ∘ U at sample {s}"));
                shape.within((u.abs() - 1.0).abs(), RESIDUAL_BOUND, "|u| - 1");
                let both = w.is_phase(&p, tol) && w.is_phase(&p.dagger(), tol);
                closure.exact(both, || format!("U or U† fails to fix κ_i at sample {s}"));
            }
            _ => unique.exact(false, || format!("no phase recovered at sample {s}")),
        }

        let doubled = h.scale_real(2.0);
        let rejected = matches!(recover_phase(&w, &doubled, &f, &g, tol), Ok(None));
        reject.exact(rejected, || format!("2·h accepted at sample {s}"));
    }
    vec![valid, exist, unique, shape, closure, reject]
        .into_iter()
        .map(Tally::finish)
        .collect()
}

/// Permutation taking `[x-block | y-block]` column order to the
/// `A ⊗ (I ⊕̇ I)` interleaving.
fn reorder<F: FloatScalar>(a_dim: usize) -> Matrix<F> {
    Matrix::from_fn(2 * a_dim, 2 * a_dim, |r, c| {
        let (x, j) = (c / 2, c % 2);
        F::from_real(if r == j * a_dim + x { 1.0 } else { 0.0 })
    })
}

/// Positive cancellation on `I ⊕̇ I`: whenever a positive diagonal `p`
/// satisfies `p ∼ q ∘ U` for a phase `U` and positive diagonal `q`, then
/// `p = q`; plus the same rigidity for general positives `p ∼ q`.
pub fn positive_cancellation_check<F: FloatScalar + MatrixPositivity>(
    samples: usize,
    rng: &mut SeededRng,
    tol: &Tolerance,
) -> Vec<Check> {
    let mut diag = Tally::new("positive-cancellation");
    let mut rigid = Tally::new("positive-rigidity");
    let mut forced = 0usize;
    for s in 0..samples {
        let pattern = s % 3;
        let entry = |rng: &mut SeededRng, zero: bool| {
            if zero {
                0.0
            } else {
                rng.random_range(0.1..2.0)
            }
        };
        let q0 = entry(rng, pattern == 1);
        let q1 = entry(rng, pattern == 2);
        let q = Matrix::diagonal(&[F::from_real(q0), F::from_real(q1)]);
        let u = F::sample_phase(rng);
        let lambda = if pattern == 2 { u.conj() } else { F::one() };
        let candidate = q.dot(&Matrix::diagonal(&[u, F::one()])).scale(&lambda);
        if F::is_positive_morphism(&candidate, tol).unwrap_or(false) {
            forced += 1;
            diag.within(candidate.distance(&q), RESIDUAL_BOUND, "p = q ∘ U forces p = q");
        } else {
            diag.exact(pattern == 0, || format!("degenerate instance {s} had no positive p"));
        }

        let n = rng.random_range(1..=3);
        let g: Matrix<F> = random::gaussian_matrix(rng, n, n);
        let qm = g.dagger().dot(&g);
        let theta = F::sample_phase(rng);
        let pm = qm.scale(&theta);
        if F::is_positive_morphism(&pm, tol).unwrap_or(false) {
            rigid.within(pm.distance(&qm), RESIDUAL_BOUND, "p ∼ q with both positive");
        } else {
            let trivial = theta.sub(&F::one()).abs() <= RESIDUAL_BOUND;
            rigid.exact(!trivial, || format!("p = q rejected as non-positive at {s}"));
        }
    }
    diag.annotate(format!("{forced} instances with a positive p"));
    vec![diag.finish(), rigid.finish()]
}

/// A unitary taking the orthonormal pair `(k0, k1)` to `(l0, l1)`.
pub fn strong_symmetry_solve<F: FloatScalar>(
    from: (&Matrix<F>, &Matrix<F>),
    to: (&Matrix<F>, &Matrix<F>),
    tol: &Tolerance,
) -> Result<Matrix<F>> {
    let n = from.0.rows();
    for (a, b) in [from, to] {
        if a.shape() != (n, 1) || b.shape() != (n, 1) {
            return Err(Error::dims("strong_symmetry_solve", "states of different objects"));
        }
        let gram = Matrix::hstack(&[a.clone(), b.clone()]).expect("columns");
        let residual = gram.isometry_defect();
        if residual > tol.scaled(10.0).abs {
            return Err(Error::NotOrthonormal { residual });
        }
    }
    let a = complete_basis(&[from.0.clone(), from.1.clone()], n, tol);
    let b = complete_basis(&[to.0.clone(), to.1.clone()], n, tol);
    Ok(b.dot(&a.dagger()))
}

/// Dagger normalisation, homogeneity, state-habitation, isometries as
/// kernels, unitarity of `[k, k⊥]`, well-pointedness and bound scalars, on
/// random instances of dimension at most `max_dim`.
pub fn quantum_category_audit<F: FloatScalar + KernelRing>(
    max_dim: usize,
    samples: usize,
    rng: &mut SeededRng,
    tol: &Tolerance,
) -> Vec<Check> {
    let mut normalise = Tally::new("dagger-normalisation");
    let mut homogeneity = Tally::new("homogeneity");
    let mut inhabited = Tally::new("state-inhabited");
    let mut iso_kernel = Tally::new("isometry-is-kernel");
    let mut split = Tally::new("kernel-complement-unitary");
    let mut pointed = Tally::new("well-pointedness");
    let mut bound = Tally::new("bound-scalar");
    let dim = |rng: &mut SeededRng| rng.random_range(1..=max_dim.max(1));

    for n in 1..=max_dim.max(1) {
        let e0 = Matrix::<F>::basis(n, 0);
        inhabited.exact(e0.is_isometry(tol), || format!("e0 of {n} is not an isometry"));
    }

    for s in 0..samples {
        let n = dim(rng);
        let psi: Matrix<F> = random::gaussian_matrix(rng, n, 1);
        match dagger_normalise_state(&psi, tol) {
            Ok((sigma, r)) => {
                let res = sigma.scale(&r).distance(&psi).max(sigma.isometry_defect());
                normalise.within(res, RESIDUAL_BOUND, "ψ = σ r");
            }
            Err(e) => normalise.exact(false, || format!("sample {s}: {e}")),
        }

        let (m, n) = (dim(rng), dim(rng));
        let inner = rng.random_range(1..=n.min(m));
        let f = random::gaussian_matrix::<F>(rng, m, inner).dot(&random::gaussian_matrix(rng, inner, n));
        let u0: Matrix<F> = random::unitary(rng, m);
        let g = u0.dot(&f);
        match homogeneity_solve(&f, &g, tol) {
            Ok(u) => {
                let res = u.dot(&f).distance(&g).max(u.isometry_defect());
                homogeneity.within(res, RESIDUAL_BOUND, "U f = g");
            }
            Err(e) => homogeneity.exact(false, || format!("sample {s}: {e}")),
        }

        let rows = dim(rng);
        let cols = rng.random_range(0..=rows);
        let v: Matrix<F> = random::isometry(rng, rows, cols);
        let canon = image(&v, tol);
        let same_range = canon
            .arrow()
            .dot(&canon.arrow().dagger())
            .close_to(&v.dot(&v.dagger()), &tol.scaled(10.0));
        let fixed = is_kernel(&v, tol) && same_range;
        iso_kernel.exact(fixed, || format!("isometry {rows}x{cols} is not a kernel"));

        let k = image(&v, tol);
        let kc = complement(&k, tol);
        let joined = Matrix::hstack(&[k.arrow().clone(), kc.arrow().clone()]).expect("same ambient");
        let res = if joined.is_square() {
            joined.isometry_defect().max(joined.dagger().isometry_defect())
        } else {
            f64::INFINITY
        };
        split.within(res, RESIDUAL_BOUND, "[k, k⊥] unitary");

        let (m, n) = (dim(rng), dim(rng));
        let f: Matrix<F> = random::gaussian_matrix(rng, m, n);
        let g = match s % 3 {
            0 => f.clone(),
            1 => f.plus(&random::gaussian_matrix(rng, m, n)),
            _ => {
                let j = rng.random_range(0..n);
                let d: Matrix<F> = random::gaussian_matrix(rng, m, 1);
                f.plus(&d.dot(&Matrix::basis(n, j).dagger()))
            }
        };
        let agree = (0..n).all(|i| {
            let e = Matrix::basis(n, i);
            f.dot(&e).close_to(&g.dot(&e), tol)
        });
        pointed.exact(agree == f.close_to(&g, tol), || {
            format!("basis probes disagree with equality at sample {s}")
        });

        let s_f = bound_scalar(&f);
        let probe: Matrix<F> = random::gaussian_matrix(rng, n, 1);
        bound.exact(bound_holds(&f, s_f, &probe, tol), || {
            format!("ψ† f† f ψ exceeds s† s ψ† ψ at sample {s}")
        });
    }
    vec![normalise, homogeneity, inhabited, iso_kernel, split, pointed, bound]
        .into_iter()
        .map(Tally::finish)
        .collect()
}

/// Integral-domain sampling and the norm-sum decomposition
/// `a†a + b†b = c†c`, `a = c d`, `b = c e`, checked by back-substitution.
pub fn phased_ring_audit<F: FloatScalar>(
    samples: usize,
    rng: &mut SeededRng,
    tol: &Tolerance,
) -> Vec<Check> {
    let mut domain = Tally::new("integral-domain");
    let mut decompose = Tally::new("phased-ring-decomposition");
    for s in 0..samples {
        let zero_a = s % 7 == 3;
        let a = if zero_a { F::zero() } else { F::sample_gaussian(rng) };
        let b = if s % 5 == 4 { F::zero() } else { F::sample_gaussian(rng) };
        let product_zero = a.mul(&b).abs() <= tol.abs;
        let factor_zero = a.abs() <= tol.abs || b.abs() <= tol.abs;
        domain.exact(product_zero == factor_zero, || format!("a·b = 0 without a zero factor at {s}"));

        match phased_ring_decompose(a, b, tol) {
            Ok(split) => {
                let res = split.residual(a, b).max(split.c.im().abs());
                let positive = split.c.re() >= 0.0;
                decompose.record(positive && res <= RESIDUAL_BOUND, res, || {
                    format!("decomposition of sample {s} has residual {res:e}")
                });
            }
            Err(Error::BothZero) => {
                decompose.exact(zero_a && b.abs() <= tol.abs, || format!("spurious BothZero at {s}"))
            }
            Err(e) => decompose.exact(false, || format!("sample {s}: {e}")),
        }
    }
    vec![domain.finish(), decompose.finish()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::seeded;
    use num_complex::Complex64;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn all_pass(checks: &[Check]) {
        for ch in checks {
            assert!(ch.passed, "{}: {:?}", ch.name, ch.note);
        }
    }

    #[test]
    fn phase_equality_examples() {
        let g = Matrix::column(vec![c(1.0, 2.0), c(0.5, 0.0)]);
        let f = g.scale(&c(0.0, 1.0));
        let u = eq_up_to_phase(&f, &g, &TOL).unwrap().unwrap();
        assert!((u - c(0.0, 1.0)).norm() < 1e-12);
        assert_eq!(eq_up_to_phase(&g.scale(&c(2.0, 0.0)), &g, &TOL).unwrap(), None);
        let z = Matrix::<Complex64>::zeros(2, 2);
        assert_eq!(eq_up_to_phase(&z, &z, &TOL).unwrap(), Some(c(1.0, 0.0)));
        assert!(eq_up_to_phase(&z, &Matrix::zeros(1, 2), &TOL).is_err());
    }

    #[test]
    fn representatives_are_canonical() {
        let mut rng = seeded(2);
        for _ in 0..20 {
            let m: Matrix<Complex64> = random::gaussian_matrix(&mut rng, 2, 3);
            let u = Complex64::sample_phase(&mut rng);
            let a = PhasedMorphism::new(m.clone());
            let b = PhasedMorphism::new(m.scale(&u));
            assert!(a.rep().close_to(b.rep(), &TOL));
            assert!(a.approx_eq(&b, &TOL));
        }
    }

    #[test]
    fn i_plus_i_examples() {
        let w = tensor_phased_biproduct::<Complex64>(1);
        let one = Matrix::scalar(c(1.0, 0.0));
        let h = w.copair(&one, &one).unwrap();
        assert_eq!(h, Matrix::row(vec![c(1.0, 0.0), c(1.0, 0.0)]));
        let t = c(0.3f64.cos(), 0.3f64.sin());
        let h_prime = Matrix::row(vec![t, c(1.0, 0.0)]);
        let u = recover_phase(&w, &h_prime, &one, &one, &TOL).unwrap().unwrap();
        assert!((u - t).norm() < 1e-12);
        assert!(h.dot(&w.phase(u)).close_to(&h_prime, &TOL));
        assert_eq!(recover_phase(&w, &h.scale_real(2.0), &one, &one, &TOL).unwrap(), None);
    }

    #[test]
    fn tensor_witness_blocks() {
        let w = tensor_phased_biproduct::<Complex64>(2);
        assert_eq!(w.coprojections[0].shape(), (4, 2));
        assert!(w.is_valid(&TOL));
        let p = w.phase(c(0.0, 1.0));
        assert!(p.dot(&w.coprojections[0]).close_to(&w.coprojections[0].scale(&c(0.0, 1.0)), &TOL));
        assert!(p.dot(&w.coprojections[1]).close_to(&w.coprojections[1], &TOL));
        assert!(w.is_phase(&p, &TOL) && w.is_phase(&p.dagger(), &TOL));
        assert!(!w.is_phase(&Matrix::identity(4).scale_real(2.0), &TOL));
    }

    #[test]
    fn real_phases_are_signs() {
        let mut rng = seeded(5);
        let w = tensor_phased_biproduct::<f64>(1);
        let f = Matrix::scalar(1.5);
        let g = Matrix::scalar(-0.5);
        for _ in 0..10 {
            let sign = f64::sample_phase(&mut rng);
            let h_prime = Matrix::row(vec![1.5 * sign, -0.5]);
            let u = recover_phase(&w, &h_prime, &f, &g, &TOL).unwrap().unwrap();
            assert_eq!(u, sign);
        }
    }

    #[test]
    fn biproduct_audits_pass() {
        for a in 1..=2 {
            all_pass(&phased_biproduct_audit::<Complex64>(a, 60, &mut seeded(1), &TOL));
            all_pass(&phased_biproduct_audit::<f64>(a, 60, &mut seeded(1), &TOL));
        }
    }

    #[test]
    fn positive_cancellation_passes() {
        all_pass(&positive_cancellation_check::<Complex64>(90, &mut seeded(3), &TOL));
        all_pass(&positive_cancellation_check::<f64>(90, &mut seeded(3), &TOL));
    }

    #[test]
    fn strong_symmetry_examples() {
        let e = |n, i| Matrix::<f64>::basis(n, i);
        let u = strong_symmetry_solve((&e(2, 0), &e(2, 1)), (&e(2, 0), &e(2, 1)), &TOL).unwrap();
        assert!(u.close_to(&Matrix::identity(2), &TOL));
        let u = strong_symmetry_solve((&e(2, 0), &e(2, 1)), (&e(2, 1), &e(2, 0)), &TOL).unwrap();
        assert!(u.close_to(&Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]), &TOL));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = Matrix::column(vec![h, h, 0.0]);
        let minus = Matrix::column(vec![h, -h, 0.0]);
        let u = strong_symmetry_solve((&e(3, 0), &e(3, 1)), (&plus, &minus), &TOL).unwrap();
        assert!(u.dot(&e(3, 0)).distance(&plus) <= 1e-8);
        assert!(u.dot(&e(3, 1)).distance(&minus) <= 1e-8);
        assert!(u.isometry_defect() <= 1e-8);

        let r = strong_symmetry_solve((&e(2, 0), &e(2, 0)), (&e(2, 0), &e(2, 1)), &TOL);
        assert!(matches!(r, Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn quantum_category_audit_passes() {
        all_pass(&quantum_category_audit::<Complex64>(3, 60, &mut seeded(7), &TOL));
        all_pass(&quantum_category_audit::<f64>(3, 60, &mut seeded(7), &TOL));
    }

    #[test]
    fn phased_ring_examples() {
        let s = phased_ring_decompose(c(3.0, 4.0), c(0.0, 0.0), &TOL).unwrap();
        assert!((s.c - c(5.0, 0.0)).norm() < 1e-12);
        let s = phased_ring_decompose(c(1.0, 0.0), c(0.0, 1.0), &TOL).unwrap();
        assert!((s.c.re - 2f64.sqrt()).abs() < 1e-12);
        assert!(s.residual(c(1.0, 0.0), c(0.0, 1.0)) <= 1e-12);
        all_pass(&phased_ring_audit::<Complex64>(100, &mut seeded(0), &TOL));
        all_pass(&phased_ring_audit::<f64>(100, &mut seeded(0), &TOL));
    }

    #[test]
    fn phase_equivalence_is_a_congruence() {
        let mut rng = seeded(11);
        for _ in 0..20 {
            let f: Matrix<Complex64> = random::gaussian_matrix(&mut rng, 2, 2);
            let g: Matrix<Complex64> = random::gaussian_matrix(&mut rng, 3, 2);
            let (u, v) = (Complex64::sample_phase(&mut rng), Complex64::sample_phase(&mut rng));
            let (pf, pg) = (PhasedMorphism::new(f.clone()), PhasedMorphism::new(g.clone()));
            let (pf2, pg2) = (PhasedMorphism::new(f.scale(&u)), PhasedMorphism::new(g.scale(&v)));
            assert!(pg.compose(&pf).unwrap().approx_eq(&pg2.compose(&pf2).unwrap(), &TOL));
            assert!(pg.tensor(&pf).approx_eq(&pg2.tensor(&pf2), &TOL));
            assert!(pf.dagger().approx_eq(&pf2.dagger(), &TOL));
        }
    }
}

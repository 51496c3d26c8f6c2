//! Completely positive maps over a matrix category, in Kraus form.
//!
//! A morphism `n → m` is a list of Kraus operators `M_i : n → m`; its
//! canonical form is the doubled matrix `Σ_i conj(M_i) ⊗ M_i : n² → m²`,
//! and two morphisms are equal exactly when their doubled forms agree.
//! Doubled indices pair `(i, j) ↦ i·n + j` with the conjugate factor major.

mod conditioning;
mod effects;
mod purity;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::kernels::KernelRing;
use crate::matcat::{cap, cup, Matrix, MatrixPositivity};
use crate::random::{self, SeededRng};
use crate::scalars::{FloatScalar, RingId, Semiring, Tolerance};

pub use conditioning::{conditioning, derived_coarse_grain};
pub use effects::{
    causal_complement_check, kernel_cpm, kernel_cpm_inclusion, normalise_state,
    pure_exclusion_witness, subcausal_check,
};
pub use purity::{
    atomicity_check, dilation_purity_oracle, essential_uniqueness_unitary, is_product_dilation,
    is_pure, marginalize, pure_kraus, purify, purify_padded,
};

/// Float scalars with every algorithm the CPM layer needs.
pub trait QuantScalar: FloatScalar + KernelRing + MatrixPositivity {}

impl<F: FloatScalar + KernelRing + MatrixPositivity> QuantScalar for F {}

#[derive(Debug, Clone)]
pub struct CPMorphism<S> {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<Matrix<S>>,
    doubled: Matrix<S>,
}

fn doubled_of<S: Semiring>(in_dim: usize, out_dim: usize, kraus: &[Matrix<S>]) -> Matrix<S> {
    kraus.iter().fold(
        Matrix::zeros(out_dim * out_dim, in_dim * in_dim),
        |acc, m| acc.plus(&m.conj().tensor(m)),
    )
}

impl<S: Semiring> CPMorphism<S> {
    pub fn new(in_dim: usize, out_dim: usize, kraus: Vec<Matrix<S>>) -> Result<Self> {
        if let Some(bad) = kraus.iter().find(|m| m.shape() != (out_dim, in_dim)) {
            return Err(Error::dims(
                "CPMorphism::new",
                format!(
                    "Kraus operator {:?} for a map {in_dim} -> {out_dim}",
                    bad.shape()
                ),
            ));
        }
        let doubled = doubled_of(in_dim, out_dim, &kraus);
        Ok(CPMorphism {
            in_dim,
            out_dim,
            kraus,
            doubled,
        })
    }

    fn from_kraus(in_dim: usize, out_dim: usize, kraus: Vec<Matrix<S>>) -> Self {
        Self::new(in_dim, out_dim, kraus).expect("Kraus shapes are consistent")
    }

    /// The single-Kraus map `f* ⊗ f`.
    pub fn dbl(f: &Matrix<S>) -> Self {
        Self::from_kraus(f.cols(), f.rows(), vec![f.clone()])
    }

    pub fn zero(in_dim: usize, out_dim: usize) -> Self {
        Self::from_kraus(in_dim, out_dim, Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Self::dbl(&Matrix::identity(n))
    }

    /// The trace effect `n → 1`, with Kraus operators `⟨i|`.
    pub fn discard(n: usize) -> Self {
        let kraus = (0..n).map(|i| Matrix::basis(n, i).dagger()).collect();
        Self::from_kraus(n, 1, kraus)
    }

    /// The doubled cup state `I → n ⊗ n`.
    pub fn cup(n: usize) -> Self {
        Self::dbl(&cup(n))
    }

    /// The doubled cap effect `n ⊗ n → I`.
    pub fn cap(n: usize) -> Self {
        Self::dbl(&cap(n))
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[Matrix<S>] {
        &self.kraus
    }

    pub fn doubled(&self) -> &Matrix<S> {
        &self.doubled
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &CPMorphism<S>) -> Result<Self> {
        if self.in_dim != f.out_dim {
            return Err(Error::dims(
                "compose_cpm",
                format!(
                    "{} -> {} after {} -> {}",
                    self.in_dim, self.out_dim, f.in_dim, f.out_dim
                ),
            ));
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|n| f.kraus.iter().map(move |m| n.dot(m)))
            .collect();
        Ok(Self::from_kraus(f.in_dim, self.out_dim, kraus))
    }

    /// Composition.
    ///
    /// # Panics
    /// If the types do not match.
    pub fn then(&self, g: &CPMorphism<S>) -> Self {
        g.compose(self).expect("composable CP maps")
    }

    pub fn tensor(&self, g: &CPMorphism<S>) -> Self {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|m| g.kraus.iter().map(move |n| m.tensor(n)))
            .collect();
        Self::from_kraus(
            self.in_dim * g.in_dim,
            self.out_dim * g.out_dim,
            kraus,
        )
    }

    pub fn dagger(&self) -> Self {
        let kraus = self.kraus.iter().map(Matrix::dagger).collect();
        Self::from_kraus(self.out_dim, self.in_dim, kraus)
    }

    /// Coarse-graining: the union of the two Kraus families.
    pub fn add(&self, g: &CPMorphism<S>) -> Result<Self> {
        if (self.in_dim, self.out_dim) != (g.in_dim, g.out_dim) {
            return Err(Error::dims(
                "add_cpm",
                format!(
                    "{} -> {} vs {} -> {}",
                    self.in_dim, self.out_dim, g.in_dim, g.out_dim
                ),
            ));
        }
        let kraus = self.kraus.iter().chain(&g.kraus).cloned().collect();
        Ok(Self::from_kraus(self.in_dim, self.out_dim, kraus))
    }

    /// `Σ_i M_i† M_i`; the effect `discard ∘ f` reads this operator.
    pub fn effect_operator(&self) -> Matrix<S> {
        self.kraus.iter().fold(
            Matrix::zeros(self.in_dim, self.in_dim),
            |acc, m| acc.plus(&m.dagger().dot(m)),
        )
    }

    /// `discard ∘ f`.
    pub fn discarded(&self) -> Self {
        CPMorphism::discard(self.out_dim).compose(self).expect("matching dims")
    }

    pub fn is_causal(&self, tol: &Tolerance) -> bool {
        self.discarded()
            .approx_eq(&CPMorphism::discard(self.in_dim), tol)
    }

    /// Equality of doubled forms.
    pub fn approx_eq(&self, other: &CPMorphism<S>, tol: &Tolerance) -> bool {
        self.doubled.approx_eq(&other.doubled, tol)
    }

    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        self.doubled.is_zero(tol)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "ring": S::RING,
            "in": self.in_dim,
            "out": self.out_dim,
            "kraus": self.kraus.iter().map(Matrix::to_json).collect::<Vec<_>>(),
            "doubled": self.doubled.to_json(),
        })
    }

    /// Loads a map and recomputes its doubled form; a `"doubled"` field, when
    /// present, must agree with the recomputed one.
    pub fn from_json(value: &Value, tol: &Tolerance) -> Result<Self> {
        let field = |name: &str| {
            value
                .get(name)
                .ok_or_else(|| Error::Format(format!("missing field {name:?}")))
        };
        let ring: RingId = serde_json::from_value(field("ring")?.clone())?;
        if ring != S::RING {
            return Err(Error::MixedRings {
                expected: S::RING,
                found: ring,
            });
        }
        let in_dim: usize = serde_json::from_value(field("in")?.clone())?;
        let out_dim: usize = serde_json::from_value(field("out")?.clone())?;
        let kraus = field("kraus")?
            .as_array()
            .ok_or_else(|| Error::Format("\"kraus\" is not a list".into()))?
            .iter()
            .map(Matrix::from_json)
            .collect::<Result<Vec<_>>>()?;
        let map = Self::new(in_dim, out_dim, kraus)?;
        if let Some(doubled) = value.get("doubled") {
            let stored = Matrix::<S>::from_json(doubled)?;
            if !stored.approx_eq(&map.doubled, tol) {
                return Err(Error::Format(
                    "stored doubled form disagrees with the Kraus operators".into(),
                ));
            }
        }
        Ok(map)
    }
}

impl<F: FloatScalar> CPMorphism<F> {
    /// Frobenius distance between doubled forms.
    pub fn distance(&self, other: &CPMorphism<F>) -> f64 {
        self.doubled.distance(&other.doubled)
    }

    pub fn close_to(&self, other: &CPMorphism<F>, tol: &Tolerance) -> bool {
        (self.in_dim, self.out_dim) == (other.in_dim, other.out_dim)
            && self.doubled.close_to(&other.doubled, tol)
    }

    /// Multiplication by a non-negative real `x` (Kraus operators scale by `√x`).
    pub fn scale_real(&self, x: f64) -> Self {
        let s = x.max(0.0).sqrt();
        let kraus = self.kraus.iter().map(|m| m.scale_real(s)).collect();
        Self::from_kraus(self.in_dim, self.out_dim, kraus)
    }

    /// `tr` of a state, or more generally `tr(Σ M†M)`.
    pub fn total_weight(&self) -> f64 {
        self.kraus.iter().map(|m| m.frobenius_norm().powi(2)).sum()
    }

    /// Gaussian Kraus operators.
    pub fn random(rng: &mut SeededRng, in_dim: usize, out_dim: usize, kraus_count: usize) -> Self {
        let kraus = (0..kraus_count)
            .map(|_| random::gaussian_matrix(rng, out_dim, in_dim))
            .collect();
        Self::from_kraus(in_dim, out_dim, kraus)
    }

    /// A causal map: the Kraus blocks of a random isometry `n → m·k`
    /// (`k` is raised if needed so that the isometry exists).
    pub fn random_channel(
        rng: &mut SeededRng,
        in_dim: usize,
        out_dim: usize,
        kraus_count: usize,
    ) -> Self {
        let k = kraus_count.max(1).max(in_dim.div_ceil(out_dim.max(1)));
        let v: Matrix<F> = random::isometry(rng, out_dim * k, in_dim);
        let kraus = (0..k).map(|e| env_block(&v, out_dim, k, e)).collect();
        Self::from_kraus(in_dim, out_dim, kraus)
    }
}

/// `(id_B ⊗ ⟨e|) V` for `V : A → B ⊗ E`.
pub(crate) fn env_block<S: Semiring>(v: &Matrix<S>, b: usize, env: usize, e: usize) -> Matrix<S> {
    Matrix::from_fn(b, v.cols(), |i, j| v.get(i * env + e, j).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn x_gate() -> Matrix<Complex64> {
        Matrix::from_rows(vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]])
    }

    fn ket(i: usize) -> Matrix<Complex64> {
        Matrix::basis(2, i)
    }

    #[test]
    fn dbl_examples() {
        assert!(CPMorphism::dbl(&Matrix::<Complex64>::identity(2))
            .approx_eq(&CPMorphism::identity(2), &TOL));
        // conj(X) ⊗ X permutes (i, j) ↦ (1−i, 1−j)
        let expected = Matrix::from_fn(4, 4, |r, s| if r + s == 3 { c(1.0) } else { c(0.0) });
        assert_eq!(CPMorphism::dbl(&x_gate()).doubled(), &expected);
        assert!(CPMorphism::dbl(&Matrix::<Complex64>::zeros(2, 2)).is_zero(&TOL));
    }

    #[test]
    fn dephasing_as_a_sum() {
        let p0 = ket(0).dot(&ket(0).dagger());
        let p1 = ket(1).dot(&ket(1).dagger());
        let deph = CPMorphism::dbl(&p0).add(&CPMorphism::dbl(&p1)).unwrap();
        let expected = Matrix::diagonal(&[c(1.0), c(0.0), c(0.0), c(1.0)]);
        assert_eq!(deph.doubled(), &expected);
        assert!(deph.add(&CPMorphism::zero(2, 2)).unwrap().approx_eq(&deph, &TOL));
        let xx = CPMorphism::dbl(&x_gate()).compose(&CPMorphism::dbl(&x_gate())).unwrap();
        assert!(xx.approx_eq(&CPMorphism::identity(2), &TOL));
    }

    #[test]
    fn discard_and_causality() {
        let state = CPMorphism::dbl(&ket(0));
        let tr = CPMorphism::discard(2).compose(&state).unwrap();
        assert_eq!(tr.doubled(), &Matrix::scalar(c(1.0)));
        assert_eq!(CPMorphism::<f64>::discard(2).doubled(), &cap::<f64>(2));

        let v = Matrix::column(vec![c(0.6), c(0.8)]);
        assert!(CPMorphism::dbl(&v).is_causal(&TOL));
        let two = Matrix::<Complex64>::identity(2).scale(&c(2.0));
        let f = CPMorphism::dbl(&two);
        assert!(!f.is_causal(&TOL));
        assert_eq!(f.effect_operator(), Matrix::identity(2).scale(&c(4.0)));
    }

    #[test]
    fn dimension_errors() {
        let f = CPMorphism::<f64>::identity(2);
        let g = CPMorphism::<f64>::identity(3);
        assert!(matches!(f.compose(&g), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(f.add(&g), Err(Error::DimensionMismatch { .. })));
        assert!(CPMorphism::new(2, 2, vec![Matrix::<f64>::zeros(2, 3)]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let mut rng = random::seeded(1);
        let f = CPMorphism::<Complex64>::random(&mut rng, 2, 3, 2);
        let doc = f.to_json();
        let back = CPMorphism::<Complex64>::from_json(&doc, &TOL).unwrap();
        assert!(back.approx_eq(&f, &TOL));

        let mut tampered = doc.clone();
        tampered["doubled"] = CPMorphism::<Complex64>::zero(2, 3).doubled().to_json();
        assert!(CPMorphism::<Complex64>::from_json(&tampered, &TOL).is_err());
        assert!(CPMorphism::<f64>::from_json(&doc, &TOL).is_err());
    }

    #[test]
    fn random_channels_are_causal() {
        let mut rng = random::seeded(2);
        for k in 1..=3 {
            let f = CPMorphism::<Complex64>::random_channel(&mut rng, 2, 3, k);
            assert!(f.is_causal(&TOL));
        }
    }
}

//! Dagger kernels and the orthomodular lattice of kernel subobjects.
//!
//! Kernels are stored in a canonical form so that two kernels of the same
//! subobject compare equal as matrices. Over floats the form is derived
//! from the orthogonal projector onto the subspace: Gram–Schmidt applied to
//! its columns in index order. Over `ℚ⁺` and the Booleans every kernel is a
//! coordinate inclusion, listed in increasing coordinate order.

use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matcat::{gram_schmidt, orthonormal_columns, Matrix};
use crate::scalars::{FloatScalar, NonNegRational, Semiring, Tolerance};

/// A canonical isometry `K → A`, stored as a `dim(A) × dim(K)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelArrow<S> {
    arrow: Matrix<S>,
}

impl<S: Semiring> KernelArrow<S> {
    pub fn arrow(&self) -> &Matrix<S> {
        &self.arrow
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.arrow
    }

    /// Dimension of the subobject `K`.
    pub fn source_dim(&self) -> usize {
        self.arrow.cols()
    }

    /// Dimension of the ambient object `A`.
    pub fn ambient_dim(&self) -> usize {
        self.arrow.rows()
    }

    pub fn is_zero_object(&self) -> bool {
        self.arrow.cols() == 0
    }

    /// The matrix document with a `"kernel": true` annotation.
    pub fn to_json(&self) -> Value {
        let mut doc = self.arrow.to_json();
        doc["kernel"] = Value::Bool(true);
        doc
    }
}

impl<S: KernelRing> KernelArrow<S> {
    /// Re-canonicalizes a loaded arrow; the document must carry `"kernel": true`
    /// and describe an isometry.
    pub fn from_json(value: &Value, tol: &Tolerance) -> Result<Self> {
        if value.get("kernel") != Some(&Value::Bool(true)) {
            return Err(Error::Format("missing \"kernel\": true annotation".into()));
        }
        let m = Matrix::<S>::from_json(value)?;
        if !m.is_isometry(tol) {
            return Err(Error::Format("kernel arrow is not an isometry".into()));
        }
        Ok(image(&m, tol))
    }
}

/// Rings with a kernel algorithm.
pub trait KernelRing: Semiring {
    /// The canonical kernel of `f`.
    fn null_space(f: &Matrix<Self>, tol: &Tolerance) -> Matrix<Self>;
}

fn float_null_space<F: FloatScalar>(f: &Matrix<F>, tol: &Tolerance) -> Matrix<F> {
    let n = f.cols();
    let row_space = orthonormal_columns(&f.dagger(), tol);
    let projector = Matrix::identity(n).minus(&row_space.dot(&row_space.dagger()));
    canonical_from_projector(&projector, tol)
}

/// Gram–Schmidt on the projector's columns; depends only on the subspace.
fn canonical_from_projector<F: FloatScalar>(p: &Matrix<F>, tol: &Tolerance) -> Matrix<F> {
    let cols = gram_schmidt(&p.columns(), None, &tol.scaled(10.0)).expect("standard inner product");
    if cols.is_empty() {
        Matrix::zeros(p.rows(), 0)
    } else {
        Matrix::hstack(&cols).expect("equal lengths")
    }
}

/// Inclusion of the coordinates whose column of `f` vanishes.
fn coordinate_null_space<S: Semiring>(f: &Matrix<S>, tol: &Tolerance) -> Matrix<S> {
    let free: Vec<usize> = (0..f.cols())
        .filter(|&j| (0..f.rows()).all(|i| f.get(i, j).is_zero_within(tol)))
        .collect();
    Matrix::from_fn(f.cols(), free.len(), |r, c| {
        if free[c] == r {
            S::one()
        } else {
            S::zero()
        }
    })
}

impl KernelRing for f64 {
    fn null_space(f: &Matrix<Self>, tol: &Tolerance) -> Matrix<Self> {
        float_null_space(f, tol)
    }
}

impl KernelRing for Complex64 {
    fn null_space(f: &Matrix<Self>, tol: &Tolerance) -> Matrix<Self> {
        float_null_space(f, tol)
    }
}

impl KernelRing for bool {
    fn null_space(f: &Matrix<Self>, tol: &Tolerance) -> Matrix<Self> {
        coordinate_null_space(f, tol)
    }
}

impl KernelRing for NonNegRational {
    fn null_space(f: &Matrix<Self>, tol: &Tolerance) -> Matrix<Self> {
        coordinate_null_space(f, tol)
    }
}

pub fn kernel<S: KernelRing>(f: &Matrix<S>, tol: &Tolerance) -> KernelArrow<S> {
    KernelArrow {
        arrow: S::null_space(f, tol),
    }
}

/// `coker(f) = ker(f†)†`.
pub fn cokernel<S: KernelRing>(f: &Matrix<S>, tol: &Tolerance) -> Matrix<S> {
    kernel(&f.dagger(), tol).arrow.dagger()
}

/// `im(f) = ker(coker(f))`.
pub fn image<S: KernelRing>(f: &Matrix<S>, tol: &Tolerance) -> KernelArrow<S> {
    kernel(&cokernel(f, tol), tol)
}

/// `coim(f) = coker(ker(f))`.
pub fn coimage<S: KernelRing>(f: &Matrix<S>, tol: &Tolerance) -> Matrix<S> {
    cokernel(&kernel(f, tol).arrow, tol)
}

/// `k⊥ = coker(k)† = ker(k†)`.
pub fn complement<S: KernelRing>(k: &KernelArrow<S>, tol: &Tolerance) -> KernelArrow<S> {
    kernel(&k.arrow.dagger(), tol)
}

fn same_ambient<S: Semiring>(op: &'static str, a: &KernelArrow<S>, b: &KernelArrow<S>) -> Result<()> {
    if a.ambient_dim() == b.ambient_dim() {
        Ok(())
    } else {
        Err(Error::dims(
            op,
            format!("ambient {} vs {}", a.ambient_dim(), b.ambient_dim()),
        ))
    }
}

/// Intersection: the kernel of the stacked complements' daggers.
pub fn lattice_meet<S: KernelRing>(
    k1: &KernelArrow<S>,
    k2: &KernelArrow<S>,
    tol: &Tolerance,
) -> Result<KernelArrow<S>> {
    same_ambient("lattice_meet", k1, k2)?;
    let c1 = complement(k1, tol).arrow.dagger();
    let c2 = complement(k2, tol).arrow.dagger();
    Ok(kernel(&Matrix::vstack(&[c1, c2])?, tol))
}

/// `k1 ∨ k2 = (k1⊥ ∧ k2⊥)⊥`.
pub fn lattice_join<S: KernelRing>(
    k1: &KernelArrow<S>,
    k2: &KernelArrow<S>,
    tol: &Tolerance,
) -> Result<KernelArrow<S>> {
    let meet = lattice_meet(&complement(k1, tol), &complement(k2, tol), tol)?;
    Ok(complement(&meet, tol))
}

/// Whether `k1` factors through `k2`, i.e. `k2 k2† k1 = k1`.
pub fn lattice_leq<S: KernelRing>(
    k1: &KernelArrow<S>,
    k2: &KernelArrow<S>,
    tol: &Tolerance,
) -> Result<bool> {
    same_ambient("lattice_leq", k1, k2)?;
    let projected = k2.arrow.dot(&k2.arrow.dagger()).dot(&k1.arrow);
    Ok(projected.approx_eq(&k1.arrow, &tol.scaled(10.0)))
}

/// Checks the factorization `g = k ∘ (k† ∘ g)` for every probe with `f ∘ g = 0`.
pub fn verify_kernel_universal<S: KernelRing>(
    f: &Matrix<S>,
    k: &KernelArrow<S>,
    probes: &[Matrix<S>],
    tol: &Tolerance,
) -> bool {
    let loose = tol.scaled(10.0);
    if f.cols() != k.ambient_dim() || !f.dot(&k.arrow).is_zero(&loose) {
        return false;
    }
    probes
        .iter()
        .filter(|g| g.rows() == f.cols() && f.dot(g).is_zero(tol))
        .all(|g| {
            let h = k.arrow.dagger().dot(g);
            k.arrow.dot(&h).approx_eq(g, &loose)
        })
}

/// `‖k k† g − g‖` for floats.
pub fn factorization_residual<F: FloatScalar>(k: &KernelArrow<F>, g: &Matrix<F>) -> f64 {
    k.arrow.dot(&k.arrow.dagger().dot(g)).distance(g)
}

/// Whether the arrow `m` represents a kernel: it is an isometry and the
/// comparison `im(m)† m` onto its canonical image is unitary.
pub fn is_kernel<S: KernelRing>(m: &Matrix<S>, tol: &Tolerance) -> bool {
    if !m.is_isometry(tol) {
        return false;
    }
    let canon = image(m, tol);
    let e = canon.arrow.dagger().dot(m);
    e.is_square() && e.is_unitary(&tol.scaled(10.0)).unwrap_or(false)
}

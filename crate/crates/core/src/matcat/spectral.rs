use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalars::{FloatScalar, NonNegRational, RingId, Semiring, Tolerance};

/// Ascending eigenvalues of a Hermitian matrix.
///
/// # Panics
/// If the matrix is not square.
pub fn hermitian_eigenvalues<F: FloatScalar>(m: &Matrix<F>) -> Vec<f64> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let dm = DMatrix::<Complex64>::from_fn(n, n, |i, j| m.get(i, j).to_c64());
    // symmetrize so rounding noise cannot leak into the spectrum
    let herm = (&dm + dm.adjoint()).scale(0.5);
    let mut values: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Decides whether a square matrix has the form `g† g`.
pub trait MatrixPositivity: Semiring {
    fn is_positive_morphism(m: &Matrix<Self>, tol: &Tolerance) -> Result<bool>;
}

fn require_square<S: Semiring>(m: &Matrix<S>) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::dims(
            "is_positive_morphism",
            format!("{}x{} is not square", m.rows(), m.cols()),
        ))
    }
}

fn float_positive<F: FloatScalar>(m: &Matrix<F>, tol: &Tolerance) -> Result<bool> {
    require_square(m)?;
    if !m.close_to(&m.dagger(), tol) {
        return Ok(false);
    }
    let floor = tol.rank_threshold(m.frobenius_norm());
    Ok(hermitian_eigenvalues(m).first().is_none_or(|&l| l >= -floor))
}

impl MatrixPositivity for Complex64 {
    fn is_positive_morphism(m: &Matrix<Self>, tol: &Tolerance) -> Result<bool> {
        float_positive(m, tol)
    }
}

impl MatrixPositivity for f64 {
    fn is_positive_morphism(m: &Matrix<Self>, tol: &Tolerance) -> Result<bool> {
        float_positive(m, tol)
    }
}

/// Largest dimension for the exhaustive Boolean factor search.
const BOOLEAN_SEARCH_LIMIT: usize = 10;

impl MatrixPositivity for bool {
    /// `g† g` is the union of the squares `S × S` of the row supports of `g`,
    /// so `p` is positive iff it is the union of all squares it contains.
    fn is_positive_morphism(m: &Matrix<Self>, _tol: &Tolerance) -> Result<bool> {
        require_square(m)?;
        let n = m.rows();
        if n > BOOLEAN_SEARCH_LIMIT {
            return Err(Error::TooLarge {
                detail: format!("Boolean factor search at dimension {n}"),
            });
        }
        let mut covered = Matrix::<bool>::zeros(n, n);
        for subset in 1u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|i| subset >> i & 1 == 1).collect();
            let inside = members
                .iter()
                .all(|&i| members.iter().all(|&j| *m.get(i, j)));
            if inside {
                for &i in &members {
                    for &j in &members {
                        covered.set(i, j, true);
                    }
                }
            }
        }
        Ok(covered == *m)
    }
}

impl MatrixPositivity for NonNegRational {
    fn is_positive_morphism(m: &Matrix<Self>, _tol: &Tolerance) -> Result<bool> {
        require_square(m)?;
        Err(Error::UnsupportedRing {
            op: "is_positive_morphism",
            ring: RingId::NonNegRational,
        })
    }
}

impl MatrixPositivity for BigRational {
    fn is_positive_morphism(m: &Matrix<Self>, _tol: &Tolerance) -> Result<bool> {
        require_square(m)?;
        Err(Error::UnsupportedRing {
            op: "is_positive_morphism",
            ring: RingId::Rational,
        })
    }
}

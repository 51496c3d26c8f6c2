//! Seeded sampling. Every sampler takes its RNG explicitly; independent
//! workers derive their generators with [`stream`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matcat::{gram_schmidt, Matrix};
use crate::scalars::{FloatScalar, Tolerance};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The `index`-th independent stream under `seed`.
pub fn stream(seed: u64, index: u64) -> SeededRng {
    let mut rng = seeded(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_matrix<F: FloatScalar>(rng: &mut SeededRng, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| F::sample_gaussian(rng))
}

/// A unit vector drawn from the rotation-invariant distribution.
pub fn unit_vector<F: FloatScalar>(rng: &mut SeededRng, n: usize) -> Matrix<F> {
    loop {
        let v = gaussian_matrix::<F>(rng, n, 1);
        let norm = v.frobenius_norm();
        if norm > 1e-6 {
            return v.scale_real(1.0 / norm);
        }
    }
}

/// Orthonormalized Gaussian columns; `cols ≤ rows`.
///
/// # Panics
/// If `cols > rows`.
pub fn isometry<F: FloatScalar>(rng: &mut SeededRng, rows: usize, cols: usize) -> Matrix<F> {
    assert!(cols <= rows, "an isometry {cols} -> {rows} does not exist");
    let tol = Tolerance::DEFAULT;
    loop {
        let g = gaussian_matrix::<F>(rng, rows, cols);
        let q = gram_schmidt(&g.columns(), None, &tol).expect("standard inner product");
        if q.len() == cols {
            if cols == 0 {
                return Matrix::zeros(rows, 0);
            }
            return Matrix::hstack(&q).expect("equal lengths");
        }
    }
}

pub fn unitary<F: FloatScalar>(rng: &mut SeededRng, n: usize) -> Matrix<F> {
    isometry(rng, n, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Matrix<f64> = gaussian_matrix(&mut stream(7, 1), 2, 2);
        let b: Matrix<f64> = gaussian_matrix(&mut stream(7, 1), 2, 2);
        let c: Matrix<f64> = gaussian_matrix(&mut stream(7, 2), 2, 2);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_unitaries_are_unitary() {
        let mut rng = seeded(3);
        for n in 1..=4 {
            let u: Matrix<Complex64> = unitary(&mut rng, n);
            assert!(u.isometry_defect() < 1e-12);
            assert!(u.dagger().isometry_defect() < 1e-12);
            let v: Matrix<f64> = isometry(&mut rng, 4, n);
            assert!(v.isometry_defect() < 1e-12);
        }
    }
}

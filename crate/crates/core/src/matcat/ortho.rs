//! Gram–Schmidt and the constructions built on it: basis completion,
//! homogeneity solving, dagger normalisation and bound scalars.

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalars::{FloatScalar, Tolerance};

fn form_inner<F: FloatScalar>(form: Option<&Matrix<F>>, v: &Matrix<F>, w: &Matrix<F>) -> F {
    match form {
        Some(q) => v.inner(&q.dot(w)),
        None => v.inner(w),
    }
}

/// Orthonormalizes `vectors` (columns) in order, with respect to `v† Q w`
/// when a form `Q` is given and `v† w` otherwise.
///
/// A residual whose norm is at most `tol.rank_threshold(‖v‖)` is treated as
/// dependent and dropped. Each residual is orthogonalized twice.
pub fn gram_schmidt<F: FloatScalar>(
    vectors: &[Matrix<F>],
    inner: Option<&Matrix<F>>,
    tol: &Tolerance,
) -> Result<Vec<Matrix<F>>> {
    let mut basis: Vec<Matrix<F>> = Vec::new();
    let form_scale = inner.map_or(1.0, |q| q.frobenius_norm());
    for v in vectors {
        if v.cols() != 1 {
            return Err(Error::dims("gram_schmidt", "inputs must be columns"));
        }
        if let Some(b) = basis.first() {
            if b.rows() != v.rows() {
                return Err(Error::dims("gram_schmidt", "columns of different lengths"));
            }
        }
        let input_norm = form_inner(inner, v, v).re().max(0.0).sqrt();
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let coeff = form_inner(inner, b, &r);
                r = r.minus(&b.scale(&coeff));
            }
        }
        let sq = form_inner(inner, &r, &r).re();
        // Rounding in `r† Q r` grows with |Q| |r|², not with the form value.
        let floor = match inner {
            Some(_) => tol.abs * (form_scale * r.frobenius_norm().powi(2)).max(input_norm.powi(2)).max(1.0),
            None => 0.0,
        };
        if sq < -floor.max(tol.abs) {
            return Err(Error::DegenerateInner { value: sq });
        }
        let norm = sq.max(0.0).sqrt();
        if sq <= floor || norm <= tol.rank_threshold(input_norm) {
            continue;
        }
        basis.push(r.scale_real(1.0 / norm));
    }
    Ok(basis)
}

/// Orthonormal basis of the column span of `m`, as the columns of a matrix.
pub fn orthonormal_columns<F: FloatScalar>(m: &Matrix<F>, tol: &Tolerance) -> Matrix<F> {
    let cols = gram_schmidt(&m.columns(), None, tol).expect("standard inner product");
    stack_columns(m.rows(), &cols)
}

/// Extends an orthonormal `frame` to an orthonormal basis of dimension `dim`,
/// returned as a unitary whose leading columns span the frame.
pub fn complete_basis<F: FloatScalar>(
    frame: &[Matrix<F>],
    dim: usize,
    tol: &Tolerance,
) -> Matrix<F> {
    let mut candidates: Vec<Matrix<F>> = frame.to_vec();
    candidates.extend((0..dim).map(|i| Matrix::basis(dim, i)));
    let cols = gram_schmidt(&candidates, None, tol).expect("standard inner product");
    stack_columns(dim, &cols[..dim.min(cols.len())])
}

pub(crate) fn stack_columns<F: FloatScalar>(rows: usize, cols: &[Matrix<F>]) -> Matrix<F> {
    if cols.is_empty() {
        return Matrix::zeros(rows, 0);
    }
    Matrix::hstack(cols).expect("columns share a length")
}

/// A unitary `U` with `U f = g`, given `f† f = g† g`.
///
/// The domain is orthonormalized for `⟨v, w⟩' = (f v)†(f w)`; the images of
/// that frame under `f` and `g` are orthonormal, and `U` maps a completion
/// of the first onto a completion of the second.
pub fn homogeneity_solve<F: FloatScalar>(
    f: &Matrix<F>,
    g: &Matrix<F>,
    tol: &Tolerance,
) -> Result<Matrix<F>> {
    if f.shape() != g.shape() {
        return Err(Error::dims(
            "homogeneity_solve",
            format!("{:?} vs {:?}", f.shape(), g.shape()),
        ));
    }
    let (m, n) = f.shape();
    let ff = f.dagger().dot(f);
    let gg = g.dagger().dot(g);
    let gap = ff.distance(&gg);
    if !tol.accepts(gap, ff.frobenius_norm().max(gg.frobenius_norm())) {
        return Err(Error::PrereqFailed {
            reason: "f†f and g†g differ".into(),
            residual: gap,
        });
    }
    let domain: Vec<Matrix<F>> = (0..n).map(|i| Matrix::basis(n, i)).collect();
    let frame = gram_schmidt(&domain, Some(&ff), tol)?;
    let fa: Vec<Matrix<F>> = frame.iter().map(|v| f.dot(v)).collect();
    let ga: Vec<Matrix<F>> = frame.iter().map(|v| g.dot(v)).collect();
    let a = complete_basis(&fa, m, tol);
    let b = complete_basis(&ga, m, tol);
    let u = b.dot(&a.dagger());
    let residual = u.dot(f).distance(g);
    let scale = f.frobenius_norm().max(1.0);
    if residual > tol.scaled(10.0).abs * scale {
        return Err(Error::NoSolution { residual });
    }
    Ok(u)
}

/// `ψ = σ · r` with `σ` an isometric state and `r = sqrt(ψ†ψ)`.
pub fn dagger_normalise_state<F: FloatScalar>(
    psi: &Matrix<F>,
    tol: &Tolerance,
) -> Result<(Matrix<F>, F)> {
    if psi.cols() != 1 {
        return Err(Error::dims("dagger_normalise_state", "input is not a state"));
    }
    let r = psi.frobenius_norm();
    if r <= tol.abs {
        return Err(Error::ZeroState);
    }
    Ok((psi.scale_real(1.0 / r), F::from_real(r)))
}

/// A scalar `s` with `s† s = tr(f† f)`, which dominates `f† f`.
pub fn bound_scalar<F: FloatScalar>(f: &Matrix<F>) -> F {
    F::from_real(f.frobenius_norm())
}

/// `ψ† f† f ψ ≤ (s† s)(ψ† ψ) + tol`.
pub fn bound_holds<F: FloatScalar>(f: &Matrix<F>, s: F, psi: &Matrix<F>, tol: &Tolerance) -> bool {
    let lhs = f.dot(psi).frobenius_norm().powi(2);
    let rhs = s.norm_sqr() * psi.frobenius_norm().powi(2);
    lhs <= rhs + tol.abs + tol.rel * rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn col(v: &[f64]) -> Matrix<f64> {
        Matrix::column(v.to_vec())
    }

    #[test]
    fn hand_gram_schmidt() {
        let out = gram_schmidt(&[col(&[1.0, 0.0]), col(&[1.0, 1.0])], None, &TOL).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out[0].close_to(&col(&[1.0, 0.0]), &TOL));
        assert!(out[1].close_to(&col(&[0.0, 1.0]), &TOL));

        let out = gram_schmidt(&[col(&[1.0, 1.0]), col(&[2.0, 2.0])], None, &TOL).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(out.len(), 1);
        assert!(out[0].close_to(&col(&[h, h]), &TOL));
    }

    #[test]
    fn orthonormal_input_is_a_fixed_point() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let basis = vec![col(&[h, h]), col(&[h, -h])];
        let out = gram_schmidt(&basis, None, &TOL).unwrap();
        for (a, b) in out.iter().zip(&basis) {
            assert!(a.close_to(b, &TOL));
        }
    }

    #[test]
    fn indefinite_form_is_reported() {
        let q = Matrix::diagonal(&[-1.0, 1.0]);
        let r = gram_schmidt(&[col(&[1.0, 0.0])], Some(&q), &TOL);
        assert!(matches!(r, Err(Error::DegenerateInner { .. })));
    }

    #[test]
    fn homogeneity_examples() {
        let u = homogeneity_solve(&col(&[1.0, 0.0]), &col(&[0.0, 1.0]), &TOL).unwrap();
        assert!(u.dot(&col(&[1.0, 0.0])).close_to(&col(&[0.0, 1.0]), &TOL));
        assert!(u.is_unitary(&Tolerance::new(1e-9)).unwrap());

        let f = Matrix::from_rows(vec![
            vec![Complex64::new(1.0, 1.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)],
        ]);
        let u = homogeneity_solve(&f, &f, &TOL).unwrap();
        assert!(u.dot(&f).distance(&f) < 1e-8);

        let f = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        let g = Matrix::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0]]);
        let u = homogeneity_solve(&f, &g, &TOL).unwrap();
        assert!(u.dot(&f).distance(&g) <= 1e-8);
        assert!(u.isometry_defect() <= 1e-8);

        let r = homogeneity_solve(&col(&[1.0, 0.0]), &col(&[2.0, 0.0]), &TOL);
        assert!(matches!(r, Err(Error::PrereqFailed { .. })));
    }

    #[test]
    fn normalisation_examples() {
        let (s, r) = dagger_normalise_state(&col(&[3.0, 4.0]), &TOL).unwrap();
        assert!(s.close_to(&col(&[0.6, 0.8]), &TOL));
        assert_eq!(r, 5.0);

        let psi = Matrix::column(vec![Complex64::new(0.0, 2.0), Complex64::new(0.0, 0.0)]);
        let (s, r) = dagger_normalise_state(&psi, &TOL).unwrap();
        assert!(s.close_to(
            &Matrix::column(vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)]),
            &TOL
        ));
        assert_eq!(r, Complex64::new(2.0, 0.0));

        assert_eq!(dagger_normalise_state(&col(&[0.0, 0.0]), &TOL), Err(Error::ZeroState));
    }

    #[test]
    fn bound_scalar_examples() {
        let f = Matrix::diagonal(&[1.0, 2.0]);
        let s = bound_scalar(&f);
        assert!((s * s - 5.0).abs() < 1e-12);
        assert!(bound_holds(&f, s, &col(&[0.0, 1.0]), &TOL));

        assert_eq!(bound_scalar(&Matrix::<f64>::zeros(2, 2)), 0.0);

        let id = Matrix::<f64>::identity(3);
        let s = bound_scalar(&id);
        assert!((s * s - 3.0).abs() < 1e-12);
        for i in 0..3 {
            assert!(bound_holds(&id, s, &Matrix::basis(3, i), &TOL));
        }
    }
}

use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use cqm_core::matcat::{
    cap, copair, cup, gram_schmidt, homogeneity_solve, symmetry, BiproductTag, Matrix,
};
use cqm_core::random;
use cqm_core::scalars::{Semiring, Tolerance};
use cqm_core::theories::enumerate_relations;

type C = Complex64;
const TOL: Tolerance = Tolerance::DEFAULT;

fn dims() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=4, 1usize..=4, 1usize..=4)
}

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<BigRational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), rows * cols).prop_map(move |xs| {
        let data = xs
            .into_iter()
            .map(|(n, d)| BigRational::new(n.into(), d.into()))
            .collect();
        Matrix::new(rows, cols, data).unwrap()
    })
}

fn rational_pair() -> impl Strategy<Value = (Matrix<BigRational>, Matrix<BigRational>, Matrix<BigRational>)> {
    dims().prop_flat_map(|(a, b, c)| {
        (rational_matrix(b, a), rational_matrix(c, b), rational_matrix(2, 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_functoriality_over_rationals((f, g, h) in rational_pair()) {
        prop_assert_eq!(g.dot(&f).dagger(), f.dagger().dot(&g.dagger()));
        prop_assert_eq!(f.dagger().dagger(), f.clone());
        prop_assert_eq!(
            g.tensor(&h).dot(&f.tensor(&Matrix::identity(3))),
            g.dot(&f).tensor(&h)
        );
        prop_assert_eq!(f.tensor(&h).dagger(), f.dagger().tensor(&h.dagger()));
    }

    #[test]
    fn float_functoriality(seed in any::<u64>(), (a, b, c) in dims()) {
        let mut rng = random::seeded(seed);
        let f: Matrix<C> = random::gaussian_matrix(&mut rng, b, a);
        let g: Matrix<C> = random::gaussian_matrix(&mut rng, c, b);
        let f2: Matrix<C> = random::gaussian_matrix(&mut rng, a, c);
        let g2: Matrix<C> = random::gaussian_matrix(&mut rng, b, a);
        prop_assert!(g.dot(&f).dagger().close_to(&f.dagger().dot(&g.dagger()), &TOL));
        let lhs = f.tensor(&g2).dot(&f2.tensor(&Matrix::identity(a)));
        let rhs = f.dot(&f2).tensor(&g2);
        prop_assert!(lhs.close_to(&rhs, &TOL));
        prop_assert!(symmetry::<C>(b, c).dot(&symmetry(c, b)).close_to(&Matrix::identity(b * c), &TOL));
    }

    #[test]
    fn gram_schmidt_output_is_orthonormal(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=5) {
        let mut rng = random::seeded(seed);
        let vs: Vec<Matrix<C>> = (0..k).map(|_| random::gaussian_matrix(&mut rng, n, 1)).collect();
        let g = gram_schmidt(&vs, None, &TOL).unwrap();
        prop_assert_eq!(g.len(), k.min(n));
        let stacked = Matrix::hstack(&g).unwrap();
        prop_assert!(stacked.dagger().dot(&stacked).close_to(&Matrix::identity(g.len()), &TOL.scaled(10.0)));
    }

    #[test]
    fn homogeneity_recovers_constructed_unitaries(seed in any::<u64>(), m in 1usize..=4, n in 1usize..=4) {
        let mut rng = random::seeded(seed);
        let f: Matrix<C> = random::gaussian_matrix(&mut rng, m, n);
        let u0: Matrix<C> = random::unitary(&mut rng, m);
        let g = u0.dot(&f);
        let u = homogeneity_solve(&f, &g, &TOL).unwrap();
        prop_assert!(u.dot(&f).distance(&g) <= 10.0 * TOL.abs * f.frobenius_norm().max(1.0));
        prop_assert!(u.is_unitary(&TOL.scaled(10.0)).unwrap());
    }

    #[test]
    fn copairing_is_determined_by_its_restrictions(
        (f, g) in (1usize..=3).prop_flat_map(|n| (rational_matrix(n, 2), rational_matrix(n, 3)))
    ) {
        let tag = BiproductTag::new(vec![2, 3]);
        let h = copair(&[f.clone(), g.clone()]).unwrap();
        prop_assert_eq!(h.dot(&tag.injection(0)), f.clone());
        prop_assert_eq!(h.dot(&tag.injection(1)), g.clone());
        // The injections hit every basis vector, so the restrictions fix each column.
        for j in 0..5 {
            let (which, local) = if j < 2 { (0, j) } else { (1, j - 2) };
            let e = Matrix::basis(5, j);
            prop_assert_eq!(tag.injection::<BigRational>(which).dot(&Matrix::basis(tag.summands()[which], local)), e.clone());
            prop_assert_eq!(h.dot(&e), [&f, &g][which].col_at(local));
        }
    }
}

#[test]
fn snake_equations_up_to_five() {
    for n in 1..=5 {
        let id = Matrix::<C>::identity(n);
        let left = cap::<C>(n).tensor(&id).dot(&id.tensor(&cup(n)));
        let right = id.tensor(&cap::<C>(n)).dot(&cup::<C>(n).tensor(&id));
        assert!(left.close_to(&id, &TOL) && right.close_to(&id, &TOL));
        let idq = Matrix::<BigRational>::identity(n);
        assert_eq!(cap::<BigRational>(n).tensor(&idq).dot(&idq.tensor(&cup(n))), idq);
    }
}

#[test]
fn zero_cancellation_exhaustive_for_relations() {
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for (c, d) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for f in enumerate_relations(a, b).unwrap() {
                for g in enumerate_relations(c, d).unwrap() {
                    let zero = |m: &Matrix<bool>| m.entries().iter().all(|x| !x);
                    if zero(&f.tensor(&g)) {
                        assert!(zero(&f) || zero(&g));
                    }
                }
            }
        }
    }
}

#[test]
fn zero_cancellation_for_floats() {
    let mut rng = random::seeded(5);
    let mut small = 0;
    for s in 0..500 {
        let (a, b) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let f: Matrix<C> = random::gaussian_matrix(&mut rng, b, a);
        let mut g: Matrix<C> = random::gaussian_matrix(&mut rng, a, b);
        if s % 5 == 0 {
            g = g.scale_real(1e-12);
        }
        if f.tensor(&g).frobenius_norm() <= TOL.abs {
            small += 1;
            assert!(f.frobenius_norm().min(g.frobenius_norm()) <= TOL.abs.sqrt());
        }
    }
    assert!(small > 0);
}

#[test]
fn semiring_units_act_trivially() {
    let m = Matrix::<BigRational>::from_fn(2, 3, |i, j| BigRational::from_integer(((i * 3 + j) as i64).into()));
    assert_eq!(m.scale(&BigRational::one()), m);
    assert_eq!(m.plus(&Matrix::zeros(2, 3)), m);
}

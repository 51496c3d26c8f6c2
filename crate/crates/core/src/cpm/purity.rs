//! Purity, its two independent oracles, purification and essential uniqueness.

use rand::Rng;

use super::{env_block, CPMorphism};
use crate::error::{Error, Result};
use crate::matcat::{hermitian_eigenvalues, homogeneity_solve, Matrix};
use crate::random::{self, SeededRng};
use crate::scalars::{FloatScalar, Tolerance};

/// Loosening applied to linear fits inside the sampling oracles.
const FIT_SLACK: f64 = 1e3;

fn gram<F: FloatScalar>(ops: &[Matrix<F>]) -> Matrix<F> {
    Matrix::from_fn(ops.len(), ops.len(), |a, b| ops[a].inner(&ops[b]))
}

/// Pure iff zero or the vectorized Kraus operators span a line, tested as
/// `λ₂ ≤ tol·(λ₁ + 1)` on their Gram matrix.
pub fn is_pure<F: FloatScalar>(f: &CPMorphism<F>, tol: &Tolerance) -> bool {
    if f.kraus().len() <= 1 {
        return true;
    }
    let ev = hermitian_eigenvalues(&gram(f.kraus()));
    let l1 = ev[ev.len() - 1];
    let l2 = ev[ev.len() - 2];
    l2 <= tol.abs * (l1 + 1.0)
}

/// A single operator `V` with `f = dbl(V)`, when `f` is pure.
pub fn pure_kraus<F: FloatScalar>(f: &CPMorphism<F>, tol: &Tolerance) -> Option<Matrix<F>> {
    if !is_pure(f, tol) {
        return None;
    }
    let largest = f
        .kraus()
        .iter()
        .max_by(|a, b| a.frobenius_norm().total_cmp(&b.frobenius_norm()));
    match largest {
        None => Some(Matrix::zeros(f.out_dim(), f.in_dim())),
        Some(m) if m.frobenius_norm() == 0.0 => Some(m.clone()),
        Some(m) => Some(m.scale_real(f.total_weight().sqrt() / m.frobenius_norm())),
    }
}

/// Coefficients `r` with `X_{cc'} ≈ r_{cc'}·D_f` and the fit residual, where
/// `X_{cc'} = Σ_l conj(G_l^c) ⊗ G_l^{c'}` are the environment blocks of `g`.
fn fit_product<F: FloatScalar>(
    f: &CPMorphism<F>,
    g: &CPMorphism<F>,
    env: usize,
) -> Option<(Matrix<F>, f64, f64)> {
    let b = f.out_dim();
    if g.in_dim() != f.in_dim() || g.out_dim() != b * env {
        return None;
    }
    let d = f.doubled();
    let dd = d.frobenius_norm().powi(2);
    let blocks: Vec<Vec<Matrix<F>>> = g
        .kraus()
        .iter()
        .map(|gl| (0..env).map(|c| env_block(gl, b, env, c)).collect())
        .collect();
    let mut r = Matrix::zeros(env, env);
    let mut residual = 0.0;
    let mut scale = 0.0;
    for c in 0..env {
        for c2 in 0..env {
            let x = blocks.iter().fold(
                Matrix::zeros(b * b, f.in_dim() * f.in_dim()),
                |acc, gl| acc.plus(&gl[c].conj().tensor(&gl[c2])),
            );
            let coeff = if dd > 0.0 {
                let num = d.entries().iter().zip(x.entries()).fold(F::zero(), |acc, (p, q)| {
                    acc.add(&p.conj().mul(q))
                });
                num.scale(1.0 / dd)
            } else {
                F::zero()
            };
            residual += x.distance(&d.scale(&coeff)).powi(2);
            scale += x.frobenius_norm().powi(2);
            r.set(c, c2, coeff);
        }
    }
    Some((r, residual.sqrt(), scale.sqrt()))
}

/// Whether `g : A → B ⊗ C` equals `f ⊗ ρ` for a causal state `ρ` of `C`.
pub fn is_product_dilation<F: FloatScalar>(
    f: &CPMorphism<F>,
    g: &CPMorphism<F>,
    env: usize,
    tol: &Tolerance,
) -> bool {
    let slack = tol.scaled(FIT_SLACK);
    let Some((r, residual, scale)) = fit_product(f, g, env) else {
        return false;
    };
    if !slack.accepts(residual, scale) {
        return false;
    }
    let trace = r.trace().re();
    let floor = hermitian_eigenvalues(&r).first().copied().unwrap_or(0.0);
    slack.accepts((trace - 1.0).abs(), 1.0) && floor >= -slack.abs
}

/// Random dilation of `f`: Kraus operators re-mixed by an isometry into an
/// environment of dimension `env`.
fn mixing_dilation<F: FloatScalar>(
    f: &CPMorphism<F>,
    env: usize,
    rng: &mut SeededRng,
) -> CPMorphism<F> {
    let k = f.kraus().len();
    let l = k.div_ceil(env) + rng.random_range(0..2);
    let w: Matrix<F> = random::isometry(rng, l * env, k);
    let (a, b) = (f.in_dim(), f.out_dim());
    let kraus = (0..l)
        .map(|li| {
            Matrix::from_fn(b * env, a, |row, col| {
                let (bi, c) = (row / env, row % env);
                (0..k).fold(F::zero(), |acc, i| {
                    acc.add(&w.get(li * env + c, i).mul(f.kraus()[i].get(bi, col)))
                })
            })
        })
        .collect();
    CPMorphism::new(a, b * env, kraus).expect("dilation shapes")
}

/// Searches for a dilation of `f` that is not of the form `f ⊗ ρ`.
///
/// Half of the trials re-mix the Kraus operators of `f` into a random
/// environment; the other half purify `f` and then apply a random channel
/// to the purifying system. Returns `false` as soon as one dilation fails
/// to factor.
pub fn dilation_purity_oracle<F: FloatScalar>(
    f: &CPMorphism<F>,
    trials: usize,
    rng: &mut SeededRng,
    tol: &Tolerance,
) -> bool {
    if f.is_zero(tol) || f.kraus().is_empty() {
        return true;
    }
    let (p, e) = purify(f);
    for t in 0..trials {
        let env = 2 + rng.random_range(0..2);
        let g = if t % 2 == 0 {
            mixing_dilation(f, env, rng)
        } else {
            let count = 1 + rng.random_range(0..3);
            let chi = CPMorphism::random_channel(rng, e, env, count);
            CPMorphism::identity(f.out_dim()).tensor(&chi).compose(&p).expect("dims")
        };
        if !is_product_dilation(f, &g, env, tol) {
            return false;
        }
    }
    true
}

/// Samples splittings `f = g + h` and checks `g = r·f` for each.
///
/// With Kraus operators rotated by a unitary `U` (`N_j = Σ_i U_ij M_i`) and
/// weights `λ_j ∈ [0, 1]`, `g = Σ_j λ_j·dbl(N_j)` and `h = f − g` are both CP.
/// The first trial splits off the first Kraus operator.
pub fn atomicity_check<F: FloatScalar>(
    f: &CPMorphism<F>,
    trials: usize,
    rng: &mut SeededRng,
    tol: &Tolerance,
) -> bool {
    if f.is_zero(tol) || f.kraus().is_empty() {
        return true;
    }
    let k = f.kraus().len();
    let slack = tol.scaled(FIT_SLACK);
    let d = f.doubled();
    let dd = d.frobenius_norm().powi(2);
    for t in 0..trials.max(1) {
        let (u, weights): (Matrix<F>, Vec<f64>) = if t == 0 {
            let w = (0..k).map(|j| if j == 0 { 1.0 } else { 0.0 }).collect();
            (Matrix::identity(k), w)
        } else {
            let w = (0..k).map(|_| rng.random::<f64>()).collect();
            (random::unitary(rng, k), w)
        };
        let kraus = (0..k)
            .map(|j| {
                (0..k)
                    .fold(Matrix::zeros(f.out_dim(), f.in_dim()), |acc, i| {
                        acc.plus(&f.kraus()[i].scale(u.get(i, j)))
                    })
                    .scale_real(weights[j].sqrt())
            })
            .collect();
        let g = CPMorphism::new(f.in_dim(), f.out_dim(), kraus).expect("dims");
        let dg = g.doubled();
        let num = d
            .entries()
            .iter()
            .zip(dg.entries())
            .fold(F::zero(), |acc, (p, q)| acc.add(&p.conj().mul(q)));
        let r = num.scale(1.0 / dd);
        if !slack.accepts(dg.distance(&d.scale(&r)), dg.frobenius_norm()) {
            return false;
        }
    }
    true
}

/// `V = Σ_i M_i ⊗ |i⟩ : A → B ⊗ E` with `E` of dimension the Kraus count
/// (at least 1); returns `dbl(V)` and `dim(E)`.
pub fn purify<F: FloatScalar>(f: &CPMorphism<F>) -> (CPMorphism<F>, usize) {
    let env = f.kraus().len().max(1);
    purify_padded(f, env).expect("environment fits the Kraus family")
}

/// [`purify`] into an environment of a given dimension, padding with zero
/// Kraus operators.
pub fn purify_padded<F: FloatScalar>(
    f: &CPMorphism<F>,
    env: usize,
) -> Result<(CPMorphism<F>, usize)> {
    let k = f.kraus().len();
    if env < k.max(1) {
        return Err(Error::dims(
            "purify",
            format!("environment of dimension {env} for {k} Kraus operators"),
        ));
    }
    let (a, b) = (f.in_dim(), f.out_dim());
    let v = Matrix::from_fn(b * env, a, |row, col| {
        let (bi, i) = (row / env, row % env);
        f.kraus().get(i).map_or(F::zero(), |m| *m.get(bi, col))
    });
    Ok((CPMorphism::dbl(&v), env))
}

/// `(id_B ⊗ discard_E) ∘ g` for `g : A → B ⊗ E`.
pub fn marginalize<F: FloatScalar>(g: &CPMorphism<F>, env: usize) -> Result<CPMorphism<F>> {
    if env == 0 || !g.out_dim().is_multiple_of(env) {
        return Err(Error::dims(
            "marginalize",
            format!("output {} is not a multiple of {env}", g.out_dim()),
        ));
    }
    let b = g.out_dim() / env;
    let kraus = g
        .kraus()
        .iter()
        .flat_map(|m| (0..env).map(move |e| env_block(m, b, env, e)))
        .collect();
    CPMorphism::new(g.in_dim(), b, kraus)
}

/// A unitary `u` on the environment with `(id ⊗ dbl(u)) ∘ p1 = p2`, for two
/// pure maps `A → B ⊗ E` with equal marginals.
///
/// Writing `V = Σ_e K_e ⊗ |e⟩`, the condition reads `X₁ uᵀ = X₂` on the
/// matrices of vectorized `K_e`; equal marginals give `X₁X₁† = X₂X₂†`, so
/// the homogeneity solver applies to `X₁†` and `X₂†`.
pub fn essential_uniqueness_unitary<F: FloatScalar>(
    p1: &CPMorphism<F>,
    p2: &CPMorphism<F>,
    env: usize,
    tol: &Tolerance,
) -> Result<Matrix<F>> {
    if (p1.in_dim(), p1.out_dim()) != (p2.in_dim(), p2.out_dim()) {
        return Err(Error::dims("essential_uniqueness_unitary", "different types"));
    }
    let m1 = marginalize(p1, env)?;
    let m2 = marginalize(p2, env)?;
    let gap = m1.distance(&m2);
    if !m1.close_to(&m2, tol) {
        return Err(Error::PrereqFailed {
            reason: "marginals differ".into(),
            residual: gap,
        });
    }
    let not_pure = |residual| Error::PrereqFailed {
        reason: "purification is not pure".into(),
        residual,
    };
    let v1 = pure_kraus(p1, tol).ok_or_else(|| not_pure(f64::NAN))?;
    let v2 = pure_kraus(p2, tol).ok_or_else(|| not_pure(f64::NAN))?;
    let (a, b) = (p1.in_dim(), p1.out_dim() / env);
    let stack = |v: &Matrix<F>| {
        Matrix::from_fn(b * a, env, |row, e| *env_block(v, b, env, e).get(row / a, row % a))
    };
    let (x1, x2) = (stack(&v1), stack(&v2));
    let w = homogeneity_solve(&x1.dagger(), &x2.dagger(), tol)?;
    let u = w.conj();
    let moved = CPMorphism::identity(b)
        .tensor(&CPMorphism::dbl(&u))
        .compose(p1)?;
    let residual = moved.distance(p2);
    if residual > tol.scaled(10.0).abs * p2.doubled().frobenius_norm().max(1.0) {
        return Err(Error::NoSolution { residual });
    }
    Ok(u)
}

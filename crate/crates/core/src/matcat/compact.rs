use super::Matrix;
use crate::scalars::Semiring;

/// The state `Σ_i |i⟩⊗|i⟩` of `n ⊗ n`.
pub fn cup<S: Semiring>(n: usize) -> Matrix<S> {
    Matrix::from_fn(n * n, 1, |r, _| {
        if r / n == r % n {
            S::one()
        } else {
            S::zero()
        }
    })
}

/// The effect `Σ_i ⟨i|⊗⟨i|`, the dagger of [`cup`].
pub fn cap<S: Semiring>(n: usize) -> Matrix<S> {
    cup::<S>(n).dagger()
}

/// The swap `a ⊗ b → b ⊗ a`.
pub fn symmetry<S: Semiring>(a: usize, b: usize) -> Matrix<S> {
    Matrix::from_fn(a * b, a * b, |r, c| {
        let (i, j) = (c / b, c % b);
        if r == j * a + i {
            S::one()
        } else {
            S::zero()
        }
    })
}

/// The dual `f* : m → n` of `f : n → m`, obtained by bending both wires:
/// `(cap_m ⊗ id_n) ∘ (id_m ⊗ f ⊗ id_n) ∘ (id_m ⊗ cup_n)`.
pub fn partial_transpose<S: Semiring>(f: &Matrix<S>) -> Matrix<S> {
    let (m, n) = f.shape();
    let id_m = Matrix::<S>::identity(m);
    let id_n = Matrix::<S>::identity(n);
    let open = id_m.tensor(&cup::<S>(n));
    let middle = id_m.tensor(f).tensor(&id_n);
    let close = cap::<S>(m).tensor(&id_n);
    close.dot(&middle).dot(&open)
}

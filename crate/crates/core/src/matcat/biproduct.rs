use super::Matrix;
use crate::error::{Error, Result};
use crate::scalars::Semiring;

/// Layout of a biproduct `⊕_i n_i` with block offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiproductTag {
    summands: Vec<usize>,
    offsets: Vec<usize>,
}

impl BiproductTag {
    pub fn new(summands: Vec<usize>) -> Self {
        let offsets = summands
            .iter()
            .scan(0, |acc, &n| {
                let start = *acc;
                *acc += n;
                Some(start)
            })
            .collect();
        BiproductTag { summands, offsets }
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn total(&self) -> usize {
        self.summands.iter().sum()
    }

    /// The coprojection `κ_i : n_i → ⊕ n_j`.
    pub fn injection<S: Semiring>(&self, i: usize) -> Matrix<S> {
        let (n, off) = (self.summands[i], self.offsets[i]);
        Matrix::from_fn(self.total(), n, |r, c| {
            if r == off + c {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    pub fn injections<S: Semiring>(&self) -> Vec<Matrix<S>> {
        (0..self.summands.len()).map(|i| self.injection(i)).collect()
    }

    /// `[f_1, …, f_k]` checked against this layout.
    pub fn copair<S: Semiring>(&self, fs: &[Matrix<S>]) -> Result<Matrix<S>> {
        self.check(fs.iter().map(Matrix::cols), "copair")?;
        copair(fs)
    }

    /// `⟨f_1, …, f_k⟩` checked against this layout.
    pub fn pair<S: Semiring>(&self, fs: &[Matrix<S>]) -> Result<Matrix<S>> {
        self.check(fs.iter().map(Matrix::rows), "pair")?;
        pair(fs)
    }

    fn check(&self, dims: impl Iterator<Item = usize>, op: &'static str) -> Result<()> {
        let dims: Vec<usize> = dims.collect();
        if dims != self.summands {
            return Err(Error::dims(
                op,
                format!("blocks {dims:?} vs summands {:?}", self.summands),
            ));
        }
        Ok(())
    }
}

/// The unique map out of the biproduct restricting to `fs[i]` along `κ_i`.
pub fn copair<S: Semiring>(fs: &[Matrix<S>]) -> Result<Matrix<S>> {
    Matrix::hstack(fs)
}

/// The unique map into the biproduct whose `i`-th projection is `fs[i]`.
pub fn pair<S: Semiring>(fs: &[Matrix<S>]) -> Result<Matrix<S>> {
    Matrix::vstack(fs)
}

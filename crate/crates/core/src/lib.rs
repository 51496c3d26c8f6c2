//! Matrix process theories over involutive semirings, their CPM doubling,
//! dagger kernels and phased structure, with sampled audits of the
//! operational principles that single out quantum theory.

pub mod audit;
pub mod cpm;
pub mod error;
pub mod kernels;
pub mod matcat;
pub mod phased;
pub mod random;
pub mod scalars;
pub mod theories;

pub use error::{Error, Result};

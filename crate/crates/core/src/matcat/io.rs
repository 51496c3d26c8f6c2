//! Matrix exchange format: `{ "ring", "rows", "cols", "entries" }`, row-major.

use num_complex::Complex64;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalars::{NonNegRational, RingId, ScalarValue, Semiring};

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    ring: RingId,
    rows: usize,
    cols: usize,
    entries: Vec<Value>,
}

fn parse_file(value: &Value) -> Result<MatrixFile> {
    Ok(MatrixFile::deserialize(value)?)
}

fn entries_of<S: Semiring>(file: &MatrixFile) -> Result<Matrix<S>> {
    if file.ring != S::RING {
        return Err(Error::MixedRings {
            expected: S::RING,
            found: file.ring,
        });
    }
    let data = file
        .entries
        .iter()
        .map(|v| S::from_value(&ScalarValue::from_json(file.ring, v)?))
        .collect::<Result<Vec<S>>>()?;
    Matrix::new(file.rows, file.cols, data)
}

impl<S: Semiring> Matrix<S> {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "ring": S::RING,
            "rows": self.rows(),
            "cols": self.cols(),
            "entries": self.entries().iter().map(|s| s.to_value().to_json()).collect::<Vec<_>>(),
        })
    }

    /// Loads a matrix; the document's ring must be `S`'s ring.
    pub fn from_json(value: &Value) -> Result<Self> {
        entries_of(&parse_file(value)?)
    }
}

impl<S: Semiring> Serialize for Matrix<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, S: Semiring> Deserialize<'de> for Matrix<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        Matrix::from_json(&value).map_err(D::Error::custom)
    }
}

/// A matrix over whichever ring its document names.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Complex(Matrix<Complex64>),
    Real(Matrix<f64>),
    NonNegRational(Matrix<NonNegRational>),
    Rational(Matrix<BigRational>),
    Boolean(Matrix<bool>),
}

impl AnyMatrix {
    pub fn from_json(value: &Value) -> Result<Self> {
        let file = parse_file(value)?;
        Ok(match file.ring {
            RingId::Complex64 => AnyMatrix::Complex(entries_of(&file)?),
            RingId::Real64 => AnyMatrix::Real(entries_of(&file)?),
            RingId::NonNegRational => AnyMatrix::NonNegRational(entries_of(&file)?),
            RingId::Rational => AnyMatrix::Rational(entries_of(&file)?),
            RingId::Boolean => AnyMatrix::Boolean(entries_of(&file)?),
        })
    }

    pub fn ring(&self) -> RingId {
        match self {
            AnyMatrix::Complex(_) => RingId::Complex64,
            AnyMatrix::Real(_) => RingId::Real64,
            AnyMatrix::NonNegRational(_) => RingId::NonNegRational,
            AnyMatrix::Rational(_) => RingId::Rational,
            AnyMatrix::Boolean(_) => RingId::Boolean,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyMatrix::Complex(m) => m.to_json(),
            AnyMatrix::Real(m) => m.to_json(),
            AnyMatrix::NonNegRational(m) => m.to_json(),
            AnyMatrix::Rational(m) => m.to_json(),
            AnyMatrix::Boolean(m) => m.to_json(),
        }
    }
}

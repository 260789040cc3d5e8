//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("state vector is zero (or numerically indistinguishable from zero)")]
    ZeroVector,

    #[error("amplitudes contain NaN or infinity")]
    NonFiniteAmplitudes,

    #[error("rotation axis is not a unit vector: norm = {norm}")]
    NonUnitAxis { norm: f64 },

    #[error("operator {name} is not unitary: deviation = {deviation}")]
    NotUnitary { name: &'static str, deviation: f64 },

    #[error("invalid tensor product structure label {got:?}; expected one of 123, 132, 213, 231, 312, 321")]
    InvalidLabel { got: String },
}

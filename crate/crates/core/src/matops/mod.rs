//! Matrices over presented algebras: products, tensor embeddings, the
//! R-matrix and RTT residuals, dual determinants and inverses, the
//! superdeterminant, and closed-form powers.

mod dual;
mod matrix;
mod power;
mod rmatrix;
mod span;

use thiserror::Error;

use crate::coeff::CoeffError;
use crate::freealg::AlgebraError;

pub use dual::{delta_left, delta_right, inverse11, left_inverse, right_inverse, sdet, SdetForm};
pub use matrix::{grading, mat_mul, pair_index, tensor_graded, tensor_ungraded, AlgMatrix, Grading, Slot};
pub use power::{closed_power, closed_power_in, iterated_power, power_relations_check, power_relations_check_in, ClosedPowerEntries};
pub use rmatrix::{residual_entries, rhat, rtt_residual, RMatrix};
pub use span::{span_equal, SpanBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrices live over different presentations `{0}` and `{1}`")]
    PresentationMismatch(String, String),
    #[error("`{0}` has no inverse for `{1}`; a localized presentation is required")]
    NotLocalized(String, String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("{0}")]
    Preset(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

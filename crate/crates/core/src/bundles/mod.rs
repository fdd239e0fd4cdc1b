//! Projectors over functions on S², their exact Chern numbers, sections,
//! covariant derivatives and partial isometries.

mod catalog;
mod chern;
mod gauge;
mod matrix;
mod projector;
mod report;
mod sections;

use thiserror::Error;

use crate::exact_ring::RingError;
use crate::forms::FormError;
use crate::kets::KetError;

pub use catalog::{build_projector, BuiltinId, MAX_CHARGE};
pub use chern::{chern_form_exact, chern_integrand, chern_number_exact};
pub use gauge::{classify, exact_gauge, isometry_verify, ConstMatrix, GaugeClass, GaugeResult, IsometryReport};
pub use matrix::{FactoredMatrix, PolyMatrix};
pub use projector::{
    normal_projector, projector_from_ket, real_form_matrix, sum_of_dyads, tangent_projector, AxiomReport,
    ProjectorJson, WeightedProjector,
};
pub use report::{AxiomJson, Backend, C1Value, ChernReport};
pub use sections::{covariant_derivative, section_pairing, RadicalSum, Section};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("ragged matrix rows")]
    Ragged,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(String, String),
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("chern number has an imaginary part: {0}")]
    ChernNotReal(String),
    #[error("chern number is not an integer: {0}")]
    ChernNotInteger(String),
    #[error("unsupported gauge: {0}")]
    UnsupportedGauge(String),
    #[error("type mismatch: ket has type {ket}, function has type {function}")]
    TypeMismatch { ket: i64, function: i64 },
    #[error("function is not equivariant")]
    NotEquivariant,
    #[error("unknown projector id {0:?}")]
    UnknownId(String),
    #[error("charge out of range: {0}")]
    ChargeOutOfRange(i64),
    #[error(transparent)]
    Ket(#[from] KetError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Form(#[from] FormError),
}

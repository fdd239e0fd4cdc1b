//! Floating-point backend: quadrature Chern numbers on a product grid,
//! gauge-transformed projector fields, Monte-Carlo integration and pointwise
//! checks of identities that hold on S³.

mod chern;
mod field;
mod grid;
mod sampling;

use thiserror::Error;

use crate::bundles::BundleError;
use crate::kets::KetError;

pub use chern::{chern_number_quad, Derivative, QuadChern, DEFAULT_FD_STEP};
pub use field::{
    condition_number, gauge_field, parse_gauge_matrix, random_unitary, random_well_conditioned, FieldSource,
    GaugeMatrixJson, NumericProjectorField,
};
pub use grid::{gauss_legendre, SphereGrid, DEFAULT_GRID};
pub use sampling::{
    connection_invariance_check, monte_carlo_integral, random_s3_point, tangent_frame_check, MonteCarlo,
    TangentReport, MIN_MC_SAMPLES, TANGENT_TOLERANCE,
};

/// Pointwise projector tolerances, `‖P² − P‖∞` and `‖P − P†‖∞`.
pub const IDEMPOTENCY_TOL: f64 = 1e-10;
pub const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("grid {0}x{1} is too small, need at least 8x8")]
    GridTooSmall(usize, usize),
    #[error("projector axiom violated at (theta, phi) = ({theta:.6}, {phi:.6}): idempotency {idempotency:.3e}, hermiticity {hermiticity:.3e}")]
    AxiomViolation { theta: f64, phi: f64, idempotency: f64, hermiticity: f64 },
    #[error("non-finite value in quadrature")]
    NonFinite,
    #[error("gauge matrix is singular (condition number {0:.3e})")]
    SingularGauge(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("need at least {MIN_MC_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
    #[error("analytic derivatives are only available for polynomial fields")]
    NoAnalyticDerivative,
    #[error("malformed gauge matrix: {0}")]
    Parse(String),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Ket(#[from] KetError),
}

/// Generator for the seeded helpers that take an `Rng`.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Sum in a fixed binary tree so the result depends only on the order of
/// `xs`, not on how the values were produced.
pub(crate) fn pairwise_sum<T: Copy + std::ops::Add<Output = T> + Default>(xs: &[T]) -> T {
    match xs.len() {
        0 => T::default(),
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

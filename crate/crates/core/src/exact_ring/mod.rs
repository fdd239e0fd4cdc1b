//! Exact arithmetic: Gaussian rationals and polynomial functions on S² and S³
//! in canonical quotient-ring form.

mod convert;
mod gaussian;
mod integral;
pub mod json;
mod poly;
mod rings;

pub use convert::{x_to_z, z_to_x, z_to_x_with_pairing, PairingOrder};
pub use gaussian::{format_fraction, parse_fraction, rational_sqrt, rational_to_f64, GaussianRational};
pub use integral::{integrate_function, monomial_integral, VolumeUnits};
pub use poly::{CompiledPoly, Monomial, Poly, QuotientRing};
pub use rings::{
    reduce_x, reduce_z, x, z, Sphere2, Sphere3, XPoly, ZPoly, X1, X2, X3, Z0, Z0_BAR, Z1, Z1_BAR,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("monomial {0} is not invariant under the U(1) action")]
    NotInvariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

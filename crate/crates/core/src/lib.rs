//! Exact and numerical verification engine for monopole line bundles over
//! the two-sphere.
//!
//! The exact pipeline works in the quotient rings of polynomial functions on
//! S² and S³ with Gaussian-rational coefficients ([`exact_ring`]), builds
//! differential forms over them ([`forms`]), the equivariant kets and real
//! vector fields of the construction ([`kets`]), and the projectors with
//! their Chern numbers and partial isometries ([`bundles`]). The
//! floating-point backend ([`quadbench`]) recomputes the same quantities by
//! quadrature and random sampling.

pub mod exact_ring;
pub mod forms;
pub mod kets;
pub mod bundles;
pub mod quadbench;

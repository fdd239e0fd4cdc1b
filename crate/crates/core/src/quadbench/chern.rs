//! `c1 = −(1/2πi) ∫ tr(P [∂θP, ∂φP]) dθ dφ` by product quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::field::{max_abs, NumericProjectorField};
use super::grid::SphereGrid;
use super::{pairwise_sum, QuadError, HERMITICITY_TOL, IDEMPOTENCY_TOL};

pub const DEFAULT_FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Derivative {
    Analytic,
    FiniteDifference { step: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadChern {
    pub c1: f64,
    /// Imaginary part left over after the `−1/(2πi)` factor.
    pub residual_im: f64,
    pub max_idempotency: f64,
    pub max_hermiticity: f64,
}

struct Sample {
    value: Complex64,
    idempotency: f64,
    hermiticity: f64,
}

pub fn chern_number_quad(
    field: &NumericProjectorField,
    grid: &SphereGrid,
    derivative: Derivative,
) -> Result<QuadChern, QuadError> {
    if derivative == Derivative::Analytic && !field.has_analytic_derivative() {
        return Err(QuadError::NoAnalyticDerivative);
    }
    let samples = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let pt = grid.point(k);
            let p = field.eval(pt.theta, pt.phi);
            let idempotency = max_abs(&(&p * &p - &p));
            let hermiticity = max_abs(&(&p - p.adjoint()));
            if !(idempotency < IDEMPOTENCY_TOL && hermiticity < HERMITICITY_TOL) {
                return Err(QuadError::AxiomViolation {
                    theta: pt.theta,
                    phi: pt.phi,
                    idempotency,
                    hermiticity,
                });
            }
            let (dt, dp) = match derivative {
                Derivative::Analytic => field.analytic_derivatives(pt.theta, pt.phi)?,
                Derivative::FiniteDifference { step } => field.fd_derivatives(pt.theta, pt.phi, step),
            };
            let comm = &dt * &dp - &dp * &dt;
            let value = (p * comm).trace() * (pt.weight / pt.theta.sin());
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(QuadError::NonFinite);
            }
            Ok(Sample { value, idempotency, hermiticity })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let values: Vec<Complex64> = samples.iter().map(|s| s.value).collect();
    let c = pairwise_sum(&values) / Complex64::new(0.0, -2.0 * PI);
    Ok(QuadChern {
        c1: c.re,
        residual_im: c.im,
        max_idempotency: samples.iter().map(|s| s.idempotency).fold(0.0, f64::max),
        max_hermiticity: samples.iter().map(|s| s.hermiticity).fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{build_projector, tangent_projector, BuiltinId};
    use crate::kets::MonopoleSign;

    fn field(id: BuiltinId) -> NumericProjectorField {
        NumericProjectorField::from_projector(&build_projector(id).unwrap())
    }

    #[test]
    fn charge_one() {
        let r = chern_number_quad(&field(BuiltinId::Monopole(MonopoleSign::Minus, 1)), &SphereGrid::default(), Derivative::Analytic)
            .unwrap();
        assert!((r.c1 - 1.0).abs() < 1e-9, "{r:?}");
        assert!(r.residual_im.abs() < 1e-9);
    }

    #[test]
    fn charge_minus_three_and_tangent() {
        let g = SphereGrid::default();
        let r = chern_number_quad(&field(BuiltinId::Monopole(MonopoleSign::Plus, 3)), &g, Derivative::Analytic).unwrap();
        assert!((r.c1 + 3.0).abs() < 1e-7);
        let t = NumericProjectorField::from_projector(&tangent_projector());
        assert!(chern_number_quad(&t, &g, Derivative::Analytic).unwrap().c1.abs() < 1e-9);
    }

    #[test]
    fn finite_differences() {
        let g = SphereGrid::new(16, 32).unwrap();
        let r = chern_number_quad(
            &field(BuiltinId::Tilde),
            &g,
            Derivative::FiniteDifference { step: DEFAULT_FD_STEP },
        )
        .unwrap();
        assert!((r.c1 - 2.0).abs() < 1e-5);
    }
}

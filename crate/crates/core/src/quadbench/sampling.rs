//! Seeded random sampling on S² and S³.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::field::CMatrix;
use super::{pairwise_sum, QuadError};
use crate::exact_ring::{rational_to_f64, XPoly};
use crate::forms::ZForm;
use crate::kets::{connection_form, EquivariantKet};

pub const MIN_MC_SAMPLES: usize = 10_000;
pub const TANGENT_TOLERANCE: f64 = 1e-10;
const CHUNK: usize = 4096;

/// Independent stream for item `k` of a seeded computation.
fn stream(seed: u64, k: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k as u64);
    r
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarlo {
    /// Estimate of `∫_{S²} f`.
    pub value: Complex64,
    pub std_error: f64,
    pub samples: usize,
}

/// `(4π/N) Σ f(x_i)` over uniform points of S².
pub fn monte_carlo_integral(f: &XPoly, samples: usize, seed: u64) -> Result<MonteCarlo, QuadError> {
    if samples < MIN_MC_SAMPLES {
        return Err(QuadError::TooFewSamples(samples));
    }
    let cf = f.compile();
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<(Complex64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c);
            let n = CHUNK.min(samples - c * CHUNK);
            let vals: Vec<Complex64> = (0..n)
                .map(|_| {
                    let u: f64 = rng.gen_range(-1.0..1.0);
                    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
                    let s = (1.0 - u * u).sqrt();
                    let x = [s * phi.cos(), s * phi.sin(), u].map(|t| Complex64::new(t, 0.0));
                    cf.eval(&x)
                })
                .collect();
            let sq: Vec<f64> = vals.iter().map(|v| v.norm_sqr()).collect();
            (pairwise_sum(&vals), pairwise_sum(&sq))
        })
        .collect();
    let n = samples as f64;
    let sum = pairwise_sum(&partial.iter().map(|p| p.0).collect::<Vec<_>>());
    let sum_sq = pairwise_sum(&partial.iter().map(|p| p.1).collect::<Vec<_>>());
    let mean = sum / n;
    let var = ((sum_sq / n - mean.norm_sqr()) * n / (n - 1.0)).max(0.0);
    Ok(MonteCarlo { value: mean * (4.0 * PI), std_error: 4.0 * PI * (var / n).sqrt(), samples })
}

/// Uniform point of S³ ⊂ ℂ².
pub fn random_s3_point<R: Rng>(rng: &mut R) -> [Complex64; 2] {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let r2: f64 = v.iter().map(|a| a * a).sum();
        if r2 > 1e-4 && r2 <= 1.0 {
            let r = r2.sqrt();
            return [Complex64::new(v[0] / r, v[1] / r), Complex64::new(v[2] / r, v[3] / r)];
        }
    }
}

fn real_dot(a: &[Complex64; 2], b: &[Complex64; 2]) -> f64 {
    (a[0].conj() * b[0] + a[1].conj() * b[1]).re
}

/// Random vector tangent to S³ at `z`, i.e. with `Re⟨z, X⟩ = 0`.
fn random_tangent<R: Rng>(z: &[Complex64; 2], rng: &mut R) -> [Complex64; 2] {
    let x: [Complex64; 2] =
        std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let t = real_dot(z, &x);
    [x[0] - z[0] * t, x[1] - z[1] * t]
}

/// A tangent pair whose Gram determinant is not tiny.
fn tangent_pair<R: Rng>(z: &[Complex64; 2], rng: &mut R) -> [[Complex64; 2]; 2] {
    loop {
        let a = random_tangent(z, rng);
        let b = random_tangent(z, rng);
        let gram = real_dot(&a, &a) * real_dot(&b, &b) - real_dot(&a, &b).powi(2);
        if gram > 1e-6 {
            return [a, b];
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentReport {
    pub points: usize,
    pub max_difference: f64,
    pub pass: bool,
}

/// Compares `ω` and `expected` on random tangent vectors at random points
/// of S³, degree by degree.
pub fn tangent_frame_check(omega: &ZForm, expected: &ZForm, points: usize, seed: u64) -> TangentReport {
    let diff = omega - expected;
    let errs: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(seed, k);
            let z = random_s3_point(&mut rng);
            let [a, b] = tangent_pair(&z, &mut rng);
            [
                diff.part(0).eval_complex(z[0], z[1], &[]),
                diff.part(1).eval_complex(z[0], z[1], &[a]),
                diff.part(2).eval_complex(z[0], z[1], &[a, b]),
            ]
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
        })
        .collect();
    let max_difference = errs.iter().copied().fold(0.0, f64::max);
    TangentReport { points, max_difference, pass: max_difference < TANGENT_TOLERANCE }
}

/// Largest deviation between `⟨gψ|d(gψ)⟩` and the exact `⟨ψ|dψ⟩` on
/// random tangent vectors, for a unitary `g`.
pub fn connection_invariance_check(
    k: &EquivariantKet,
    g: &CMatrix,
    points: usize,
    seed: u64,
) -> Result<f64, QuadError> {
    if g.nrows() != k.len() || g.ncols() != k.len() {
        return Err(QuadError::DimensionMismatch(k.len(), g.nrows()));
    }
    let a = connection_form(k)?;
    // column vector c_j = √w_j conj(ψ_j), so that p = c c† and A = c† dc
    let parts = k
        .components()
        .iter()
        .map(|c| {
            let conj = c.poly.conj();
            let d = ZForm::function(conj.clone()).exterior_derivative()?;
            Ok((rational_to_f64(&c.weight).sqrt(), conj, d))
        })
        .collect::<Result<Vec<_>, crate::forms::FormError>>()
        .map_err(crate::kets::KetError::from)?;
    let errs: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i);
            let z = random_s3_point(&mut rng);
            let x = random_tangent(&z, &mut rng);
            let c = CMatrix::from_fn(k.len(), 1, |j, _| parts[j].0 * parts[j].1.eval_point(z[0], z[1]));
            let dc = CMatrix::from_fn(k.len(), 1, |j, _| parts[j].0 * parts[j].2.eval_complex(z[0], z[1], &[x]));
            let (gc, gdc) = (g * c, g * dc);
            let numeric = (gc.adjoint() * gdc)[(0, 0)];
            (numeric - a.eval_complex(z[0], z[1], &[x])).norm()
        })
        .collect();
    Ok(errs.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_ring::{x, X1, X3, Z0, Z0_BAR};
    use crate::kets::{curvature_scalar, monopole_ket, MonopoleSign};

    #[test]
    fn constant_and_odd_integrands() {
        let r = monte_carlo_integral(&XPoly::one(), 20_000, 1).unwrap();
        assert!((r.value.re - 4.0 * PI).abs() < 1e-12);
        let r = monte_carlo_integral(&x(X3), 20_000, 1).unwrap();
        assert!(r.value.re.abs() < 3.0 * r.std_error);
        assert!(monte_carlo_integral(&XPoly::one(), 10, 1).is_err());
    }

    #[test]
    fn second_moment() {
        let r = monte_carlo_integral(&(x(X1) * x(X1)), 1_000_000, 11).unwrap();
        let expect = 4.0 * PI / 3.0;
        assert!(((r.value.re - expect) / expect).abs() < 0.01);
        assert_eq!(r, monte_carlo_integral(&(x(X1) * x(X1)), 1_000_000, 11).unwrap());
    }

    #[test]
    fn tangent_checks() {
        let k = monopole_ket(MonopoleSign::Minus, 2);
        let two = crate::exact_ring::GaussianRational::from_int(2);
        let omega = curvature_scalar(&k).unwrap();
        let zf = |i| ZForm::differential(i);
        let expect = (&zf(Z0).wedge(&zf(Z0_BAR)).unwrap() + &zf(1).wedge(&zf(3)).unwrap()).scale_const(&two);
        assert!(tangent_frame_check(&omega, &expect, 200, 3).pass);
        let dr = ZForm::sphere_relation_differential();
        assert!(tangent_frame_check(&dr.wedge(&zf(Z0)).unwrap(), &ZForm::zero(), 200, 3).pass);
        assert!(tangent_frame_check(&dr, &ZForm::zero(), 50, 3).pass);
        assert!(!tangent_frame_check(&zf(Z0).wedge(&zf(Z0_BAR)).unwrap(), &ZForm::zero(), 200, 3).pass);
    }

    #[test]
    fn unitary_gauge_keeps_connection() {
        let k = monopole_ket(MonopoleSign::Minus, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = super::super::random_unitary(2, &mut rng);
        assert!(connection_invariance_check(&k, &u, 50, 9).unwrap() < 1e-10);
        let mut g = CMatrix::identity(2, 2);
        g[(0, 0)] = Complex64::new(2.0, 0.0);
        assert!(connection_invariance_check(&k, &g, 50, 9).unwrap() > 1e-3);
    }
}

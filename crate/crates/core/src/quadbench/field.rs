//! Projector-valued functions on S² evaluated in floating point.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::grid::{chart, chart_tangents};
use super::QuadError;
use crate::bundles::{projector_from_ket, WeightedProjector};
use crate::exact_ring::{rational_to_f64, CompiledPoly};
use crate::kets::EquivariantKet;

pub type CMatrix = DMatrix<Complex64>;

#[derive(Clone, Debug, PartialEq)]
pub enum FieldSource {
    Polynomial,
    /// `p^g = g p g† / tr(g p g†)`, with the condition number of `g`.
    Gauged { condition: f64 },
}

#[derive(Clone, Debug)]
struct PolyEntries {
    dim: usize,
    /// `√(w_i w_j)`, row major.
    scale: Vec<f64>,
    entries: Vec<CompiledPoly>,
    /// `∂_a M_ij` for `a = 1, 2, 3`.
    partials: [Vec<CompiledPoly>; 3],
}

impl PolyEntries {
    fn new(p: &WeightedProjector) -> Self {
        let n = p.dim();
        let w: Vec<f64> = p.weights.iter().map(rational_to_f64).collect();
        let mut scale = Vec::with_capacity(n * n);
        let mut entries = Vec::with_capacity(n * n);
        let mut partials: [Vec<CompiledPoly>; 3] = Default::default();
        for i in 0..n {
            for j in 0..n {
                scale.push((w[i] * w[j]).sqrt());
                let m = p.core.get(i, j);
                entries.push(m.compile());
                for (a, d) in partials.iter_mut().enumerate() {
                    d.push(m.partial_derivative(a).expect("coordinate index in range").compile());
                }
            }
        }
        Self { dim: n, scale, entries, partials }
    }

    fn eval_with(&self, polys: &[CompiledPoly], x: [f64; 3]) -> CMatrix {
        let v = x.map(|t| Complex64::new(t, 0.0));
        CMatrix::from_fn(self.dim, self.dim, |i, j| {
            let k = i * self.dim + j;
            polys[k].eval(&v) * self.scale[k]
        })
    }
}

/// A projector-valued function of `(θ, φ)`.
#[derive(Clone, Debug)]
pub struct NumericProjectorField {
    base: PolyEntries,
    gauge: Option<(CMatrix, CMatrix)>,
    source: FieldSource,
}

impl NumericProjectorField {
    pub fn from_projector(p: &WeightedProjector) -> Self {
        Self { base: PolyEntries::new(p), gauge: None, source: FieldSource::Polynomial }
    }

    pub fn dim(&self) -> usize {
        self.base.dim
    }

    pub fn source(&self) -> &FieldSource {
        &self.source
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.gauge.is_none()
    }

    /// Value at a point of S² given in ambient coordinates.
    pub fn eval_ambient(&self, x: [f64; 3]) -> CMatrix {
        let p = self.base.eval_with(&self.base.entries, x);
        match &self.gauge {
            None => p,
            Some((g, gd)) => {
                let q = g * p * gd;
                let t = q.trace();
                q / t
            }
        }
    }

    pub fn eval(&self, theta: f64, phi: f64) -> CMatrix {
        self.eval_ambient(chart(theta, phi))
    }

    /// `(∂θ P, ∂φ P)` from exact derivatives of the entries.
    pub fn analytic_derivatives(&self, theta: f64, phi: f64) -> Result<(CMatrix, CMatrix), QuadError> {
        if self.gauge.is_some() {
            return Err(QuadError::NoAnalyticDerivative);
        }
        let x = chart(theta, phi);
        let grads: Vec<CMatrix> = self.base.partials.iter().map(|d| self.base.eval_with(d, x)).collect();
        let [t, f] = chart_tangents(theta, phi);
        let along = |v: [f64; 3]| {
            let mut m = CMatrix::zeros(self.dim(), self.dim());
            for (g, c) in grads.iter().zip(v) {
                if c != 0.0 {
                    m += g * Complex64::new(c, 0.0);
                }
            }
            m
        };
        Ok((along(t), along(f)))
    }

    /// Central differences with step `h`.
    pub fn fd_derivatives(&self, theta: f64, phi: f64, h: f64) -> (CMatrix, CMatrix) {
        let s = Complex64::new(0.5 / h, 0.0);
        let dt = (self.eval(theta + h, phi) - self.eval(theta - h, phi)) * s;
        let dp = (self.eval(theta, phi + h) - self.eval(theta, phi - h)) * s;
        (dt, dp)
    }
}

/// Largest entry modulus.
pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Ratio of the extreme singular values; infinite for singular input.
pub fn condition_number(g: &CMatrix) -> f64 {
    let sv = g.clone().singular_values();
    let (lo, hi) = sv.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    if lo <= hi * 1e-14 || !lo.is_finite() {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// Pointwise `p^g` for the projector of `k`.
pub fn gauge_field(k: &EquivariantKet, g: &CMatrix) -> Result<NumericProjectorField, QuadError> {
    let p = projector_from_ket(k)?;
    if g.nrows() != p.dim() || g.ncols() != p.dim() {
        return Err(QuadError::DimensionMismatch(p.dim(), g.nrows()));
    }
    let condition = condition_number(g);
    if !condition.is_finite() || condition > 1e12 {
        return Err(QuadError::SingularGauge(condition));
    }
    Ok(NumericProjectorField {
        base: PolyEntries::new(&p),
        gauge: Some((g.clone(), g.adjoint())),
        source: FieldSource::Gauged { condition },
    })
}

fn random_complex<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Random complex matrix with condition number below `max_cond`.
pub fn random_well_conditioned<R: Rng>(n: usize, max_cond: f64, rng: &mut R) -> CMatrix {
    loop {
        let g = random_complex(n, rng) + CMatrix::identity(n, n);
        if condition_number(&g) < max_cond {
            return g;
        }
    }
}

/// Unitary factor of the QR decomposition of a random complex matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    loop {
        let a = random_complex(n, rng);
        if condition_number(&a) < 1e6 {
            return a.qr().q();
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GaugeMatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<ComplexJson>>,
}

impl GaugeMatrixJson {
    pub fn from_matrix(g: &CMatrix) -> Self {
        Self {
            n: g.nrows(),
            entries: g
                .row_iter()
                .map(|r| r.iter().map(|z| ComplexJson { re: z.re, im: z.im }).collect())
                .collect(),
        }
    }
}

pub fn parse_gauge_matrix(text: &str) -> Result<CMatrix, QuadError> {
    let j: GaugeMatrixJson = serde_json::from_str(text).map_err(|e| QuadError::Parse(e.to_string()))?;
    if j.entries.len() != j.n || j.entries.iter().any(|r| r.len() != j.n) {
        return Err(QuadError::Parse(format!("expected {0}x{0} entries", j.n)));
    }
    let m = CMatrix::from_fn(j.n, j.n, |i, k| Complex64::new(j.entries[i][k].re, j.entries[i][k].im));
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(QuadError::Parse("non-finite entry".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kets::{monopole_ket, MonopoleSign};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_gauge_matches_polynomial_field() {
        let k = monopole_ket(MonopoleSign::Minus, 2);
        let a = NumericProjectorField::from_projector(&projector_from_ket(&k).unwrap());
        let b = gauge_field(&k, &CMatrix::identity(3, 3)).unwrap();
        for (t, f) in [(0.3, 1.0), (2.0, 4.0), (1.2, 0.1)] {
            assert!(max_abs(&(a.eval(t, f) - b.eval(t, f))) < 1e-14);
        }
        assert_eq!(*b.source(), FieldSource::Gauged { condition: 1.0 });
    }

    #[test]
    fn analytic_and_fd_derivatives_agree() {
        let k = monopole_ket(MonopoleSign::Plus, 3);
        let f = NumericProjectorField::from_projector(&projector_from_ket(&k).unwrap());
        let (at, ap) = f.analytic_derivatives(0.7, 2.1).unwrap();
        let (ft, fp) = f.fd_derivatives(0.7, 2.1, 1e-5);
        assert!(max_abs(&(at - ft)) < 1e-8);
        assert!(max_abs(&(ap - fp)) < 1e-8);
    }

    #[test]
    fn gauged_field_is_a_projector() {
        let k = monopole_ket(MonopoleSign::Minus, 1);
        let mut g = CMatrix::identity(2, 2);
        g[(0, 0)] = Complex64::new(2.0, 0.0);
        let f = gauge_field(&k, &g).unwrap();
        let p = f.eval(1.1, 0.4);
        assert!(max_abs(&(&p * &p - &p)) < 1e-12);
        assert!(max_abs(&(&p - p.adjoint())) < 1e-12);
        assert!(f.analytic_derivatives(1.0, 1.0).is_err());
    }

    #[test]
    fn singular_and_malformed_gauges() {
        let k = monopole_ket(MonopoleSign::Minus, 1);
        assert!(matches!(gauge_field(&k, &CMatrix::zeros(2, 2)), Err(QuadError::SingularGauge(_))));
        assert!(matches!(gauge_field(&k, &CMatrix::identity(3, 3)), Err(QuadError::DimensionMismatch(2, 3))));
        assert!(parse_gauge_matrix(r#"{"n":2,"entries":[[{"re":1,"im":0}]]}"#).is_err());
        let g = parse_gauge_matrix(r#"{"n":1,"entries":[[{"re":1.5,"im":-2}]]}"#).unwrap();
        assert_eq!(g[(0, 0)], Complex64::new(1.5, -2.0));
    }

    #[test]
    fn random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_well_conditioned(4, 10.0, &mut rng);
        assert!(condition_number(&g) < 10.0);
        let u = random_unitary(3, &mut rng);
        assert!(max_abs(&(&u * u.adjoint() - CMatrix::identity(3, 3))) < 1e-12);
        let j = GaugeMatrixJson::from_matrix(&g);
        assert_eq!(parse_gauge_matrix(&serde_json::to_string(&j).unwrap()).unwrap(), g);
    }
}

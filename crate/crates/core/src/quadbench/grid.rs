//! Product quadrature on S²: Gauss–Legendre in `cos θ`, trapezoid in `φ`.

use std::f64::consts::PI;

use super::QuadError;

pub const DEFAULT_GRID: (usize, usize) = (64, 128);

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// nodes ascending.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

#[derive(Clone, Debug)]
pub struct SphereGrid {
    /// `(cos θ, weight)` pairs.
    pub polar: Vec<(f64, f64)>,
    pub azimuthal: usize,
}

/// One quadrature point with its weight in the area measure.
#[derive(Clone, Copy, Debug)]
pub struct GridPoint {
    pub theta: f64,
    pub phi: f64,
    pub weight: f64,
}

impl SphereGrid {
    pub fn new(polar: usize, azimuthal: usize) -> Result<Self, QuadError> {
        if polar < 8 || azimuthal < 8 {
            return Err(QuadError::GridTooSmall(polar, azimuthal));
        }
        Ok(Self { polar: gauss_legendre(polar), azimuthal })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.polar.len(), self.azimuthal)
    }

    pub fn len(&self) -> usize {
        self.polar.len() * self.azimuthal
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, k: usize) -> GridPoint {
        let (i, j) = (k / self.azimuthal, k % self.azimuthal);
        let (u, w) = self.polar[i];
        let dphi = 2.0 * PI / self.azimuthal as f64;
        GridPoint { theta: u.acos(), phi: j as f64 * dphi, weight: w * dphi }
    }

    pub fn total_weight(&self) -> f64 {
        super::pairwise_sum(&(0..self.len()).map(|k| self.point(k).weight).collect::<Vec<_>>())
    }
}

impl Default for SphereGrid {
    fn default() -> Self {
        Self::new(DEFAULT_GRID.0, DEFAULT_GRID.1).expect("default grid is valid")
    }
}

/// `(sin θ cos φ, sin θ sin φ, cos θ)`.
pub fn chart(theta: f64, phi: f64) -> [f64; 3] {
    let s = theta.sin();
    [s * phi.cos(), s * phi.sin(), theta.cos()]
}

/// `∂θ x` and `∂φ x`.
pub fn chart_tangents(theta: f64, phi: f64) -> [[f64; 3]; 2] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [[ct * cp, ct * sp, -st], [-st * sp, st * cp, 0.0]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_on_polynomials() {
        let r = gauss_legendre(8);
        for k in 0..16 {
            let got: f64 = r.iter().map(|(x, w)| w * x.powi(k)).sum();
            let expect = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - expect).abs() < 1e-14, "k={k} {got} {expect}");
        }
        assert!(r.windows(2).all(|p| p[0].0 < p[1].0));
    }

    #[test]
    fn weights_sum_to_sphere_area() {
        for (p, a) in [(8, 8), (64, 128), (33, 17)] {
            let g = SphereGrid::new(p, a).unwrap();
            assert!((g.total_weight() - 4.0 * PI).abs() < 1e-12);
        }
        assert_eq!(SphereGrid::new(4, 16).unwrap_err(), QuadError::GridTooSmall(4, 16));
    }
}

//! Exact unitary conjugation of projectors and partial-isometry checks.

use num_traits::{One, Zero};

use super::matrix::{FactoredMatrix, PolyMatrix};
use super::projector::WeightedProjector;
use super::BundleError;
use crate::exact_ring::GaussianRational;

pub type ConstMatrix = Vec<Vec<GaussianRational>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeClass {
    /// One unit-modulus entry (`±1`, `±i`) per row and column; `perm[i]` is
    /// the column of the nonzero entry in row `i`.
    SignedPermutation { perm: Vec<usize> },
    /// Any exactly unitary matrix; only admissible with uniform weights.
    Unitary,
}

pub fn classify(s: &ConstMatrix) -> Option<GaugeClass> {
    let n = s.len();
    if s.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut monomial = true;
    for row in s {
        let nz: Vec<usize> = (0..n).filter(|&j| !row[j].is_zero()).collect();
        if nz.len() != 1 || used[nz[0]] || !row[nz[0]].norm_sqr().is_one() {
            monomial = false;
            break;
        }
        used[nz[0]] = true;
        perm.push(nz[0]);
    }
    if monomial {
        return Some(GaugeClass::SignedPermutation { perm });
    }
    // s s† = 1
    let unitary = (0..n).all(|i| {
        (0..n).all(|j| {
            let d = (0..n).fold(GaussianRational::zero(), |acc, k| acc + &s[i][k] * &s[j][k].conj());
            if i == j {
                d.is_one()
            } else {
                d.is_zero()
            }
        })
    });
    unitary.then_some(GaugeClass::Unitary)
}

fn adjoint_const(s: &ConstMatrix) -> ConstMatrix {
    let n = s.len();
    (0..n).map(|i| (0..n).map(|j| s[j][i].conj()).collect()).collect()
}

#[derive(Clone, Debug)]
pub struct GaugeResult {
    /// `p^s = s p s†`.
    pub projector: WeightedProjector,
    /// `v = s p`, with `v v† = p^s` and `v† v = p`.
    pub isometry: FactoredMatrix,
}

/// Conjugates `p` by a constant unitary `s`, keeping the factored form.
pub fn exact_gauge(p: &WeightedProjector, s: &ConstMatrix) -> Result<GaugeResult, BundleError> {
    if s.len() != p.dim() {
        return Err(BundleError::DimensionMismatch(p.dim().to_string(), s.len().to_string()));
    }
    let class = classify(s).ok_or(BundleError::UnsupportedGauge("not unitary".into()))?;
    let weights = match class {
        GaugeClass::SignedPermutation { perm } => perm.iter().map(|&j| p.weights[j].clone()).collect(),
        GaugeClass::Unitary => {
            if p.weights.iter().any(|w| *w != p.weights[0]) {
                return Err(BundleError::UnsupportedGauge(
                    "general unitary gauge requires uniform weights".into(),
                ));
            }
            p.weights.clone()
        }
    };
    let sm = PolyMatrix::from_constants(s)?;
    let sd = PolyMatrix::from_constants(&adjoint_const(s))?;
    let sp = sm.mul(&p.core)?;
    let core = sp.mul(&sd)?;
    Ok(GaugeResult {
        projector: WeightedProjector::new(weights.clone(), core)?,
        isometry: FactoredMatrix::new(weights, sp, p.weights.clone())?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsometryReport {
    /// `u† u = src`.
    pub source_ok: bool,
    /// `u u† = dst`.
    pub target_ok: bool,
}

impl IsometryReport {
    pub fn pass(&self) -> bool {
        self.source_ok && self.target_ok
    }
}

/// Checks `u†u = src` and `uu† = dst` entrywise after reduction.
pub fn isometry_verify(
    u: &FactoredMatrix,
    src: &WeightedProjector,
    dst: &WeightedProjector,
) -> Result<IsometryReport, BundleError> {
    if u.ncols() != src.dim() || u.nrows() != dst.dim() {
        return Err(BundleError::DimensionMismatch(
            format!("{}x{}", u.nrows(), u.ncols()),
            format!("src {} / dst {}", src.dim(), dst.dim()),
        ));
    }
    let ud = u.adjoint();
    let source_ok = ud.mul(u)?.exact_eq(&src.as_factored());
    let target_ok = u.mul(&ud)?.exact_eq(&dst.as_factored());
    Ok(IsometryReport { source_ok, target_ok })
}

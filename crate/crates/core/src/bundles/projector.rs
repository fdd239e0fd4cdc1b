//! Projectors in factored form `p = D·M·D`, `D = diag(√w)`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{FactoredMatrix, PolyMatrix};
use super::BundleError;
use crate::exact_ring::json::PolyJson;
use crate::exact_ring::{format_fraction, parse_fraction, x, z_to_x, GaussianRational, XPoly, X1, X2, X3};
use crate::kets::{EquivariantKet, ScaledXVector};

/// `p = diag(√w) · core · diag(√w)` with polynomial core entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProjector {
    pub weights: Vec<BigRational>,
    pub core: PolyMatrix,
}

/// Outcome of the projector axiom checks. Failures are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub idempotent: bool,
    pub hermitian: bool,
    /// The trace, if it reduces to a constant.
    pub trace: Option<GaussianRational>,
}

impl AxiomReport {
    pub fn trace_is_integer(&self) -> bool {
        self.trace.as_ref().is_some_and(|t| t.is_real() && t.re.is_integer())
    }

    pub fn all_pass(&self) -> bool {
        self.idempotent && self.hermitian && self.trace_is_integer()
    }

    pub fn trace_text(&self) -> String {
        match &self.trace {
            Some(t) => t.to_string(),
            None => "non-constant".to_string(),
        }
    }
}

impl WeightedProjector {
    pub fn new(weights: Vec<BigRational>, core: PolyMatrix) -> Result<Self, BundleError> {
        if !core.is_square() || core.nrows() != weights.len() {
            return Err(BundleError::DimensionMismatch(
                format!("{} weights", weights.len()),
                format!("{}x{} core", core.nrows(), core.ncols()),
            ));
        }
        if weights.iter().any(|w| *w <= BigRational::zero()) {
            return Err(BundleError::NonPositiveWeight);
        }
        Ok(Self { weights, core })
    }

    pub fn unweighted(core: PolyMatrix) -> Result<Self, BundleError> {
        Self::new(vec![BigRational::one(); core.nrows()], core)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn as_factored(&self) -> FactoredMatrix {
        FactoredMatrix { left: self.weights.clone(), core: self.core.clone(), right: self.weights.clone() }
    }

    /// `M · diag(w) · M = M`, `M = M†`, and `Σ w_k M_kk` constant.
    pub fn verify_axioms(&self) -> AxiomReport {
        let idempotent = self.core.mul_weighted(&self.weights, &self.core).map(|m| m == self.core).unwrap_or(false);
        let hermitian = self.core.adjoint() == self.core;
        let trace = self.core.trace_weighted(&self.weights).as_constant();
        AxiomReport { idempotent, hermitian, trace }
    }

    /// `pᵗ = D·Mᵗ·D`.
    pub fn transpose(&self) -> Self {
        Self { weights: self.weights.clone(), core: self.core.transpose() }
    }

    /// Real form: each entry `a + ib` becomes `[[a, −b], [b, a]]`; each weight
    /// is repeated for the two real rows it spans.
    pub fn real_form(&self) -> Self {
        Self {
            weights: self.weights.iter().flat_map(|w| [w.clone(), w.clone()]).collect(),
            core: real_form_matrix(&self.core),
        }
    }

    pub fn to_json(&self) -> ProjectorJson {
        ProjectorJson {
            weights: self.weights.iter().map(format_fraction).collect(),
            core: self.core.rows().iter().map(|r| r.iter().map(XPoly::to_json).collect()).collect(),
        }
    }

    pub fn from_json(j: &ProjectorJson) -> Result<Self, BundleError> {
        let weights = j.weights.iter().map(|w| parse_fraction(w)).collect::<Result<Vec<_>, _>>()?;
        let rows = j
            .core
            .iter()
            .map(|r| r.iter().map(XPoly::from_json).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(weights, PolyMatrix::from_rows(rows)?)
    }

    /// Entry `(i, j)` as a function, i.e. `√(w_i w_j) · M_ij`, when the
    /// radical is rational.
    pub fn entry(&self, i: usize, j: usize) -> Option<XPoly> {
        let s = crate::exact_ring::rational_sqrt(&(&self.weights[i] * &self.weights[j]))?;
        Some(self.core.get(i, j).scale_rational(&s))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProjectorJson {
    pub weights: Vec<String>,
    pub core: Vec<Vec<PolyJson>>,
}

/// Real and imaginary parts of a polynomial with real generators.
fn split_re_im(p: &XPoly) -> (XPoly, XPoly) {
    let re = XPoly::from_terms(p.terms().map(|(m, c)| (*m, GaussianRational::from_real(c.re.clone()))));
    let im = XPoly::from_terms(p.terms().map(|(m, c)| (*m, GaussianRational::from_real(c.im.clone()))));
    (re, im)
}

pub fn real_form_matrix(m: &PolyMatrix) -> PolyMatrix {
    let (n, k) = (m.nrows(), m.ncols());
    let mut rows = vec![vec![XPoly::zero(); 2 * k]; 2 * n];
    for i in 0..n {
        for j in 0..k {
            let (a, b) = split_re_im(m.get(i, j));
            rows[2 * i][2 * j] = a.clone();
            rows[2 * i][2 * j + 1] = -b.clone();
            rows[2 * i + 1][2 * j] = b;
            rows[2 * i + 1][2 * j + 1] = a;
        }
    }
    PolyMatrix::from_rows(rows).expect("rectangular by construction")
}

/// `p = |ψ⟩⟨ψ|` with `p_jk = conj(ψ_j) ψ_k`, pushed down to S².
pub fn projector_from_ket(k: &EquivariantKet) -> Result<WeightedProjector, BundleError> {
    let c = k.components();
    let rows = c
        .iter()
        .map(|a| c.iter().map(|b| z_to_x(&(&a.poly.conj() * &b.poly))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    WeightedProjector::new(k.weights(), PolyMatrix::from_rows(rows)?)
}

/// `|ψ_nor⟩⟨ψ_nor|` with `ψ_nor = (x1, x2, x3)`.
pub fn normal_projector() -> WeightedProjector {
    let v = [x(X1), x(X2), x(X3)];
    let rows = v.iter().map(|a| v.iter().map(|b| a * b).collect()).collect();
    WeightedProjector::unweighted(PolyMatrix::from_rows(rows).expect("3x3")).expect("square")
}

/// `𝕀 − p_nor`.
pub fn tangent_projector() -> WeightedProjector {
    let core = &PolyMatrix::identity(3) - &normal_projector().core;
    WeightedProjector::unweighted(core).expect("square")
}

/// `Σ_l |V_l⟩⟨V_l|` with entries `Σ_l s_l conj(V_lj) V_lk`, unit weights.
pub fn sum_of_dyads(vectors: &[ScaledXVector]) -> Result<WeightedProjector, BundleError> {
    let n = vectors.first().map_or(0, ScaledXVector::len);
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(BundleError::DimensionMismatch(n.to_string(), v.len().to_string()));
    }
    let mut core = PolyMatrix::zeros(n, n);
    for v in vectors {
        let rows = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| (&v.components[j].conj() * &v.components[k]).scale_rational(&v.scale))
                    .collect()
            })
            .collect();
        core = &core + &PolyMatrix::from_rows(rows)?;
    }
    WeightedProjector::unweighted(core)
}

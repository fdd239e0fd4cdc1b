//! Sections of the bundle as equivariant functions, and the covariant
//! derivative they inherit from the Grassmann connection.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::BundleError;
use crate::exact_ring::{x_to_z, XPoly, ZPoly};
use crate::forms::ZForm;
use crate::kets::{connection_form, equivariance_type, EquivariantKet};

/// Coefficients `(f_1, …, f_N)` of an element of the free module over
/// functions on S².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub coeffs: Vec<XPoly>,
}

impl Section {
    pub fn new(coeffs: Vec<XPoly>) -> Self {
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![XPoly::zero(); n] }
    }

    /// The `k`-th standard basis section.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[k] = XPoly::one();
        s
    }
}

/// `Σ_w √w · f_w`, grouped by the radicand.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RadicalSum {
    pub terms: BTreeMap<BigRational, ZPoly>,
}

impl RadicalSum {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, w: BigRational, p: ZPoly) {
        let e = self.terms.entry(w.clone()).or_default();
        *e = &*e + &p;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Common U(1) weight of every term; zero reports `None`.
    pub fn equivariance_type(&self) -> Result<Option<i64>, BundleError> {
        let mut t = None;
        for p in self.terms.values() {
            match p.uniform_type() {
                None => return Err(BundleError::NotEquivariant),
                Some(None) => {}
                Some(Some(k)) => {
                    if t.is_some_and(|prev| prev != k) {
                        return Err(BundleError::NotEquivariant);
                    }
                    t = Some(k);
                }
            }
        }
        Ok(t)
    }
}

/// `φ^σ = ⟨ψ|f⟩ = Σ_k √w_k ψ_k f_k`, with `f_k` pulled back to S³.
pub fn section_pairing(k: &EquivariantKet, f: &Section) -> Result<RadicalSum, BundleError> {
    if k.len() != f.coeffs.len() {
        return Err(BundleError::DimensionMismatch(k.len().to_string(), f.coeffs.len().to_string()));
    }
    let mut out = RadicalSum::default();
    for (c, fk) in k.components().iter().zip(&f.coeffs) {
        if fk.is_zero() {
            continue;
        }
        out.push(c.weight.clone(), &c.poly * &x_to_z(fk));
    }
    Ok(out)
}

/// `∇φ = dφ + ⟨ψ|dψ⟩ φ` for `φ` of the same U(1) type as `k`.
pub fn covariant_derivative(k: &EquivariantKet, phi: &ZPoly) -> Result<ZForm, BundleError> {
    let t = equivariance_type(k)?;
    match phi.uniform_type() {
        Some(None) => {}
        Some(Some(s)) if s == t => {}
        Some(Some(s)) => return Err(BundleError::TypeMismatch { ket: t, function: s }),
        None => return Err(BundleError::NotEquivariant),
    }
    let d = ZForm::function(phi.clone()).exterior_derivative()?;
    Ok(&d + &connection_form(k)?.scale(phi))
}

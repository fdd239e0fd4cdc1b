//! Equivariant vector-valued functions on S³ and the real vector fields on
//! S² used to compare the tangent bundle with the charge-2 bundle.
//!
//! Square-root prefactors are never expanded. A ket component is a pair
//! `(w, f)` standing for `√w · f`, and sesquilinear pairings multiply the
//! weights so that only perfect squares ever have to be evaluated.
//!
//! Convention: the stored tuple is the bra row `⟨ψ| = (ψ_1, …, ψ_N)` with
//! unconjugated entries; [`pairing`] conjugates its second argument and the
//! projector built from a ket has entries `p_jk = conj(ψ_j) ψ_k`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_ring::json::PolyJson;
use crate::exact_ring::{
    format_fraction, parse_fraction, rational_sqrt, x, z, GaussianRational, RingError, XPoly,
    ZPoly, X1, X2, X3, Z0, Z1,
};
use crate::forms::{FormError, ZForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KetError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("weight product {0} is not the square of a rational")]
    RadicalMismatch(String),
    #[error("component {0} mixes U(1) weights")]
    MixedComponent(usize),
    #[error("components carry different U(1) weights ({0} and {1})")]
    MixedTypes(i64, i64),
    #[error("ket has no nonzero component")]
    Degenerate,
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Which of the two monopole families: `Minus` uses holomorphic monomials in
/// `z0, z1`, `Plus` their conjugates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonopoleSign {
    Minus,
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KetComponent {
    /// `w` in the prefactor `√w`.
    pub weight: BigRational,
    pub poly: ZPoly,
}

/// Vector-valued function on S³, stored as its bra row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantKet {
    components: Vec<KetComponent>,
}

impl EquivariantKet {
    pub fn new(components: Vec<KetComponent>) -> Result<Self, KetError> {
        if components.iter().any(|c| c.weight <= BigRational::zero()) {
            return Err(KetError::NonPositiveWeight);
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[KetComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn weights(&self) -> Vec<BigRational> {
        self.components.iter().map(|c| c.weight.clone()).collect()
    }

    pub fn is_normalized(&self) -> bool {
        pairing(self, self).map(|p| p.as_constant().is_some_and(|c| c.is_one())).unwrap_or(false)
    }

    /// The bra row with conjugated entries.
    pub fn conj(&self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .map(|c| KetComponent { weight: c.weight.clone(), poly: c.poly.conj() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> KetJson {
        KetJson {
            weights: self.components.iter().map(|c| format_fraction(&c.weight)).collect(),
            components: self.components.iter().map(|c| c.poly.to_json()).collect(),
        }
    }

    pub fn from_json(j: &KetJson) -> Result<Self, KetError> {
        if j.weights.len() != j.components.len() {
            return Err(KetError::LengthMismatch(j.weights.len(), j.components.len()));
        }
        let components = j
            .weights
            .iter()
            .zip(&j.components)
            .map(|(w, p)| Ok(KetComponent { weight: parse_fraction(w)?, poly: ZPoly::from_json(p)? }))
            .collect::<Result<Vec<_>, RingError>>()?;
        Self::new(components)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KetJson {
    pub weights: Vec<String>,
    pub components: Vec<PolyJson>,
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(z0^n, …, √C(n,k) z0^{n−k} z1^k, …, z1^n)` for `Minus`; the conjugate
/// tuple for `Plus`. `n = 0` gives the constant ket `(1)`.
pub fn monopole_ket(sign: MonopoleSign, n: u32) -> EquivariantKet {
    let components = (0..=n)
        .map(|k| {
            let weight = BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)));
            let poly = z(Z0).pow(n - k) * z(Z1).pow(k);
            let poly = match sign {
                MonopoleSign::Minus => poly,
                MonopoleSign::Plus => poly.conj(),
            };
            KetComponent { weight, poly }
        })
        .collect();
    EquivariantKet { components }
}

/// `(1/√2)(z1² − z0², z1² + z0², 2 z0 z1)`.
pub fn tilde_ket2() -> EquivariantKet {
    let half = BigRational::new(1.into(), 2.into());
    let a = z(Z0) * z(Z0);
    let b = z(Z1) * z(Z1);
    let c = (z(Z0) * z(Z1)).scale(&GaussianRational::from_int(2));
    EquivariantKet {
        components: [&b - &a, &b + &a, c]
            .into_iter()
            .map(|poly| KetComponent { weight: half.clone(), poly })
            .collect(),
    }
}

/// `Σ_k √(w_k^a w_k^b) · a_k · conj(b_k)`.
pub fn pairing(a: &EquivariantKet, b: &EquivariantKet) -> Result<ZPoly, KetError> {
    if a.len() != b.len() {
        return Err(KetError::LengthMismatch(a.len(), b.len()));
    }
    let mut acc = ZPoly::zero();
    for (ca, cb) in a.components.iter().zip(&b.components) {
        let s = sqrt_product(&ca.weight, &cb.weight)?;
        acc = &acc + &(&ca.poly * &cb.poly.conj()).scale_rational(&s);
    }
    Ok(acc)
}

pub(crate) fn sqrt_product(a: &BigRational, b: &BigRational) -> Result<BigRational, KetError> {
    let p = a * b;
    rational_sqrt(&p).ok_or_else(|| KetError::RadicalMismatch(format_fraction(&p)))
}

/// `A = ⟨ψ|dψ⟩ = Σ_k w_k ψ_k d(conj ψ_k)`.
pub fn connection_form(k: &EquivariantKet) -> Result<ZForm, KetError> {
    let mut acc = ZForm::zero();
    for c in &k.components {
        let d = ZForm::function(c.poly.conj()).exterior_derivative()?;
        acc = &acc + &d.scale(&c.poly.scale_rational(&c.weight));
    }
    Ok(acc)
}

/// `⟨dψ|dψ⟩ = Σ_k w_k dψ_k ∧ d(conj ψ_k)`.
pub fn curvature_scalar(k: &EquivariantKet) -> Result<ZForm, KetError> {
    let mut acc = ZForm::zero();
    for c in &k.components {
        let d = ZForm::function(c.poly.clone()).exterior_derivative()?;
        let dbar = ZForm::function(c.poly.conj()).exterior_derivative()?;
        acc = &acc + &d.wedge(&dbar)?.scale(&ZPoly::constant(c.weight.clone().into()));
    }
    Ok(acc)
}

/// The integer `m` with `φ(p·w) = w^m φ(p)` shared by all components.
pub fn equivariance_type(k: &EquivariantKet) -> Result<i64, KetError> {
    let mut found: Option<i64> = None;
    for (i, c) in k.components.iter().enumerate() {
        match c.poly.uniform_type() {
            None => return Err(KetError::MixedComponent(i)),
            Some(None) => {}
            Some(Some(t)) => match found {
                None => found = Some(t),
                Some(prev) if prev != t => return Err(KetError::MixedTypes(prev, t)),
                _ => {}
            },
        }
    }
    found.ok_or(KetError::Degenerate)
}

/// `√scale · (f_1, …, f_N)` with polynomial entries on S².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledXVector {
    pub scale: BigRational,
    pub components: Vec<XPoly>,
}

impl ScaledXVector {
    pub fn new(scale: BigRational, components: Vec<XPoly>) -> Self {
        Self { scale, components }
    }

    pub fn unit_scale(components: Vec<XPoly>) -> Self {
        Self::new(BigRational::one(), components)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `⟨a|b⟩ = √(s_a s_b) Σ a_k conj(b_k)`.
    pub fn pairing(&self, other: &Self) -> Result<XPoly, KetError> {
        if self.len() != other.len() {
            return Err(KetError::LengthMismatch(self.len(), other.len()));
        }
        let s = sqrt_product(&self.scale, &other.scale)?;
        let sum = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * &b.conj())
            .fold(XPoly::zero(), |acc, t| &acc + &t);
        Ok(sum.scale_rational(&s))
    }

    /// Exact equality as functions, allowing different scale factorizations.
    pub fn exact_eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| radical_eq(&self.scale, a, &other.scale, b))
    }

    /// `Σ_l x_l v_l` over a family of three vectors.
    pub fn coordinate_combination(family: &[ScaledXVector; 3]) -> Result<ScaledXVector, KetError> {
        let n = family[0].len();
        if family.iter().any(|v| v.len() != n || v.scale != family[0].scale) {
            return Err(KetError::LengthMismatch(n, n));
        }
        let components = (0..n)
            .map(|k| {
                (0..3).map(|l| &x(l) * &family[l].components[k]).fold(XPoly::zero(), |a, b| &a + &b)
            })
            .collect();
        Ok(ScaledXVector::new(family[0].scale.clone(), components))
    }
}

/// `√a · p == √b · q` for positive rationals `a`, `b`.
pub fn radical_eq(a: &BigRational, p: &XPoly, b: &BigRational, q: &XPoly) -> bool {
    match rational_sqrt(&(a / b)) {
        Some(r) => p.scale_rational(&r) == *q,
        None => p.is_zero() && q.is_zero(),
    }
}

/// `√scale · U` for a rectangular matrix `U` of polynomials on S².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledXMatrix {
    pub scale: BigRational,
    pub entries: Vec<Vec<XPoly>>,
}

impl ScaledXMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            scale: BigRational::one(),
            entries: (0..n)
                .map(|i| (0..n).map(|j| if i == j { XPoly::one() } else { XPoly::zero() }).collect())
                .collect(),
        }
    }

    /// `M|v⟩` with the scales multiplied under the root.
    pub fn apply(&self, v: &ScaledXVector) -> Result<ScaledXVector, KetError> {
        if self.cols() != v.len() {
            return Err(KetError::LengthMismatch(self.cols(), v.len()));
        }
        let components = self
            .entries
            .iter()
            .map(|row| row.iter().zip(&v.components).map(|(a, b)| a * b).fold(XPoly::zero(), |s, t| &s + &t))
            .collect();
        Ok(ScaledXVector::new(&self.scale * &v.scale, components))
    }
}

/// The real objects attached to the tangent bundle: the unit normal, the
/// rotation fields `V_l`, their images `W_l` and the matrix `u` with
/// `u V_l = W_l`.
#[derive(Clone, Debug)]
pub struct RealObjects {
    pub psi_nor: ScaledXVector,
    pub v: [ScaledXVector; 3],
    pub w: [ScaledXVector; 3],
    pub u: ScaledXMatrix,
}

pub fn named_real_objects() -> RealObjects {
    let o = XPoly::zero;
    let one = XPoly::one;
    let (x1, x2, x3) = (x(X1), x(X2), x(X3));
    let half = BigRational::new(1.into(), 2.into());
    let v = [
        ScaledXVector::unit_scale(vec![o(), -x3.clone(), x2.clone()]),
        ScaledXVector::unit_scale(vec![x3.clone(), o(), -x1.clone()]),
        ScaledXVector::unit_scale(vec![-x2.clone(), x1.clone(), o()]),
    ];
    let w = [
        ScaledXVector::new(
            half.clone(),
            vec![one() - &x1 * &x1, o(), -x3.clone(), &x1 * &x2, -(&x1 * &x3), x2.clone()],
        ),
        ScaledXVector::new(
            half.clone(),
            vec![-(&x1 * &x2), x3.clone(), o(), &x2 * &x2 - one(), -(&x2 * &x3), -x1.clone()],
        ),
        ScaledXVector::new(
            half.clone(),
            vec![-(&x1 * &x3), -x2.clone(), x1.clone(), &x2 * &x3, one() - &x3 * &x3, o()],
        ),
    ];
    let u = ScaledXMatrix {
        scale: half,
        entries: vec![
            vec![o(), -x3.clone(), x2.clone()],
            vec![one() - &x1 * &x1, -(&x1 * &x2), -(&x1 * &x3)],
            vec![-(&x1 * &x2), one() - &x2 * &x2, -(&x2 * &x3)],
            vec![-x3.clone(), o(), x1.clone()],
            vec![-x2.clone(), x1.clone(), o()],
            vec![-(&x1 * &x3), -(&x2 * &x3), one() - &x3 * &x3],
        ],
    };
    RealObjects {
        psi_nor: ScaledXVector::unit_scale(vec![x1, x2, x3]),
        v,
        w,
        u,
    }
}

/// Number of components of the monopole ket of order `n`.
pub fn monopole_dimension(n: u32) -> usize {
    n as usize + 1
}

/// Sum of the binomial weights, `2^n`; handy for sanity checks.
pub fn monopole_weight_sum(n: u32) -> BigRational {
    int(1u64 << n)
}

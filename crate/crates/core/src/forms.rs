//! Graded exterior algebra over the coordinate rings, exterior derivative,
//! restriction of ambient 2-forms to S² and exact integration over S².
//!
//! A form is stored as a map from basis blades to coefficient polynomials.
//! A blade is a bitmask over the coordinate differentials with the factors
//! in increasing index order, so `dx3∧dx1` is held as `−dx1∧dx3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_ring::json::PolyJson;
use crate::exact_ring::{
    integrate_function, x, z, GaussianRational, Poly, QuotientRing, RingError, Sphere2, Sphere3,
    VolumeUnits, XPoly, ZPoly, X1, X2, X3, Z0, Z0_BAR, Z1, Z1_BAR,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("degree {0} exceeds the representable maximum {1}")]
    DegreeOverflow(usize, usize),
    #[error("expected a homogeneous form of degree {expected}")]
    WrongDegree { expected: usize },
    #[error("unknown basis element {0:?}")]
    UnknownBasis(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Coordinate rings that carry an exterior algebra of bounded degree.
pub trait FormRing: QuotientRing {
    const MAX_DEGREE: usize;

    /// Ordered index lists used for display and serialization of degree-`k`
    /// components. Defaults to increasing order.
    fn basis(k: usize) -> Vec<Vec<usize>> {
        combinations(Self::NVARS, k)
    }
}

impl FormRing for Sphere2 {
    const MAX_DEGREE: usize = 3;

    fn basis(k: usize) -> Vec<Vec<usize>> {
        if k == 2 {
            vec![vec![X1, X2], vec![X2, X3], vec![X3, X1]]
        } else {
            combinations(3, k)
        }
    }
}

impl FormRing for Sphere3 {
    const MAX_DEGREE: usize = 2;
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

/// Mask and sign of the wedge of differentials listed in `order`.
/// Returns `None` when an index repeats.
fn blade_of(order: &[usize]) -> Option<(u8, bool)> {
    let mut mask = 0u8;
    let mut inversions = 0;
    for (a, &i) in order.iter().enumerate() {
        if mask & (1 << i) != 0 {
            return None;
        }
        mask |= 1 << i;
        inversions += order[a + 1..].iter().filter(|&&j| j < i).count();
    }
    Some((mask, inversions % 2 == 1))
}

/// Sign of `e_a ∧ e_b` relative to the blade `a | b`; `None` if they overlap.
fn wedge_sign(a: u8, b: u8) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for i in 0..8 {
        if a & (1 << i) != 0 {
            swaps += (b & ((1u8 << i) - 1)).count_ones();
        }
    }
    Some(swaps % 2 == 1)
}

fn blade_indices(mask: u8) -> Vec<usize> {
    (0..8).filter(|i| mask & (1 << i) != 0).collect()
}

/// Element of the exterior algebra over `R`.
#[derive(Clone, PartialEq, Eq)]
pub struct Form<R: FormRing> {
    terms: BTreeMap<u8, Poly<R>>,
}

pub type XForm = Form<Sphere2>;
pub type ZForm = Form<Sphere3>;

impl<R: FormRing> Default for Form<R> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<R: FormRing> Form<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn function(f: Poly<R>) -> Self {
        Self::blade(0, f)
    }

    /// The coordinate differential `dv_i`.
    pub fn differential(i: usize) -> Self {
        assert!(i < R::NVARS, "variable index out of range");
        Self::blade(1 << i, Poly::one())
    }

    fn blade(mask: u8, f: Poly<R>) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(mask, f);
        }
        Self { terms }
    }

    /// `f · dv_{i1} ∧ … ∧ dv_{ik}` for the listed indices in the given order.
    pub fn from_indices(indices: &[usize], f: Poly<R>) -> Result<Self, FormError> {
        if indices.len() > R::MAX_DEGREE {
            return Err(FormError::DegreeOverflow(indices.len(), R::MAX_DEGREE));
        }
        if indices.iter().any(|&i| i >= R::NVARS) {
            return Err(RingError::UnknownVariable(format!("{indices:?}")).into());
        }
        Ok(match blade_of(indices) {
            None => Self::zero(),
            Some((mask, neg)) => Self::blade(mask, if neg { -f } else { f }),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the blade listed by `indices` (sign-adjusted for order).
    pub fn coefficient(&self, indices: &[usize]) -> Poly<R> {
        match blade_of(indices) {
            None => Poly::zero(),
            Some((mask, neg)) => {
                let c = self.terms.get(&mask).cloned().unwrap_or_default();
                if neg {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| m.count_ones() as usize).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Degree of a nonzero homogeneous form; `None` for zero or mixed degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn part(&self, k: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, f)| (*m, f.clone()))
                .collect(),
        }
    }

    /// Multiplication by a function on the left.
    pub fn scale(&self, f: &Poly<R>) -> Self {
        Self::collect(self.terms.iter().map(|(m, g)| (*m, f * g)))
    }

    pub fn scale_const(&self, c: &GaussianRational) -> Self {
        Self::collect(self.terms.iter().map(|(m, g)| (*m, g.scale(c))))
    }

    fn collect(iter: impl IntoIterator<Item = (u8, Poly<R>)>) -> Self {
        let mut terms: BTreeMap<u8, Poly<R>> = BTreeMap::new();
        for (m, f) in iter {
            let e = terms.entry(m).or_default();
            *e = &*e + &f;
        }
        terms.retain(|_, f| !f.is_zero());
        Self { terms }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        let mut out = Vec::new();
        for (ma, fa) in &self.terms {
            for (mb, fb) in &other.terms {
                let deg = (ma | mb).count_ones() as usize;
                if let Some(neg) = wedge_sign(*ma, *mb) {
                    if deg > R::MAX_DEGREE {
                        return Err(FormError::DegreeOverflow(deg, R::MAX_DEGREE));
                    }
                    let p = fa * fb;
                    out.push((ma | mb, if neg { -p } else { p }));
                }
            }
        }
        Ok(Self::collect(out))
    }

    /// `d(f e_I) = Σ_v ∂f/∂v dv ∧ e_I`, applied to the stored representative.
    pub fn exterior_derivative(&self) -> Result<Self, FormError> {
        let mut out = Vec::new();
        for (m, f) in &self.terms {
            for v in 0..R::NVARS {
                let bit = 1u8 << v;
                if m & bit != 0 {
                    continue;
                }
                let df = f.partial_derivative(v)?;
                if df.is_zero() {
                    continue;
                }
                let deg = m.count_ones() as usize + 1;
                if deg > R::MAX_DEGREE {
                    return Err(FormError::DegreeOverflow(deg, R::MAX_DEGREE));
                }
                let neg = wedge_sign(bit, *m).expect("disjoint by construction");
                out.push((m | bit, if neg { -df } else { df }));
            }
        }
        Ok(Self::collect(out))
    }

    /// Complex conjugate: coefficients conjugated, each `dv` sent to
    /// `d(conj v)`.
    pub fn conj(&self) -> Self {
        let var_conj: Vec<usize> = (0..R::NVARS)
            .map(|i| {
                let mut e = [0u32; 4];
                e[i] = 1;
                let c = R::conj_monomial(&crate::exact_ring::Monomial(e));
                c.0.iter().position(|&k| k == 1).expect("generator maps to generator")
            })
            .collect();
        Self::collect(self.terms.iter().map(|(m, f)| {
            let idx: Vec<usize> = blade_indices(*m).into_iter().map(|i| var_conj[i]).collect();
            let (mask, neg) = blade_of(&idx).expect("conjugation permutes generators");
            let g = f.conj();
            (mask, if neg { -g } else { g })
        }))
    }

    /// Evaluates the form at a point on the list of tangent vectors.
    ///
    /// `values[v]` is the value of generator `v` at the point and
    /// `vectors[j][v]` is `dv(X_j)`. Only the component of degree
    /// `vectors.len()` contributes.
    pub fn eval_on(&self, values: &[Complex64], vectors: &[Vec<Complex64>]) -> Complex64 {
        let k = vectors.len();
        self.terms
            .iter()
            .filter(|(m, _)| m.count_ones() as usize == k)
            .map(|(m, f)| {
                let idx = blade_indices(*m);
                let det = determinant(&idx, vectors);
                f.eval(values) * det
            })
            .sum()
    }

    /// Contracts the degree-`k` part with `k` polynomial vector fields, where
    /// `fields[j][v]` is `dv(X_j)` as a polynomial.
    pub fn contract_fields(&self, fields: &[Vec<Poly<R>>]) -> Poly<R> {
        let k = fields.len();
        self.terms
            .iter()
            .filter(|(m, _)| m.count_ones() as usize == k)
            .map(|(m, f)| f * &poly_determinant(&blade_indices(*m), fields))
            .fold(Poly::zero(), |a, b| &a + &b)
    }

    /// Serialized graded components in the ring's preferred basis order.
    pub fn to_json(&self) -> Vec<FormComponentJson> {
        let mut out = Vec::new();
        for k in 0..=R::MAX_DEGREE {
            for b in R::basis(k) {
                let c = self.coefficient(&b);
                if c.is_zero() {
                    continue;
                }
                out.push(FormComponentJson { deg: k, basis: basis_name::<R>(&b), coeff: c.to_json() });
            }
        }
        out
    }

    pub fn from_json(components: &[FormComponentJson]) -> Result<Self, FormError> {
        let mut acc = Self::zero();
        for c in components {
            let idx = parse_basis::<R>(&c.basis)?;
            if idx.len() != c.deg {
                return Err(FormError::UnknownBasis(c.basis.clone()));
            }
            acc = &acc + &Self::from_indices(&idx, Poly::from_json(&c.coeff)?)?;
        }
        Ok(acc)
    }
}

fn determinant(idx: &[usize], vectors: &[Vec<Complex64>]) -> Complex64 {
    match idx.len() {
        0 => Complex64::new(1.0, 0.0),
        1 => vectors[0][idx[0]],
        2 => vectors[0][idx[0]] * vectors[1][idx[1]] - vectors[1][idx[0]] * vectors[0][idx[1]],
        _ => {
            // Laplace expansion along the first vector
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, &i) in idx.iter().enumerate() {
                let rest: Vec<usize> = idx.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, &j)| j).collect();
                let minor = determinant(&rest, &vectors[1..]);
                let s = if a % 2 == 0 { 1.0 } else { -1.0 };
                acc += vectors[0][i] * minor * s;
            }
            acc
        }
    }
}

fn poly_determinant<R: FormRing>(idx: &[usize], fields: &[Vec<Poly<R>>]) -> Poly<R> {
    if idx.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for (a, &i) in idx.iter().enumerate() {
        let rest: Vec<usize> = idx.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, &j)| j).collect();
        let term = &fields[0][i] * &poly_determinant(&rest, &fields[1..]);
        acc = if a % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn basis_name<R: FormRing>(indices: &[usize]) -> String {
    if indices.is_empty() {
        return "1".to_string();
    }
    indices.iter().map(|&i| format!("d{}", R::VAR_NAMES[i])).collect::<Vec<_>>().join("^")
}

fn parse_basis<R: FormRing>(s: &str) -> Result<Vec<usize>, FormError> {
    if s == "1" {
        return Ok(Vec::new());
    }
    s.split('^')
        .map(|p| {
            p.strip_prefix('d')
                .and_then(R::var_index)
                .ok_or_else(|| FormError::UnknownBasis(s.to_string()))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormComponentJson {
    pub deg: usize,
    pub basis: String,
    pub coeff: PolyJson,
}

impl<R: FormRing> fmt::Display for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in 0..=R::MAX_DEGREE {
            for b in R::basis(k) {
                let c = self.coefficient(&b);
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if b.is_empty() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c}) {}", basis_name::<R>(&b))?;
                }
            }
        }
        Ok(())
    }
}

impl<R: FormRing> fmt::Debug for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, R: FormRing> Add<&'a Form<R>> for &'a Form<R> {
    type Output = Form<R>;
    fn add(self, rhs: &Form<R>) -> Form<R> {
        Form::collect(self.terms.iter().chain(rhs.terms.iter()).map(|(m, f)| (*m, f.clone())))
    }
}

impl<'a, R: FormRing> Sub<&'a Form<R>> for &'a Form<R> {
    type Output = Form<R>;
    fn sub(self, rhs: &Form<R>) -> Form<R> {
        Form::collect(
            self.terms
                .iter()
                .map(|(m, f)| (*m, f.clone()))
                .chain(rhs.terms.iter().map(|(m, f)| (*m, -f))),
        )
    }
}

impl<R: FormRing> Add for Form<R> {
    type Output = Form<R>;
    fn add(self, rhs: Form<R>) -> Form<R> {
        &self + &rhs
    }
}

impl<R: FormRing> Sub for Form<R> {
    type Output = Form<R>;
    fn sub(self, rhs: Form<R>) -> Form<R> {
        &self - &rhs
    }
}

impl<R: FormRing> Neg for Form<R> {
    type Output = Form<R>;
    fn neg(self) -> Form<R> {
        Form { terms: self.terms.into_iter().map(|(m, f)| (m, -f)).collect() }
    }
}

/// A 2-form on S² written as `g · dvol`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SphereTwoForm {
    pub coeff: XPoly,
}

impl SphereTwoForm {
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn integrate(&self) -> VolumeUnits {
        integrate_function(&self.coeff)
    }
}

impl XForm {
    /// Coefficients on `(dx1∧dx2, dx2∧dx3, dx3∧dx1)`.
    pub fn two_form_components(&self) -> [XPoly; 3] {
        [
            self.coefficient(&[X1, X2]),
            self.coefficient(&[X2, X3]),
            self.coefficient(&[X3, X1]),
        ]
    }

    pub fn from_two_form_components(c: [XPoly; 3]) -> Self {
        let [f12, f23, f31] = c;
        let build = |i: &[usize], f: XPoly| Self::from_indices(i, f).expect("degree 2 fits");
        &(&build(&[X1, X2], f12) + &build(&[X2, X3], f23)) + &build(&[X3, X1], f31)
    }

    /// `x1 dx2∧dx3 + x2 dx3∧dx1 + x3 dx1∧dx2`.
    pub fn volume_form() -> Self {
        Self::from_two_form_components([x(X3), x(X1), x(X2)])
    }

    /// `dr` for the sphere relation `r = x1² + x2² + x3² − 1`.
    pub fn sphere_relation_differential() -> Self {
        let r = x(X1) * x(X1) + x(X2) * x(X2) + x(X3) * x(X3) - XPoly::one();
        // r reduces to zero canonically; differentiate the ambient expression instead
        debug_assert!(r.is_zero());
        let two = GaussianRational::from_int(2);
        (0..3)
            .map(|i| Self::differential(i).scale(&x(i).scale(&two)))
            .fold(Self::zero(), |a, b| &a + &b)
    }

    /// Restriction to S²: `dx_μ∧dx_ν ↦ ε_{μνλ} x_λ dvol`.
    pub fn restrict_to_sphere(&self) -> Result<SphereTwoForm, FormError> {
        if !self.is_zero() && self.homogeneous_degree() != Some(2) {
            return Err(FormError::WrongDegree { expected: 2 });
        }
        let [f12, f23, f31] = self.two_form_components();
        let g = &(&(&f12 * &x(X3)) + &(&f23 * &x(X1))) + &(&f31 * &x(X2));
        Ok(SphereTwoForm { coeff: g })
    }

    /// True when the form lies in the ideal generated by `r` and `dr`, i.e.
    /// its pullback to S² vanishes. 1-forms are tested against the three
    /// rotation fields, which span the tangent space at every point.
    pub fn vanishes_on_sphere(&self) -> bool {
        let rotations = [
            [XPoly::zero(), -x(X3), x(X2)],
            [x(X3), XPoly::zero(), -x(X1)],
            [-x(X2), x(X1), XPoly::zero()],
        ];
        let one_form = self.part(1);
        let tangent_ok = rotations.iter().all(|v| {
            (0..3)
                .map(|i| &one_form.coefficient(&[i]) * &v[i])
                .fold(XPoly::zero(), |a, b| &a + &b)
                .is_zero()
        });
        self.part(0).is_zero()
            && tangent_ok
            && self.part(2).restrict_to_sphere().map(|s| s.is_zero()).unwrap_or(false)
    }

    /// Exact integral over S² in units of 4π.
    pub fn integrate_s2(&self) -> Result<VolumeUnits, FormError> {
        Ok(self.restrict_to_sphere()?.integrate())
    }

    /// Evaluates at a point of ℝ³ on real tangent vectors.
    pub fn eval_real(&self, p: [f64; 3], vectors: &[[f64; 3]]) -> Complex64 {
        let vals = p.map(|v| Complex64::new(v, 0.0));
        let vecs: Vec<Vec<Complex64>> =
            vectors.iter().map(|v| v.iter().map(|&a| Complex64::new(a, 0.0)).collect()).collect();
        self.eval_on(&vals, &vecs)
    }
}

impl ZForm {
    /// `dr` for `r = z0z̄0 + z1z̄1`.
    pub fn sphere_relation_differential() -> Self {
        [(Z0, Z0_BAR), (Z1, Z1_BAR)]
            .into_iter()
            .map(|(a, b)| &Self::differential(a).scale(&z(b)) + &Self::differential(b).scale(&z(a)))
            .fold(Self::zero(), |acc, f| &acc + &f)
    }

    /// Three polynomial vector fields on S³, orthonormal at every point and
    /// tangent to it: `i(z0, z1)`, `(−z̄1, z̄0)` and `i(−z̄1, z̄0)`. Each is
    /// given as its values on `(dz0, dz1, dz̄0, dz̄1)`.
    pub fn tangent_frame_fields() -> [Vec<ZPoly>; 3] {
        let i = GaussianRational::i();
        let field = |a: ZPoly, b: ZPoly| vec![a.clone(), b.clone(), a.conj(), b.conj()];
        [
            field(z(Z0).scale(&i), z(Z1).scale(&i)),
            field(-z(Z1_BAR), z(Z0_BAR)),
            field(-z(Z1_BAR).scale(&i), z(Z0_BAR).scale(&i)),
        ]
    }

    /// True when the pullback of the form to S³ vanishes, decided exactly by
    /// contracting every homogeneous part with the tangent frame.
    pub fn vanishes_on_sphere(&self) -> bool {
        let f = Self::tangent_frame_fields();
        self.part(0).is_zero()
            && f.iter().all(|a| self.part(1).contract_fields(std::slice::from_ref(a)).is_zero())
            && (0..3).all(|a| {
                ((a + 1)..3).all(|b| {
                    self.part(2).contract_fields(&[f[a].clone(), f[b].clone()]).is_zero()
                })
            })
    }

    /// Evaluates at `(z0, z1)` on tangent vectors `(δz0, δz1)` of ℂ².
    pub fn eval_complex(
        &self,
        z0: Complex64,
        z1: Complex64,
        vectors: &[[Complex64; 2]],
    ) -> Complex64 {
        let vals = [z0, z1, z0.conj(), z1.conj()];
        let vecs: Vec<Vec<Complex64>> =
            vectors.iter().map(|v| vec![v[0], v[1], v[0].conj(), v[1].conj()]).collect();
        self.eval_on(&vals, &vecs)
    }
}

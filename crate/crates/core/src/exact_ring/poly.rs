//! Sparse polynomials over the Gaussian rationals, kept in the canonical
//! form of a quotient ring with a single monic relation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GaussianRational, RingError};

/// Exponent vector. Unused trailing slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// highest variable (the last slot) decides, then the next one down.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial ring modulo one monic relation, described by how
/// non-canonical monomials rewrite into canonical ones.
pub trait QuotientRing:
    Copy + Clone + Default + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static
{
    const NVARS: usize;
    const VAR_NAMES: &'static [&'static str];

    fn is_canonical(m: &Monomial) -> bool;

    /// Expansion of a non-canonical monomial as a sum of canonical ones with
    /// integer coefficients. Only called when `is_canonical` is false.
    fn rewrite(m: &Monomial) -> Vec<(Monomial, BigInt)>;

    /// Monomial of the complex conjugate (coefficients are conjugated separately).
    fn conj_monomial(m: &Monomial) -> Monomial;

    fn var_index(name: &str) -> Option<usize> {
        Self::VAR_NAMES.iter().position(|v| *v == name)
    }
}

/// Polynomial in canonical form for the ring `R`. Zero has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R: QuotientRing> {
    terms: BTreeMap<Monomial, GaussianRational>,
    _ring: PhantomData<R>,
}

impl<R: QuotientRing> Default for Poly<R> {
    fn default() -> Self {
        Self { terms: BTreeMap::new(), _ring: PhantomData }
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, GaussianRational>, m: Monomial, c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn accumulate_reduced<R: QuotientRing>(
    terms: &mut BTreeMap<Monomial, GaussianRational>,
    m: Monomial,
    c: GaussianRational,
) {
    if R::is_canonical(&m) {
        accumulate(terms, m, c);
    } else {
        for (mm, k) in R::rewrite(&m) {
            let kc = c.scale(&BigRational::from_integer(k));
            accumulate(terms, mm, kc);
        }
    }
}

impl<R: QuotientRing> Poly<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_terms([(Monomial::default(), c)])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    /// The `i`-th generator. Panics if `i` is out of range; use
    /// [`Poly::var_checked`] for untrusted indices.
    pub fn var(i: usize) -> Self {
        Self::var_checked(i).expect("variable index out of range")
    }

    pub fn var_checked(i: usize) -> Result<Self, RingError> {
        if i >= R::NVARS {
            return Err(RingError::UnknownVariable(i.to_string()));
        }
        let mut e = [0; 4];
        e[i] = 1;
        Ok(Self::from_terms([(Monomial(e), GaussianRational::one())]))
    }

    pub fn monomial(exp: [u32; 4], c: GaussianRational) -> Self {
        Self::from_terms([(Monomial(exp), c)])
    }

    /// Builds a polynomial from arbitrary (possibly non-canonical, possibly
    /// repeated) terms and reduces it to canonical form.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(m.0[R::NVARS..].iter().all(|&e| e == 0));
            accumulate_reduced::<R>(&mut out, m, c);
        }
        Self { terms: out, _ring: PhantomData }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Returns the constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::default()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|(m, c)| R::is_canonical(m) && !c.is_zero())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
            _ring: PhantomData,
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&GaussianRational::from_real(r.clone()))
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (R::conj_monomial(m), c.conj())))
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self, RingError> {
        if var >= R::NVARS {
            return Err(RingError::UnknownVariable(var.to_string()));
        }
        Ok(Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.0[var];
            if e == 0 {
                return None;
            }
            let mut d = *m;
            d.0[var] -= 1;
            Some((d, c.scale(&BigRational::from_integer(BigInt::from(e)))))
        })))
    }

    pub fn partial_derivative_by_name(&self, name: &str) -> Result<Self, RingError> {
        let i = R::var_index(name).ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
        self.partial_derivative(i)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at complex values of the generators.
    pub fn eval(&self, values: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_complex64();
                for (i, &e) in m.0.iter().enumerate().take(R::NVARS) {
                    if e > 0 {
                        v *= values[i].powu(e);
                    }
                }
                v
            })
            .sum()
    }

    /// Numeric form suitable for repeated evaluation.
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            nvars: R::NVARS,
            max_exp: self.terms.keys().flat_map(|m| m.0).max().unwrap_or(0),
            terms: self.terms.iter().map(|(m, c)| (m.0, c.to_complex64())).collect(),
        }
    }
}

/// Floating-point image of a polynomial with precomputed coefficients.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    max_exp: u32,
    terms: Vec<([u32; 4], Complex64)>,
}

impl CompiledPoly {
    pub fn eval(&self, values: &[Complex64]) -> Complex64 {
        let n = self.max_exp as usize + 1;
        let mut powers = vec![[Complex64::new(1.0, 0.0); 4]; n];
        for k in 1..n {
            for v in 0..self.nvars {
                powers[k][v] = powers[k - 1][v] * values[v];
            }
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = *c;
                for v in 0..self.nvars {
                    t *= powers[e[v] as usize][v];
                }
                t
            })
            .sum()
    }
}

impl<R: QuotientRing> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = (0..R::NVARS)
                .filter(|&i| m.0[i] > 0)
                .map(|i| match m.0[i] {
                    1 => R::VAR_NAMES[i].to_string(),
                    e => format!("{}^{}", R::VAR_NAMES[i], e),
                })
                .collect();
            // pure real or pure imaginary coefficients carry their sign outside
            let negative = if c.re.is_zero() { c.im < BigRational::zero() } else { c.is_real() && c.re < BigRational::zero() };
            let mag = if negative { -c } else { c.clone() };
            let sep = match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}")?;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<R: QuotientRing> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, R: QuotientRing> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, *m, c.clone());
        }
        Poly { terms, _ring: PhantomData }
    }
}

impl<R: QuotientRing> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Poly<R>) -> Poly<R> {
        &self + &rhs
    }
}

impl<'a, R: QuotientRing> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, *m, -c);
        }
        Poly { terms, _ring: PhantomData }
    }
}

impl<R: QuotientRing> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Poly<R>) -> Poly<R> {
        &self - &rhs
    }
}

impl<'a, R: QuotientRing> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate_reduced::<R>(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Poly { terms, _ring: PhantomData }
    }
}

impl<R: QuotientRing> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Poly<R>) -> Poly<R> {
        &self * &rhs
    }
}

impl<R: QuotientRing> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(), _ring: PhantomData }
    }
}

impl<R: QuotientRing> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -self.clone()
    }
}

impl<R: QuotientRing> std::iter::Sum for Poly<R> {
    fn sum<I: Iterator<Item = Poly<R>>>(iter: I) -> Poly<R> {
        let mut terms = BTreeMap::new();
        for p in iter {
            for (m, c) in p.terms {
                accumulate(&mut terms, m, c);
            }
        }
        Poly { terms, _ring: PhantomData }
    }
}

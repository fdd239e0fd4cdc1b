//! The two coordinate rings: functions on S² in `x1, x2, x3` and functions
//! on S³ in `z0, z1, z̄0, z̄1`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;

use super::poly::{Monomial, Poly, QuotientRing};
use super::GaussianRational;

/// `ℂ[x1,x2,x3] / (x1² + x2² + x3² − 1)`; canonical monomials have x3-degree ≤ 1.
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq, Hash)]
pub struct Sphere2;

/// `ℂ[z0,z1,z̄0,z̄1] / (z0z̄0 + z1z̄1 − 1)`; canonical monomials never contain
/// both `z0` and `z̄0`.
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq, Hash)]
pub struct Sphere3;

pub type XPoly = Poly<Sphere2>;
pub type ZPoly = Poly<Sphere3>;

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const X3: usize = 2;

pub const Z0: usize = 0;
pub const Z1: usize = 1;
pub const Z0_BAR: usize = 2;
pub const Z1_BAR: usize = 3;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

impl QuotientRing for Sphere2 {
    const NVARS: usize = 3;
    const VAR_NAMES: &'static [&'static str] = &["x1", "x2", "x3"];

    fn is_canonical(m: &Monomial) -> bool {
        m.0[X3] <= 1
    }

    // x3^c = x3^(c mod 2) · (1 − x1² − x2²)^(c/2), expanded by the trinomial theorem.
    fn rewrite(m: &Monomial) -> Vec<(Monomial, BigInt)> {
        let [a, b, c, _] = m.0;
        let k = c / 2;
        let r = c % 2;
        let kf = factorial(k);
        let mut out = Vec::new();
        for j in 0..=k {
            for l in 0..=(k - j) {
                let i = k - j - l;
                let mult = &kf / (factorial(i) * factorial(j) * factorial(l));
                let sign = if (j + l) % 2 == 0 { 1 } else { -1 };
                out.push((Monomial([a + 2 * j, b + 2 * l, r, 0]), mult * sign));
            }
        }
        out
    }

    fn conj_monomial(m: &Monomial) -> Monomial {
        *m
    }
}

impl QuotientRing for Sphere3 {
    const NVARS: usize = 4;
    const VAR_NAMES: &'static [&'static str] = &["z0", "z1", "zb0", "zb1"];

    fn is_canonical(m: &Monomial) -> bool {
        m.0[Z0] == 0 || m.0[Z0_BAR] == 0
    }

    // (z0 z̄0)^m = (1 − z1 z̄1)^m.
    fn rewrite(m: &Monomial) -> Vec<(Monomial, BigInt)> {
        let [e0, e1, f0, f1] = m.0;
        let k = e0.min(f0);
        (0..=k)
            .map(|j| {
                let c = binomial(BigInt::from(k), BigInt::from(j));
                let c = if j % 2 == 0 { c } else { -c };
                (Monomial([e0 - k, e1 + j, f0 - k, f1 + j]), c)
            })
            .collect()
    }

    fn conj_monomial(m: &Monomial) -> Monomial {
        let [e0, e1, f0, f1] = m.0;
        Monomial([f0, f1, e0, e1])
    }
}

/// Canonical representative of a raw polynomial in `x1, x2, x3`.
pub fn reduce_x(terms: impl IntoIterator<Item = ([u32; 3], GaussianRational)>) -> XPoly {
    XPoly::from_terms(terms.into_iter().map(|([a, b, c], k)| (Monomial([a, b, c, 0]), k)))
}

/// Canonical representative of a raw polynomial in `z0, z1, z̄0, z̄1`.
pub fn reduce_z(terms: impl IntoIterator<Item = ([u32; 4], GaussianRational)>) -> ZPoly {
    ZPoly::from_terms(terms.into_iter().map(|(e, k)| (Monomial(e), k)))
}

pub fn x(i: usize) -> XPoly {
    XPoly::var(i)
}

pub fn z(i: usize) -> ZPoly {
    ZPoly::var(i)
}

impl XPoly {
    /// Value at a real point of ℝ³.
    pub fn eval_point(&self, p: [f64; 3]) -> Complex64 {
        self.eval(&p.map(|v| Complex64::new(v, 0.0)))
    }
}

impl ZPoly {
    /// Value at `(z0, z1)`, with the barred generators set to the conjugates.
    pub fn eval_point(&self, z0: Complex64, z1: Complex64) -> Complex64 {
        self.eval(&[z0, z1, z0.conj(), z1.conj()])
    }

    /// `(holomorphic − antiholomorphic)` degree of a monomial, the weight of
    /// the U(1) action `(z0, z1)·w = (z0 w, z1 w)`.
    pub fn monomial_type(m: &Monomial) -> i64 {
        (m.0[Z0] + m.0[Z1]) as i64 - (m.0[Z0_BAR] + m.0[Z1_BAR]) as i64
    }

    /// The common U(1) weight of all monomials, `None` if they disagree.
    /// Zero is compatible with every weight and reports `Some(None)`.
    pub fn uniform_type(&self) -> Option<Option<i64>> {
        let mut t = None;
        for (m, _) in self.terms() {
            let k = Self::monomial_type(m);
            match t {
                None => t = Some(k),
                Some(prev) if prev != k => return None,
                _ => {}
            }
        }
        Some(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn c(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn x3_squared_rewrites() {
        let p = reduce_x([([0, 0, 2], c(1))]);
        let expect = XPoly::one() - x(X1) * x(X1) - x(X2) * x(X2);
        assert_eq!(p, expect);
    }

    #[test]
    fn x3_cubed_rewrites_once() {
        let p = reduce_x([([0, 0, 3], c(1))]);
        let x3 = x(X3);
        let expect = &x3 - &(&(&x(X1) * &x(X1)) * &x3) - &(&x(X2) * &x(X2)) * &x3;
        assert_eq!(p, expect);
    }

    #[test]
    fn canonical_input_unchanged() {
        let p = reduce_x([([2, 1, 0], c(1))]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&Monomial([2, 1, 0, 0])), c(1));
    }

    #[test]
    fn z0_z0bar_rewrites() {
        assert_eq!(reduce_z([([1, 0, 1, 0], c(1))]), ZPoly::one() - z(Z1) * z(Z1_BAR));
        let p = reduce_z([([2, 0, 1, 0], c(1))]);
        assert_eq!(p, z(Z0) - z(Z0) * z(Z1) * z(Z1_BAR));
    }

    #[test]
    fn sphere3_relation_powers_to_one() {
        let r = z(Z0) * z(Z0_BAR) + z(Z1) * z(Z1_BAR);
        assert_eq!(r, ZPoly::one());
        assert_eq!(r.pow(2), ZPoly::one());
        // raw square of the unreduced relation
        let raw = reduce_z([
            ([2, 0, 2, 0], c(1)),
            ([1, 1, 1, 1], c(2)),
            ([0, 2, 0, 2], c(1)),
        ]);
        assert!(raw.as_constant().unwrap().is_one());
    }

    #[test]
    fn derivatives() {
        let p = x(X1) * x(X2);
        assert_eq!(p.partial_derivative(X1).unwrap(), x(X2));
        assert!(x(X3).partial_derivative(X2).unwrap().is_zero());
        let q = z(Z0) * z(Z0) * z(Z1_BAR);
        assert_eq!(q.partial_derivative(Z0).unwrap(), (z(Z0) * z(Z1_BAR)).scale(&c(2)));
        assert!(p.partial_derivative(3).is_err());
        assert!(p.partial_derivative_by_name("y").is_err());
        assert_eq!(q.partial_derivative_by_name("zb1").unwrap(), z(Z0) * z(Z0));
    }

    #[test]
    fn conjugation_swaps_barred_generators() {
        let q = (z(Z0) * z(Z1_BAR)).scale(&GaussianRational::i());
        assert_eq!(q.conj(), (z(Z0_BAR) * z(Z1)).scale(&-GaussianRational::i()));
    }

    #[test]
    fn display_is_sorted() {
        let p = x(X3) - x(X1).scale(&GaussianRational::ratio(1, 2)) + XPoly::one();
        assert_eq!(p.to_string(), "1 - 1/2*x1 + x3");
    }

    #[test]
    fn uniform_type() {
        assert_eq!((z(Z0) * z(Z1)).uniform_type(), Some(Some(2)));
        assert_eq!((z(Z0) + z(Z1_BAR)).uniform_type(), None);
        assert_eq!(ZPoly::zero().uniform_type(), Some(None));
    }
}

//! Matrices of polynomials on S² and their radical-factored form
//! `diag(√l) · C · diag(√r)`.

use std::ops::{Add, Sub};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::BundleError;
use crate::exact_ring::{GaussianRational, XPoly};
use crate::kets::{radical_eq, sqrt_product, ScaledXMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<XPoly>>,
    ncols: usize,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<XPoly>>) -> Result<Self, BundleError> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(BundleError::Ragged);
        }
        Ok(Self { rows, ncols })
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        Self { rows: vec![vec![XPoly::zero(); m]; n], ncols: m }
    }

    pub fn identity(n: usize) -> Self {
        let mut z = Self::zeros(n, n);
        for i in 0..n {
            z.rows[i][i] = XPoly::one();
        }
        z
    }

    /// Constant matrix from Gaussian-rational entries.
    pub fn from_constants(rows: &[Vec<GaussianRational>]) -> Result<Self, BundleError> {
        Self::from_rows(rows.iter().map(|r| r.iter().cloned().map(XPoly::constant).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &XPoly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<XPoly>] {
        &self.rows
    }

    pub fn map(&self, f: impl Fn(&XPoly) -> XPoly + Sync) -> Self {
        Self {
            rows: self.rows.par_iter().map(|r| r.iter().map(&f).collect()).collect(),
            ncols: self.ncols,
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect(),
            ncols: self.nrows(),
        }
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().map(XPoly::conj)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(XPoly::is_zero)
    }

    /// `A · diag(d) · B`, with the diagonal given as rationals.
    pub fn mul_weighted(&self, d: &[BigRational], other: &Self) -> Result<Self, BundleError> {
        if self.ncols != other.nrows() || d.len() != self.ncols {
            return Err(BundleError::DimensionMismatch(
                format!("{}x{}", self.nrows(), self.ncols),
                format!("{}x{}", other.nrows(), other.ncols),
            ));
        }
        // scale rows of `other` once instead of every product term
        let scaled: Vec<Vec<XPoly>> = other
            .rows
            .iter()
            .zip(d)
            .map(|(r, w)| if w.is_one() { r.clone() } else { r.iter().map(|p| p.scale_rational(w)).collect() })
            .collect();
        let rows = self
            .rows
            .par_iter()
            .map(|row| {
                (0..other.ncols)
                    .map(|j| {
                        row.iter()
                            .zip(&scaled)
                            .filter(|(a, b)| !a.is_zero() && !b[j].is_zero())
                            .map(|(a, b)| a * &b[j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { rows, ncols: other.ncols })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, BundleError> {
        self.mul_weighted(&vec![BigRational::one(); self.ncols], other)
    }

    pub fn trace_weighted(&self, d: &[BigRational]) -> XPoly {
        (0..self.nrows().min(self.ncols)).map(|i| self.rows[i][i].scale_rational(&d[i])).sum()
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        self.map(|p| p.partial_derivative(var).expect("coordinate index in range"))
    }

    /// Left and right multiplication by constant matrices: `S · self · T`.
    pub fn conjugate_by(&self, s: &PolyMatrix, t: &PolyMatrix) -> Result<Self, BundleError> {
        s.mul(self)?.mul(t)
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.nrows(), self.ncols), (rhs.nrows(), rhs.ncols), "shape mismatch");
        PolyMatrix {
            rows: self
                .rows
                .iter()
                .zip(&rhs.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            ncols: self.ncols,
        }
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.nrows(), self.ncols), (rhs.nrows(), rhs.ncols), "shape mismatch");
        PolyMatrix {
            rows: self
                .rows
                .iter()
                .zip(&rhs.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
            ncols: self.ncols,
        }
    }
}

/// `diag(√left) · core · diag(√right)`, an exact matrix whose entries may
/// carry square roots of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredMatrix {
    pub left: Vec<BigRational>,
    pub core: PolyMatrix,
    pub right: Vec<BigRational>,
}

impl FactoredMatrix {
    pub fn new(left: Vec<BigRational>, core: PolyMatrix, right: Vec<BigRational>) -> Result<Self, BundleError> {
        if left.len() != core.nrows() || right.len() != core.ncols() {
            return Err(BundleError::DimensionMismatch(
                format!("{}x{}", left.len(), right.len()),
                format!("{}x{}", core.nrows(), core.ncols()),
            ));
        }
        Ok(Self { left, core, right })
    }

    pub fn unweighted(core: PolyMatrix) -> Self {
        let (n, m) = (core.nrows(), core.ncols());
        Self { left: vec![BigRational::one(); n], core, right: vec![BigRational::one(); m] }
    }

    pub fn nrows(&self) -> usize {
        self.core.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.core.ncols()
    }

    pub fn adjoint(&self) -> Self {
        Self { left: self.right.clone(), core: self.core.adjoint(), right: self.left.clone() }
    }

    /// Product; the inner radicals `√(r_k l_k)` must be rational.
    pub fn mul(&self, other: &Self) -> Result<Self, BundleError> {
        if self.ncols() != other.nrows() {
            return Err(BundleError::DimensionMismatch(
                format!("{}x{}", self.nrows(), self.ncols()),
                format!("{}x{}", other.nrows(), other.ncols()),
            ));
        }
        let inner = self
            .right
            .iter()
            .zip(&other.left)
            .map(|(a, b)| sqrt_product(a, b).map_err(BundleError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            left: self.left.clone(),
            core: self.core.mul_weighted(&inner, &other.core)?,
            right: other.right.clone(),
        })
    }

    /// Entrywise equality as functions on S².
    pub fn exact_eq(&self, other: &Self) -> bool {
        if self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return false;
        }
        (0..self.nrows()).all(|i| {
            (0..self.ncols()).all(|j| {
                radical_eq(
                    &(&self.left[i] * &self.right[j]),
                    self.core.get(i, j),
                    &(&other.left[i] * &other.right[j]),
                    other.core.get(i, j),
                )
            })
        })
    }
}

impl From<&ScaledXMatrix> for FactoredMatrix {
    fn from(m: &ScaledXMatrix) -> Self {
        FactoredMatrix {
            left: vec![m.scale.clone(); m.rows()],
            core: PolyMatrix::from_rows(m.entries.clone()).expect("rectangular by construction"),
            right: vec![BigRational::one(); m.cols()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_ring::{x, X1, X2};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn weighted_product() {
        let a = PolyMatrix::from_rows(vec![vec![x(X1), x(X2)]]).unwrap();
        let b = PolyMatrix::from_rows(vec![vec![XPoly::one()], vec![x(X2)]]).unwrap();
        let p = a.mul_weighted(&[q(2, 1), q(1, 3)], &b).unwrap();
        let expect = x(X1).scale_rational(&q(2, 1)) + (x(X2) * x(X2)).scale_rational(&q(1, 3));
        assert_eq!(p.get(0, 0), &expect);
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn factored_product_requires_rational_inner_radicals() {
        let id = PolyMatrix::identity(2);
        let a = FactoredMatrix::new(vec![q(1, 1); 2], id.clone(), vec![q(2, 1), q(1, 1)]).unwrap();
        let b = FactoredMatrix::new(vec![q(2, 1), q(1, 1)], id.clone(), vec![q(1, 1); 2]).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.core.get(0, 0), &XPoly::from_int(2));
        assert!(a.mul(&a).is_err());
        // √4 · 1 equals 2 with unit weights
        let d = FactoredMatrix::new(vec![q(4, 1), q(1, 1)], id.clone(), vec![q(1, 1); 2]).unwrap();
        let e = FactoredMatrix::unweighted(
            PolyMatrix::from_rows(vec![vec![XPoly::from_int(2), XPoly::zero()], vec![XPoly::zero(), XPoly::one()]])
                .unwrap(),
        );
        assert!(d.exact_eq(&e));
        assert!(!d.exact_eq(&FactoredMatrix::unweighted(id)));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(PolyMatrix::from_rows(vec![vec![x(X1)], vec![]]).is_err());
    }
}

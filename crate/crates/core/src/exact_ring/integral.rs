//! Closed-form integration of monomials over the unit sphere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::rings::XPoly;
use super::GaussianRational;

/// An exact multiple of 4π, the area of the unit sphere.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VolumeUnits(pub GaussianRational);

impl VolumeUnits {
    pub fn value(&self) -> &GaussianRational {
        &self.0
    }

    pub fn to_f64_real(&self) -> f64 {
        self.0.to_complex64().re * 4.0 * std::f64::consts::PI
    }
}

impl fmt::Display for VolumeUnits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·4π", self.0)
    }
}

fn double_factorial_odd(k: i64) -> BigInt {
    // (k)!! for odd k ≥ -1; (-1)!! = 1
    let mut acc = BigInt::from(1);
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

/// `∫_{S²} x1^a x2^b x3^c dvol` in units of 4π.
pub fn monomial_integral(a: u32, b: u32, c: u32) -> VolumeUnits {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return VolumeUnits(GaussianRational::zero());
    }
    let num = double_factorial_odd(a as i64 - 1)
        * double_factorial_odd(b as i64 - 1)
        * double_factorial_odd(c as i64 - 1);
    let den = double_factorial_odd((a + b + c) as i64 + 1);
    VolumeUnits(GaussianRational::from_real(BigRational::new(num, den)))
}

/// Term-by-term exact integral of a polynomial function over S².
pub fn integrate_function(f: &XPoly) -> VolumeUnits {
    let mut acc = GaussianRational::zero();
    for (m, c) in f.terms() {
        let v = monomial_integral(m.0[0], m.0[1], m.0[2]);
        if !v.0.is_zero() {
            acc += &(c * &v.0);
        }
    }
    VolumeUnits(acc)
}

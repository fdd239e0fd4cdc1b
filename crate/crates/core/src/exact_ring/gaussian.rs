//! Exact Gaussian rationals `a + b·i` over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RingError;

/// Exact complex number with rational real and imaginary parts.
///
/// `BigRational` keeps denominators positive and in lowest terms, so two
/// equal values always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_real(BigRational::new(num.into(), den.into()))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|q|² = q·conj(q)`, always real.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Renders a rational as `p/q` text (denominator always written).
pub fn format_fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_fraction(s: &str) -> Result<BigRational, RingError> {
    let bad = || RingError::Parse(format!("invalid rational literal {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rational(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let abs_im = self.im.abs();
                if abs_im.is_one() {
                    write!(f, "({}{}i)", fmt_rational(&self.re), sign)
                } else {
                    write!(f, "({}{}{}i)", fmt_rational(&self.re), sign, fmt_rational(&abs_im))
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_real(BigRational::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::from_real(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the integer types.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        &self * &inv
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let g = GaussianRational::new(q(2, -4), q(6, 9));
        assert_eq!(g.re.denom(), &BigInt::from(2));
        assert_eq!(g.re.numer(), &BigInt::from(-1));
        assert_eq!(g.im, q(2, 3));
    }

    #[test]
    fn norm_is_real_product_with_conjugate() {
        let g = GaussianRational::new(q(1, 2), q(-3, 5));
        let p = &g * &g.conj();
        assert!(p.is_real());
        assert_eq!(p.re, g.norm_sqr());
        assert_eq!(g.conj().conj(), g);
    }

    #[test]
    fn inverse_round_trips() {
        let g = GaussianRational::new(q(3, 7), q(2, 1));
        assert_eq!(&g * &g.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(1, 4)), Some(q(1, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn fraction_text() {
        assert_eq!(format_fraction(&q(-3, 6)), "-1/2");
        assert_eq!(format_fraction(&q(4, 1)), "4/1");
        assert_eq!(parse_fraction("-1/2").unwrap(), q(-1, 2));
        assert_eq!(parse_fraction("7").unwrap(), q(7, 1));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::new(q(1, 2), q(-1, 1)).to_string(), "(1/2-i)");
        assert_eq!(GaussianRational::new(q(0, 1), q(-1, 2)).to_string(), "-1/2i");
        assert_eq!(GaussianRational::from_int(3).to_string(), "3");
    }
}

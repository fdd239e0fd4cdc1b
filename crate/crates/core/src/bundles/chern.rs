//! Exact first Chern class and number.

use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::PolyMatrix;
use super::projector::WeightedProjector;
use super::BundleError;
use crate::exact_ring::{GaussianRational, XPoly, X1, X2, X3};
use crate::forms::{SphereTwoForm, XForm};

/// `tr(p (dp)²)` as an ambient 2-form, computed in factored form as
/// `tr(M W dM W dM W)` with `W = diag(w)`.
pub fn chern_integrand(p: &WeightedProjector) -> Result<XForm, BundleError> {
    let w = &p.weights;
    let dm: Vec<PolyMatrix> = (0..3).map(|a| p.core.partial_derivative(a)).collect();
    // X_a = M W ∂_a M
    let xs = dm.iter().map(|d| p.core.mul_weighted(w, d)).collect::<Result<Vec<_>, _>>()?;
    let n = p.dim();
    // tr(X_a W ∂_b M W)
    let pair_trace = |a: usize, b: usize| -> XPoly {
        let mut acc = XPoly::zero();
        for j in 0..n {
            for k in 0..n {
                let (l, r) = (xs[a].get(j, k), dm[b].get(k, j));
                if l.is_zero() || r.is_zero() {
                    continue;
                }
                acc = &acc + &(l * r).scale_rational(&(&w[j] * &w[k]));
            }
        }
        acc
    };
    let component = |a: usize, b: usize| &pair_trace(a, b) - &pair_trace(b, a);
    Ok(XForm::from_two_form_components([
        component(X1, X2),
        component(X2, X3),
        component(X3, X1),
    ]))
}

/// `tr(p (dp)²)` restricted to S², as `g · dvol`. The Chern form is this
/// times `−1/(2πi)`.
pub fn chern_form_exact(p: &WeightedProjector) -> Result<SphereTwoForm, BundleError> {
    Ok(chern_integrand(p)?.restrict_to_sphere()?)
}

/// `c1 = −(1/2πi) ∫ tr(p (dp)²)`. With the integral equal to `v · 4π` this
/// is `2i · v`, which must come out a real integer.
pub fn chern_number_exact(p: &WeightedProjector) -> Result<BigRational, BundleError> {
    let v = chern_form_exact(p)?.integrate();
    let c1 = (&GaussianRational::from_int(2) * &v.0).mul_i();
    if !c1.im.is_zero() {
        return Err(BundleError::ChernNotReal(c1.to_string()));
    }
    if !c1.re.is_integer() {
        return Err(BundleError::ChernNotInteger(c1.to_string()));
    }
    Ok(c1.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::projector::{normal_projector, projector_from_ket, tangent_projector};
    use crate::kets::{monopole_ket, tilde_ket2, MonopoleSign};
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn charge_one_integrand_is_constant() {
        let p = projector_from_ket(&monopole_ket(MonopoleSign::Minus, 1)).unwrap();
        let f = chern_form_exact(&p).unwrap();
        assert_eq!(f.coeff.as_constant(), Some(GaussianRational::new(int(0), BigRational::new((-1).into(), 2.into()))));
    }

    #[test]
    fn monopole_numbers() {
        for n in 0..=3u32 {
            let m = projector_from_ket(&monopole_ket(MonopoleSign::Minus, n)).unwrap();
            let p = projector_from_ket(&monopole_ket(MonopoleSign::Plus, n)).unwrap();
            assert_eq!(chern_number_exact(&m).unwrap(), int(n as i64));
            assert_eq!(chern_number_exact(&p).unwrap(), int(-(n as i64)));
        }
    }

    #[test]
    fn tilde_and_trivial_bundles() {
        let t = projector_from_ket(&tilde_ket2()).unwrap();
        assert_eq!(chern_number_exact(&t).unwrap(), int(2));
        assert!(chern_form_exact(&normal_projector()).unwrap().is_zero());
        assert!(chern_form_exact(&tangent_projector()).unwrap().is_zero());
        assert_eq!(chern_number_exact(&t.real_form()).unwrap(), int(0));
    }
}

//! JSON term-list format for polynomials.
//!
//! ```text
//! {"vars":["x1","x2","x3"],"terms":[{"re":"1/2","im":"0/1","exp":[0,0,1]}]}
//! ```
//!
//! Output is always canonical; input may be any representative and is
//! reduced on load.

use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Poly, QuotientRing};
use super::{format_fraction, parse_fraction, GaussianRational, RingError};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub re: String,
    pub im: String,
    pub exp: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl<R: QuotientRing> Poly<R> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: R::VAR_NAMES.iter().map(|s| s.to_string()).collect(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    re: format_fraction(&c.re),
                    im: format_fraction(&c.im),
                    exp: m.0[..R::NVARS].to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self, RingError> {
        if j.vars.len() != R::NVARS || j.vars.iter().zip(R::VAR_NAMES).any(|(a, b)| a != b) {
            return Err(RingError::Parse(format!(
                "expected vars {:?}, found {:?}",
                R::VAR_NAMES,
                j.vars
            )));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exp.len() != R::NVARS {
                return Err(RingError::Parse(format!(
                    "exponent vector {:?} has wrong length",
                    t.exp
                )));
            }
            let mut e = [0u32; 4];
            e[..R::NVARS].copy_from_slice(&t.exp);
            let c = GaussianRational::new(parse_fraction(&t.re)?, parse_fraction(&t.im)?);
            terms.push((Monomial(e), c));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("polynomial JSON is always serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self, RingError> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| RingError::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use crate::exact_ring::{x, XPoly, ZPoly, X1, X3};

    #[test]
    fn loose_input_is_reduced() {
        let s = r#"{"vars":["x1","x2","x3"],"terms":[{"re":"1","im":"0","exp":[0,0,2]}]}"#;
        let p = XPoly::from_json_str(s).unwrap();
        assert_eq!(p, XPoly::one() - x(X1) * x(X1) - x(1) * x(1));
    }

    #[test]
    fn output_is_canonical_text() {
        let p = x(X3).scale(&crate::exact_ring::GaussianRational::ratio(1, 2));
        assert_eq!(
            p.to_json_string(),
            r#"{"vars":["x1","x2","x3"],"terms":[{"re":"1/2","im":"0/1","exp":[0,0,1]}]}"#
        );
    }

    #[test]
    fn wrong_ring_rejected() {
        let s = x(X1).to_json_string();
        assert!(ZPoly::from_json_str(&s).is_err());
        let bad = r#"{"vars":["x1","x2","x3"],"terms":[{"re":"1","im":"0","exp":[1,0]}]}"#;
        assert!(XPoly::from_json_str(bad).is_err());
    }
}

//! Named built-in projectors.

use std::fmt;
use std::str::FromStr;

use super::projector::{normal_projector, projector_from_ket, tangent_projector, WeightedProjector};
use super::BundleError;
use crate::kets::{monopole_ket, tilde_ket2, MonopoleSign};

/// Largest monopole label accepted by the catalog.
pub const MAX_CHARGE: u32 = 16;

/// Built-in objects, named by the ket label: `p[-n]` is built from
/// `ψ_{-n}` and has `c1 = n`, `p[+n]` from `ψ_{+n}` with `c1 = -n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinId {
    Monopole(MonopoleSign, u32),
    Tilde,
    Normal,
    Tangent,
    TildeReal,
}

impl BuiltinId {
    /// Monopole with the given first Chern number.
    pub fn monopole_with_c1(c1: i64) -> Result<Self, BundleError> {
        if c1.unsigned_abs() > MAX_CHARGE as u64 {
            return Err(BundleError::ChargeOutOfRange(c1));
        }
        let sign = if c1 >= 0 { MonopoleSign::Minus } else { MonopoleSign::Plus };
        Ok(BuiltinId::Monopole(sign, c1.unsigned_abs() as u32))
    }

    /// Every catalog entry with monopoles up to `max_n`.
    pub fn all(max_n: u32) -> Vec<Self> {
        let mut v = Vec::new();
        for n in 0..=max_n {
            v.push(BuiltinId::Monopole(MonopoleSign::Minus, n));
            if n > 0 {
                v.push(BuiltinId::Monopole(MonopoleSign::Plus, n));
            }
        }
        v.extend([BuiltinId::Tilde, BuiltinId::Normal, BuiltinId::Tangent, BuiltinId::TildeReal]);
        v
    }
}

impl fmt::Display for BuiltinId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinId::Monopole(MonopoleSign::Minus, n) => write!(f, "p[-{n}]"),
            BuiltinId::Monopole(MonopoleSign::Plus, n) => write!(f, "p[+{n}]"),
            BuiltinId::Tilde => f.write_str("p~[-2]"),
            BuiltinId::Normal => f.write_str("p_nor"),
            BuiltinId::Tangent => f.write_str("p_tan"),
            BuiltinId::TildeReal => f.write_str("p~[-2]^R"),
        }
    }
}

impl FromStr for BuiltinId {
    type Err = BundleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BundleError::UnknownId(s.to_string());
        match s {
            "p~[-2]" => return Ok(BuiltinId::Tilde),
            "p_nor" => return Ok(BuiltinId::Normal),
            "p_tan" => return Ok(BuiltinId::Tangent),
            "p~[-2]^R" => return Ok(BuiltinId::TildeReal),
            _ => {}
        }
        let inner = s.strip_prefix("p[").and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (sign, digits) = match inner.as_bytes().first() {
            Some(b'-') => (MonopoleSign::Minus, &inner[1..]),
            Some(b'+') => (MonopoleSign::Plus, &inner[1..]),
            _ => return Err(bad()),
        };
        let n: u32 = digits.parse().map_err(|_| bad())?;
        if n > MAX_CHARGE {
            return Err(BundleError::ChargeOutOfRange(n as i64));
        }
        Ok(BuiltinId::Monopole(sign, n))
    }
}

pub fn build_projector(id: BuiltinId) -> Result<WeightedProjector, BundleError> {
    match id {
        BuiltinId::Monopole(sign, n) => projector_from_ket(&monopole_ket(sign, n)),
        BuiltinId::Tilde => projector_from_ket(&tilde_ket2()),
        BuiltinId::Normal => Ok(normal_projector()),
        BuiltinId::Tangent => Ok(tangent_projector()),
        BuiltinId::TildeReal => Ok(projector_from_ket(&tilde_ket2())?.real_form()),
    }
}

//! Passage between invariant functions on S³ and functions on S² along the
//! Hopf projection.

use std::collections::HashMap;

use super::poly::Monomial;
use super::rings::{x, z, XPoly, ZPoly, X1, X2, X3, Z0, Z0_BAR, Z1, Z1_BAR};
use super::{GaussianRational, RingError};

/// Order in which holomorphic/antiholomorphic generator pairs are consumed
/// when factoring an invariant monomial. Every order gives the same function
/// on S²; the choice only affects the intermediate expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingOrder {
    /// `z0z̄0`, `z0z̄1`, `z1z̄0`, `z1z̄1`.
    Greedy,
    /// `z0z̄1`, `z1z̄0`, `z0z̄0`, `z1z̄1`.
    CrossFirst,
}

impl PairingOrder {
    fn pairs(self) -> [(usize, usize); 4] {
        match self {
            PairingOrder::Greedy => [(Z0, Z0_BAR), (Z0, Z1_BAR), (Z1, Z0_BAR), (Z1, Z1_BAR)],
            PairingOrder::CrossFirst => {
                [(Z0, Z1_BAR), (Z1, Z0_BAR), (Z0, Z0_BAR), (Z1, Z1_BAR)]
            }
        }
    }
}

/// The invariant quadratic `z_a z̄_b` as a function on S².
fn pair_value(hol: usize, anti: usize) -> XPoly {
    let half = GaussianRational::ratio(1, 2);
    let i = GaussianRational::i();
    match (hol, anti) {
        (Z0, Z0_BAR) => (XPoly::one() + x(X3)).scale(&half),
        (Z1, Z1_BAR) => (XPoly::one() - x(X3)).scale(&half),
        (Z0, Z1_BAR) => (x(X1) - x(X2).scale(&i)).scale(&half),
        (Z1, Z0_BAR) => (x(X1) + x(X2).scale(&i)).scale(&half),
        _ => unreachable!("not a generator pair"),
    }
}

/// Rewrites a U(1)-invariant polynomial on S³ as a polynomial on S².
pub fn z_to_x(p: &ZPoly) -> Result<XPoly, RingError> {
    z_to_x_with_pairing(p, PairingOrder::Greedy)
}

pub fn z_to_x_with_pairing(p: &ZPoly, order: PairingOrder) -> Result<XPoly, RingError> {
    let mut powers: HashMap<(usize, usize, u32), XPoly> = HashMap::new();
    let mut out = XPoly::zero();
    for (m, c) in p.terms() {
        if ZPoly::monomial_type(m) != 0 {
            return Err(RingError::NotInvariant(monomial_text(m)));
        }
        let mut e = m.0;
        let mut value = XPoly::constant(c.clone());
        for (h, a) in order.pairs() {
            let k = e[h].min(e[a]);
            if k == 0 {
                continue;
            }
            e[h] -= k;
            e[a] -= k;
            let f = powers.entry((h, a, k)).or_insert_with(|| pair_value(h, a).pow(k));
            value = &value * f;
        }
        debug_assert!(e.iter().all(|&v| v == 0));
        out = &out + &value;
    }
    Ok(out)
}

/// Pulls a function on S² back to S³ along the Hopf projection.
pub fn x_to_z(p: &XPoly) -> ZPoly {
    let i = GaussianRational::i();
    let gens = [
        z(Z0) * z(Z1_BAR) + z(Z1) * z(Z0_BAR),
        (z(Z0) * z(Z1_BAR) - z(Z1) * z(Z0_BAR)).scale(&i),
        z(Z0) * z(Z0_BAR) - z(Z1) * z(Z1_BAR),
    ];
    let mut out = ZPoly::zero();
    for (m, c) in p.terms() {
        let mut v = ZPoly::constant(c.clone());
        for (k, g) in gens.iter().enumerate() {
            if m.0[k] > 0 {
                v = &v * &g.pow(m.0[k]);
            }
        }
        out = &out + &v;
    }
    out
}

fn monomial_text(m: &Monomial) -> String {
    ZPoly::monomial(m.0, GaussianRational::from_int(1)).to_string()
}

//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use bundle_forge::exact_ring::{GaussianRational, Monomial, XPoly, ZPoly, Z0, Z0_BAR, Z1, Z1_BAR};
use bundle_forge::forms::{XForm, ZForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff(r: &mut impl Rng) -> GaussianRational {
    let re = GaussianRational::ratio(r.gen_range(-4..=4), r.gen_range(1..=3));
    if r.gen_bool(0.3) {
        re + GaussianRational::ratio(r.gen_range(-3..=3), r.gen_range(1..=2)).mul_i()
    } else {
        re
    }
}

/// Up to `terms` monomials of total degree at most `deg` in the first
/// `nvars` generators.
fn exponents(r: &mut impl Rng, nvars: usize, deg: u32) -> [u32; 4] {
    let mut e = [0u32; 4];
    let total = r.gen_range(0..=deg);
    for _ in 0..total {
        e[r.gen_range(0..nvars)] += 1;
    }
    e
}

pub fn xpoly(r: &mut impl Rng, deg: u32, terms: usize) -> XPoly {
    let n = r.gen_range(0..=terms);
    XPoly::from_terms((0..n).map(|_| (Monomial(exponents(r, 3, deg)), coeff(r))))
}

pub fn zpoly(r: &mut impl Rng, deg: u32, terms: usize) -> ZPoly {
    let n = r.gen_range(0..=terms);
    ZPoly::from_terms((0..n).map(|_| (Monomial(exponents(r, 4, deg)), coeff(r))))
}

/// U(1)-invariant polynomial built from products of `z_i z̄_j`.
pub fn invariant_zpoly(r: &mut impl Rng, pairs: u32, terms: usize) -> ZPoly {
    let n = r.gen_range(0..=terms);
    ZPoly::from_terms((0..n).map(|_| {
        let mut e = [0u32; 4];
        for _ in 0..r.gen_range(0..=pairs) {
            e[[Z0, Z1][r.gen_range(0..2)]] += 1;
            e[[Z0_BAR, Z1_BAR][r.gen_range(0..2)]] += 1;
        }
        (Monomial(e), coeff(r))
    }))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

pub fn xform(r: &mut impl Rng, k: usize, deg: u32) -> XForm {
    subsets(3, k).iter().fold(XForm::zero(), |acc, idx| {
        &acc + &XForm::from_indices(idx, xpoly(r, deg, 2)).expect("degree within range")
    })
}

pub fn zform(r: &mut impl Rng, k: usize, deg: u32) -> ZForm {
    subsets(4, k).iter().fold(ZForm::zero(), |acc, idx| {
        &acc + &ZForm::from_indices(idx, zpoly(r, deg, 2)).expect("degree within range")
    })
}

pub fn sign(k: usize) -> GaussianRational {
    if k.is_multiple_of(2) {
        GaussianRational::from_int(1)
    } else {
        GaussianRational::from_int(-1)
    }
}


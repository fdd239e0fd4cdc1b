//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use bundle_forge::bundles::{
    build_projector, chern_form_exact, chern_number_exact, exact_gauge, isometry_verify, projector_from_ket,
    sum_of_dyads, BuiltinId, ConstMatrix, FactoredMatrix, WeightedProjector,
};
use bundle_forge::exact_ring::{monomial_integral, x, GaussianRational, XPoly, X1, X2, X3};
use bundle_forge::forms::{XForm, ZForm};
use bundle_forge::kets::{curvature_scalar, monopole_ket, named_real_objects, tilde_ket2, MonopoleSign};
use bundle_forge::quadbench::{
    chern_number_quad, condition_number, gauge_field, monte_carlo_integral, random_well_conditioned, seeded_rng,
    tangent_frame_check, Derivative, NumericProjectorField, SphereGrid, DEFAULT_FD_STEP,
};
use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn c1(p: &WeightedProjector) -> Result<BigRational, String> {
    chern_number_exact(p).map_err(|e| e.to_string())
}

fn built(id: BuiltinId) -> WeightedProjector {
    build_projector(id).expect("built-in projector")
}

fn monopole(sign: MonopoleSign, n: u32) -> WeightedProjector {
    built(BuiltinId::Monopole(sign, n))
}

fn expected_c1(id: BuiltinId) -> i64 {
    match id {
        BuiltinId::Monopole(MonopoleSign::Minus, n) => n as i64,
        BuiltinId::Monopole(MonopoleSign::Plus, n) => -(n as i64),
        BuiltinId::Tilde => 2,
        _ => 0,
    }
}

fn exact_chern_integers() -> Check {
    let t = Instant::now();
    for n in 0..=5u32 {
        let m = c1(&monopole(MonopoleSign::Minus, n))?;
        let p = c1(&monopole(MonopoleSign::Plus, n))?;
        ensure(m == int(n as i64), format!("c1(p[-{n}]) = {m}"))?;
        ensure(p == int(-(n as i64)), format!("c1(p[+{n}]) = {p}"))?;
    }
    let s = t.elapsed().as_secs_f64();
    ensure(s < 60.0, format!("took {s:.1} s"))?;
    Ok(format!("c1(p[-n]) = n, c1(p[+n]) = -n for n = 0..5 in {s:.1} s"))
}

fn tilde_charge() -> Check {
    let c = c1(&built(BuiltinId::Tilde))?;
    ensure(c == int(2), format!("c1 = {c}"))?;
    Ok("c1(p~[-2]) = 2".into())
}

fn transposition() -> Check {
    let ids = BuiltinId::all(5);
    for &id in &ids {
        let p = built(id);
        let (a, b) = (c1(&p)?, c1(&p.transpose())?);
        ensure(b == -a.clone(), format!("{id}: c1 = {a}, c1(transpose) = {b}"))?;
    }
    Ok(format!("c1(p^t) = -c1(p) for {} built-in projectors", ids.len()))
}

fn triviality() -> Check {
    ensure(chern_form_exact(&built(BuiltinId::Normal)).map_err(|e| e.to_string())?.is_zero(), "p_nor form")?;
    ensure(chern_form_exact(&built(BuiltinId::Tangent)).map_err(|e| e.to_string())?.is_zero(), "p_tan form")?;
    let c = c1(&built(BuiltinId::TildeReal))?;
    ensure(c == int(0), format!("c1((p~[-2])^R) = {c}"))?;
    Ok("Chern forms of p_nor, p_tan vanish; c1((p~[-2])^R) = 0".into())
}

fn partial_isometry() -> Check {
    let o = named_real_objects();
    let u = FactoredMatrix::from(&o.u);
    let r = isometry_verify(&u, &built(BuiltinId::Tangent), &built(BuiltinId::TildeReal)).map_err(|e| e.to_string())?;
    ensure(r.source_ok, "u†u != p_tan")?;
    ensure(r.target_ok, "uu† != (p~[-2])^R")?;
    for l in 0..3 {
        let uv = o.u.apply(&o.v[l]).map_err(|e| e.to_string())?;
        ensure(uv.exact_eq(&o.w[l]), format!("u V_{} != W_{}", l + 1, l + 1))?;
    }
    Ok("u†u = p_tan, uu† = (p~[-2])^R, u V_l = W_l".into())
}

/// `√(w_i w_j) M_ij` as a polynomial.
fn full_entries(p: &WeightedProjector) -> Vec<Vec<XPoly>> {
    (0..p.dim()).map(|i| (0..p.dim()).map(|j| p.entry(i, j).expect("rational radical")).collect()).collect()
}

fn explicit_matrices() -> Check {
    let one = XPoly::one;
    let (x1, x2, x3) = (x(X1), x(X2), x(X3));
    let i = |p: XPoly| p.scale(&GaussianRational::i());
    let half = |rows: Vec<Vec<XPoly>>| -> Vec<Vec<XPoly>> {
        rows.into_iter().map(|r| r.into_iter().map(|p| p.scale(&GaussianRational::ratio(1, 2))).collect()).collect()
    };
    let x12 = &x1 * &x2;
    let x13 = &x1 * &x3;
    let x23 = &x2 * &x3;

    let p_minus = half(vec![
        vec![one() + x3.clone(), &x1 + &i(x2.clone())],
        vec![&x1 - &i(x2.clone()), one() - x3.clone()],
    ]);
    let p_plus = half(vec![
        vec![one() + x3.clone(), &x1 - &i(x2.clone())],
        vec![&x1 + &i(x2.clone()), one() - x3.clone()],
    ]);
    let tan = vec![
        vec![one() - &x1 * &x1, -x12.clone(), -x13.clone()],
        vec![-x12.clone(), one() - &x2 * &x2, -x23.clone()],
        vec![-x13.clone(), -x23.clone(), one() - &x3 * &x3],
    ];
    let tilde = half(vec![
        vec![one() - &x1 * &x1, -x3.clone() - i(x12.clone()), -i(x2.clone()) - x13.clone()],
        vec![-x3.clone() + i(x12.clone()), one() - &x2 * &x2, x1.clone() + i(x23.clone())],
        vec![i(x2.clone()) - x13.clone(), x1.clone() - i(x23.clone()), one() - &x3 * &x3],
    ]);
    let z = XPoly::zero;
    let tilde_real = half(vec![
        vec![one() - &x1 * &x1, z(), -x3.clone(), x12.clone(), -x13.clone(), x2.clone()],
        vec![z(), one() - &x1 * &x1, -x12.clone(), -x3.clone(), -x2.clone(), -x13.clone()],
        vec![-x3.clone(), -x12.clone(), one() - &x2 * &x2, z(), x1.clone(), -x23.clone()],
        vec![x12.clone(), -x3.clone(), z(), one() - &x2 * &x2, x23.clone(), x1.clone()],
        vec![-x13.clone(), -x2.clone(), x1.clone(), x23.clone(), one() - &x3 * &x3, z()],
        vec![x2.clone(), -x13.clone(), -x23.clone(), x1.clone(), z(), one() - &x3 * &x3],
    ]);

    let cases = [
        ("p[-1]", built(BuiltinId::Monopole(MonopoleSign::Minus, 1)), p_minus),
        ("p[+1]", built(BuiltinId::Monopole(MonopoleSign::Plus, 1)), p_plus),
        ("p_tan", built(BuiltinId::Tangent), tan),
        ("p~[-2]", built(BuiltinId::Tilde), tilde),
        ("(p~[-2])^R", built(BuiltinId::TildeReal), tilde_real.clone()),
    ];
    for (name, p, golden) in &cases {
        let got = full_entries(p);
        for (r, (a, b)) in got.iter().zip(golden).enumerate() {
            for (c, (g, e)) in a.iter().zip(b).enumerate() {
                ensure(g == e, format!("{name} entry ({},{}): {g} vs {e}", r + 1, c + 1))?;
            }
        }
    }
    let dyads = sum_of_dyads(&named_real_objects().w).map_err(|e| e.to_string())?;
    ensure(full_entries(&dyads) == tilde_real, "sum of W dyads")?;
    Ok("p[-1], p[+1], p_tan, p~[-2], (p~[-2])^R equal the displayed matrices; sum of W dyads too".into())
}

fn curvature_identity() -> Check {
    let dz = |a: usize, b: usize| ZForm::differential(a).wedge(&ZForm::differential(b)).expect("degree 2");
    let base = &dz(0, 2) + &dz(1, 3);
    let mut worst = 0.0f64;
    let mut cases: Vec<(String, _, i64)> =
        (1..=6u32).map(|n| (format!("psi_-{n}"), monopole_ket(MonopoleSign::Minus, n), n as i64)).collect();
    cases.push(("psi~_-2".into(), tilde_ket2(), 2));
    for (name, k, factor) in cases {
        let omega = curvature_scalar(&k).map_err(|e| e.to_string())?;
        let expected = base.scale_const(&GaussianRational::from_int(factor));
        let r = tangent_frame_check(&omega, &expected, 200, 17);
        worst = worst.max(r.max_difference);
        ensure(r.pass, format!("{name}: max difference {:.2e}", r.max_difference))?;
    }
    Ok(format!("<dpsi|dpsi> = n(dz0dzb0 + dz1dzb1) at 200 points, n = 1..6 and tilde; max diff {worst:.1e}"))
}

fn backend_agreement() -> Check {
    let grid = SphereGrid::new(64, 128).map_err(|e| e.to_string())?;
    let (mut ea, mut ef) = (0.0f64, 0.0f64);
    let ids = BuiltinId::all(4);
    for &id in &ids {
        let want = expected_c1(id);
        let exact = c1(&built(id))?;
        ensure(exact == int(want), format!("{id}: exact {exact}"))?;
        let f = NumericProjectorField::from_projector(&built(id));
        let a = chern_number_quad(&f, &grid, Derivative::Analytic).map_err(|e| e.to_string())?;
        let d = chern_number_quad(&f, &grid, Derivative::FiniteDifference { step: DEFAULT_FD_STEP })
            .map_err(|e| e.to_string())?;
        let (da, df) = ((a.c1 - want as f64).abs(), (d.c1 - want as f64).abs());
        ensure(da < 1e-6, format!("{id}: analytic {}", a.c1))?;
        ensure(df < 1e-4, format!("{id}: finite difference {}", d.c1))?;
        ea = ea.max(da);
        ef = ef.max(df);
    }
    Ok(format!("{} projectors at 64x128: analytic error {ea:.1e}, finite-difference error {ef:.1e}", ids.len()))
}

fn gauge_robustness() -> Check {
    let grid = SphereGrid::default();
    let mut rng = seeded_rng(2024);
    let kets = [(MonopoleSign::Minus, 1), (MonopoleSign::Plus, 2), (MonopoleSign::Minus, 3), (MonopoleSign::Plus, 1)];
    let mut worst = 0.0f64;
    for i in 0..20 {
        let (sign, n) = kets[i % kets.len()];
        let k = monopole_ket(sign, n);
        let g = random_well_conditioned(k.len(), 10.0, &mut rng);
        ensure(condition_number(&g) < 10.0, "condition number")?;
        let f = gauge_field(&k, &g).map_err(|e| e.to_string())?;
        let r = chern_number_quad(&f, &grid, Derivative::FiniteDifference { step: DEFAULT_FD_STEP })
            .map_err(|e| e.to_string())?;
        let want = expected_c1(BuiltinId::Monopole(sign, n)) as f64;
        worst = worst.max((r.c1 - want).abs());
        ensure((r.c1 - want).abs() < 1e-4, format!("g #{i} on {:?} {n}: {}", sign, r.c1))?;
    }
    let units = [GaussianRational::from_int(1), GaussianRational::from_int(-1), GaussianRational::i(), -GaussianRational::i()];
    let mut count = 0;
    for (sign, n) in [(MonopoleSign::Minus, 2), (MonopoleSign::Minus, 1), (MonopoleSign::Plus, 3)] {
        let p = projector_from_ket(&monopole_ket(sign, n)).map_err(|e| e.to_string())?;
        let c = c1(&p)?;
        for _ in 0..10 {
            let mut perm: Vec<usize> = (0..p.dim()).collect();
            perm.shuffle(&mut rng);
            let s: ConstMatrix = (0..p.dim())
                .map(|r| {
                    (0..p.dim())
                        .map(|col| if perm[r] == col { units[rng.gen_range(0..4)].clone() } else { GaussianRational::from_int(0) })
                        .collect()
                })
                .collect();
            let gr = exact_gauge(&p, &s).map_err(|e| e.to_string())?;
            let iso = isometry_verify(&gr.isometry, &p, &gr.projector).map_err(|e| e.to_string())?;
            ensure(iso.pass(), "vv† = p^s, v†v = p")?;
            ensure(c1(&gr.projector)? == c, "c1 changed under signed permutation")?;
            count += 1;
        }
    }
    Ok(format!("20 random g: max error {worst:.1e}; {count} signed permutations exact"))
}

fn calculus_properties() -> Check {
    const N: u64 = 1000;
    let dr = XForm::sphere_relation_differential();
    for s in 0..N {
        let mut r = rng(s);
        let k = (s % 2) as usize;
        let w = xform(&mut r, k, 3);
        ensure(w.exterior_derivative().unwrap().exterior_derivative().unwrap().is_zero(), format!("d^2, seed {s}"))?;
        let z = zform(&mut r, 0, 3);
        ensure(z.exterior_derivative().unwrap().exterior_derivative().unwrap().is_zero(), format!("d^2 on S3, seed {s}"))?;
    }
    for s in 0..N {
        let mut r = rng(N + s);
        let k = (s % 2) as usize;
        let (a, b) = (xform(&mut r, k, 2), xform(&mut r, 1 - k, 2));
        let lhs = a.wedge(&b).unwrap().exterior_derivative().unwrap();
        let rhs = &a.exterior_derivative().unwrap().wedge(&b).unwrap()
            + &a.wedge(&b.exterior_derivative().unwrap()).unwrap().scale_const(&sign(k));
        ensure((&lhs - &rhs).vanishes_on_sphere(), format!("Leibniz, seed {s}"))?;
    }
    for s in 0..N {
        let mut r = rng(2 * N + s);
        let k = (s % 3) as usize;
        let l = ((s / 3) % 2) as usize;
        let (a, b) = (xform(&mut r, k, 2), xform(&mut r, l.min(3 - k), 2));
        ensure(a.wedge(&b).unwrap() == b.wedge(&a).unwrap().scale_const(&sign(k * l.min(3 - k))), format!("wedge, seed {s}"))?;
        let c = zform(&mut r, 1, 2);
        ensure(c.wedge(&c).unwrap().is_zero(), format!("wedge on S3, seed {s}"))?;
    }
    for s in 0..N {
        let mut r = rng(3 * N + s);
        let a = xform(&mut r, 1, 3);
        ensure(dr.wedge(&a).unwrap().restrict_to_sphere().unwrap().is_zero(), format!("restriction, seed {s}"))?;
    }
    Ok(format!("d^2 = 0, graded Leibniz, wedge antisymmetry, ideal annihilation: {N} inputs each"))
}

fn oracle_consistency() -> Check {
    let mut n = 0;
    let mut worst = 0.0f64;
    for a in (0..=8u32).step_by(2) {
        for b in (0..=8 - a).step_by(2) {
            for c in (0..=8 - a - b).step_by(2) {
                let exact = monomial_integral(a, b, c).to_f64_real();
                let f = x(X1).pow(a) * x(X2).pow(b) * x(X3).pow(c);
                let mc = monte_carlo_integral(&f, 1_000_000, 7).map_err(|e| e.to_string())?;
                let z = (mc.value.re - exact).abs() / mc.std_error.max(f64::MIN_POSITIVE);
                let ok = z < 3.0 || (mc.value.re - exact).abs() < 1e-12;
                ensure(ok, format!("x1^{a} x2^{b} x3^{c}: exact {exact}, mc {} +- {}", mc.value.re, mc.std_error))?;
                if mc.std_error > 0.0 {
                    worst = worst.max(z);
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} even monomials of degree <= 8 within 3 standard errors (worst {worst:.2})"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("exact Chern integers", exact_chern_integers),
        ("tilde charge", tilde_charge),
        ("transposition sign flip", transposition),
        ("triviality", triviality),
        ("partial isometry", partial_isometry),
        ("explicit matrices", explicit_matrices),
        ("curvature identity", curvature_identity),
        ("backend agreement", backend_agreement),
        ("gauge robustness", gauge_robustness),
        ("calculus properties", calculus_properties),
        ("oracle consistency", oracle_consistency),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {:>2} {name}: PASS ({msg}) [{secs:.1} s]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({msg}) [{secs:.1} s]", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

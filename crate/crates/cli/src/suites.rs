//! Verification suites behind `bundle-forge verify`.

use std::fmt::Write as _;

use bundle_forge::bundles::{
    build_projector, chern_number_exact, exact_gauge, isometry_verify, projector_from_ket, BuiltinId, ConstMatrix,
    FactoredMatrix,
};
use bundle_forge::exact_ring::GaussianRational;
use bundle_forge::forms::ZForm;
use bundle_forge::kets::{curvature_scalar, monopole_ket, named_real_objects, tilde_ket2, MonopoleSign, ScaledXMatrix};
use bundle_forge::quadbench::{
    chern_number_quad, connection_invariance_check, gauge_field, random_unitary, random_well_conditioned,
    seeded_rng, tangent_frame_check, Derivative, NumericProjectorField, SphereGrid, DEFAULT_FD_STEP,
};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Outcome, Suite};

struct Log {
    text: String,
    pass: bool,
}

impl Log {
    fn line(&mut self, ok: bool, msg: impl std::fmt::Display) {
        writeln!(self.text, "{msg}: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
        self.pass &= ok;
    }

    fn header(&mut self, name: &str) {
        writeln!(self.text, "[{name}]").unwrap();
    }
}

fn expected_c1(id: BuiltinId) -> i64 {
    match id {
        BuiltinId::Monopole(MonopoleSign::Minus, n) => n as i64,
        BuiltinId::Monopole(MonopoleSign::Plus, n) => -(n as i64),
        BuiltinId::Tilde => 2,
        BuiltinId::Normal | BuiltinId::Tangent | BuiltinId::TildeReal => 0,
    }
}

fn axioms(log: &mut Log, max_charge: u32) {
    log.header("axioms");
    for id in BuiltinId::all(max_charge) {
        let p = build_projector(id).expect("built-in");
        for (name, q) in [(id.to_string(), p.clone()), (format!("{id}^t"), p.transpose())] {
            let r = q.verify_axioms();
            log.line(
                r.all_pass(),
                format_args!("{name}: idempotent {}, hermitian {}, trace {}", r.idempotent, r.hermitian, r.trace_text()),
            );
        }
    }
}

fn curvature(log: &mut Log, max_charge: u32) {
    log.header("curvature");
    let grid = SphereGrid::default();
    for id in BuiltinId::all(max_charge) {
        let p = build_projector(id).expect("built-in");
        let want = expected_c1(id);
        match (chern_number_exact(&p), chern_number_exact(&p.transpose())) {
            (Ok(c), Ok(ct)) => {
                let c = c.to_integer();
                let ct = ct.to_integer();
                log.line(c == want.into(), format_args!("c1({id}) = {c}"));
                log.line(ct == -c, format_args!("c1({id}^t) = {ct}"));
            }
            (a, b) => log.line(false, format_args!("c1({id}): {:?} / {:?}", a.err(), b.err())),
        }
        let small = !matches!(id, BuiltinId::Monopole(_, n) if n > 4);
        if small {
            let field = NumericProjectorField::from_projector(&p);
            for (mode, d, tol) in [
                ("analytic", Derivative::Analytic, 1e-6),
                ("fd", Derivative::FiniteDifference { step: DEFAULT_FD_STEP }, 1e-4),
            ] {
                match chern_number_quad(&field, &grid, d) {
                    Ok(r) => {
                        let err = (r.c1 - want as f64).abs();
                        log.line(err < tol, format_args!("quad {mode} c1({id}) = {:.9}, error {err:.1e}", r.c1));
                    }
                    Err(e) => log.line(false, format_args!("quad {mode} c1({id}): {e}")),
                }
            }
        }
    }
}

fn signed_permutation(n: usize, rng: &mut impl Rng) -> ConstMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let units = [
        GaussianRational::from_int(1),
        GaussianRational::from_int(-1),
        GaussianRational::i(),
        -GaussianRational::i(),
    ];
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if perm[i] == j { units[rng.gen_range(0..4)].clone() } else { GaussianRational::from_int(0) })
                .collect()
        })
        .collect()
}

fn isometry(log: &mut Log, seed: u64) {
    log.header("isometry");
    let o = named_real_objects();
    let u = FactoredMatrix::from(&o.u);
    let tan = build_projector(BuiltinId::Tangent).expect("built-in");
    let real = build_projector(BuiltinId::TildeReal).expect("built-in");
    match isometry_verify(&u, &tan, &real) {
        Ok(r) => {
            let word = |b: bool| if b { "PASS" } else { "FAIL" };
            writeln!(log.text, "u†u = p_tan: {}; uu† = (p~_{{-2}})^R: {}", word(r.source_ok), word(r.target_ok))
                .unwrap();
            log.pass &= r.pass();
        }
        Err(e) => log.line(false, format_args!("u: {e}")),
    }
    for l in 0..3 {
        let ok = o.u.apply(&o.v[l]).is_ok_and(|uv| uv.exact_eq(&o.w[l]));
        log.line(ok, format_args!("u V_{} = W_{}", l + 1, l + 1));
    }
    let id = FactoredMatrix::from(&ScaledXMatrix::identity(3));
    let nor = build_projector(BuiltinId::Normal).expect("built-in");
    let neg = isometry_verify(&id, &nor, &nor).is_ok_and(|r| !r.pass());
    log.line(neg, "identity rejected as isometry onto p_nor");

    let mut rng = seeded_rng(seed);
    for (sign, n) in [(MonopoleSign::Minus, 1), (MonopoleSign::Minus, 2), (MonopoleSign::Plus, 2)] {
        let p = projector_from_ket(&monopole_ket(sign, n)).expect("built-in");
        let c = chern_number_exact(&p).ok();
        for _ in 0..5 {
            let s = signed_permutation(p.dim(), &mut rng);
            let ok = exact_gauge(&p, &s).is_ok_and(|g| {
                isometry_verify(&g.isometry, &p, &g.projector).is_ok_and(|r| r.pass())
                    && chern_number_exact(&g.projector).ok() == c
            });
            log.line(ok, format_args!("signed permutation on {}: vv† = p^s, v†v = p, same c1", BuiltinId::Monopole(sign, n)));
        }
    }
}

fn tangent(log: &mut Log, max_charge: u32, seed: u64) {
    log.header("tangent");
    let dz = |a: usize, b: usize| ZForm::differential(a).wedge(&ZForm::differential(b)).expect("degree 2");
    let base = &dz(0, 2) + &dz(1, 3);
    let mut cases: Vec<(String, _, i64)> = (1..=max_charge.max(6))
        .map(|n| (format!("psi_{{-{n}}}"), monopole_ket(MonopoleSign::Minus, n), n as i64))
        .collect();
    cases.push(("psi~_{-2}".into(), tilde_ket2(), 2));
    for (name, k, factor) in cases {
        let omega = curvature_scalar(&k).expect("normalized ket");
        let expected = base.scale_const(&GaussianRational::from_int(factor));
        let r = tangent_frame_check(&omega, &expected, 200, seed);
        log.line(r.pass, format_args!("<d{name}|d{name}> = {factor}(dz0dzb0 + dz1dzb1), max diff {:.1e}", r.max_difference));
    }
    let dr = ZForm::sphere_relation_differential();
    let r = tangent_frame_check(&dr.wedge(&ZForm::differential(0)).expect("degree 2"), &ZForm::zero(), 200, seed);
    log.line(r.pass, "dr^dz0 vanishes on S3");
    let r = tangent_frame_check(&dz(0, 2), &ZForm::zero(), 200, seed);
    log.line(!r.pass, "dz0^dzb0 does not vanish on S3");
}

fn gauge(log: &mut Log, max_charge: u32, seed: u64) {
    log.header("gauge");
    let grid = SphereGrid::default();
    let mut rng = seeded_rng(seed);
    let charges: Vec<(MonopoleSign, u32)> = (1..=max_charge.clamp(1, 4))
        .flat_map(|n| [(MonopoleSign::Minus, n), (MonopoleSign::Plus, n)])
        .collect();
    for i in 0..20 {
        let (sign, n) = charges[i % charges.len()];
        let k = monopole_ket(sign, n);
        let g = random_well_conditioned(k.len(), 10.0, &mut rng);
        let want = expected_c1(BuiltinId::Monopole(sign, n)) as f64;
        let id = BuiltinId::Monopole(sign, n);
        match gauge_field(&k, &g).and_then(|f| {
            chern_number_quad(&f, &grid, Derivative::FiniteDifference { step: DEFAULT_FD_STEP })
        }) {
            Ok(r) => {
                let err = (r.c1 - want).abs();
                log.line(err < 1e-4, format_args!("c1({id}^g #{i}) = {:.9}, error {err:.1e}", r.c1));
            }
            Err(e) => log.line(false, format_args!("c1({id}^g #{i}): {e}")),
        }
    }
    for n in 1..=max_charge.clamp(1, 4) {
        let k = monopole_ket(MonopoleSign::Minus, n);
        let u = random_unitary(k.len(), &mut rng);
        match connection_invariance_check(&k, &u, 50, seed) {
            Ok(d) => log.line(d < 1e-10, format_args!("A(psi_{{-{n}}}) unchanged by unitary g, max diff {d:.1e}")),
            Err(e) => log.line(false, e),
        }
    }
}

pub fn run(suite: Suite, max_charge: u32, seed: u64) -> Outcome {
    let mut log = Log { text: String::new(), pass: true };
    let max_charge = max_charge.min(bundle_forge::bundles::MAX_CHARGE);
    let all = suite == Suite::All;
    if all || suite == Suite::Axioms {
        axioms(&mut log, max_charge);
    }
    if all || suite == Suite::Curvature {
        curvature(&mut log, max_charge);
    }
    if all || suite == Suite::Isometry {
        isometry(&mut log, seed);
    }
    if all || suite == Suite::Tangent {
        tangent(&mut log, max_charge, seed);
    }
    if all || suite == Suite::Gauge {
        gauge(&mut log, max_charge, seed);
    }
    writeln!(log.text, "verify: {}", if log.pass { "PASS" } else { "FAIL" }).unwrap();
    if log.pass {
        Outcome::Pass(log.text)
    } else {
        Outcome::Fail(log.text)
    }
}

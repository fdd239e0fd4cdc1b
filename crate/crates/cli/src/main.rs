//! `bundle-forge`: build monopole projectors, compute their Chern numbers
//! exactly or by quadrature, and run the verification suites.

mod suites;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use bundle_forge::bundles::{
    build_projector, chern_number_exact, AxiomJson, Backend, BuiltinId, BundleError, C1Value, ChernReport,
    WeightedProjector, MAX_CHARGE,
};
use bundle_forge::exact_ring::{monomial_integral, x, XPoly, X1, X2, X3};
use bundle_forge::kets::{connection_form, equivariance_type, monopole_ket, MonopoleSign};
use bundle_forge::quadbench::{
    chern_number_quad, gauge_field, monte_carlo_integral, parse_gauge_matrix, Derivative, NumericProjectorField,
    SphereGrid, DEFAULT_FD_STEP, DEFAULT_GRID, MIN_MC_SAMPLES,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bundle-forge", version, about = "Monopole projectors over the two-sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a projector.
    Build(BuildArgs),
    /// Compute a Chern number.
    Chern(ChernArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Print the connection form of a monopole ket.
    Connection(ConnectionArgs),
    /// Chern number of a gauge-transformed monopole projector.
    Gauge(GaugeArgs),
    /// Integrate a monomial over S² exactly and by Monte Carlo.
    Integrate(IntegrateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Monopole,
    Tilde,
    Normal,
    Tangent,
    Realform,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BackendArg {
    Exact,
    Quad,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Curvature,
    Isometry,
    Tangent,
    Gauge,
    All,
}

#[derive(Args, Debug)]
struct Selector {
    #[arg(long, value_enum)]
    family: Family,
    /// Ket label n of ψ_n; p_n has c1 = −n.
    #[arg(long, allow_hyphen_values = true)]
    charge: Option<i64>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    selector: Selector,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ChernArgs {
    #[command(flatten)]
    selector: Selector,
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Quadrature grid as PxA.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    /// Finite-difference derivatives in the quadrature backend.
    #[arg(long)]
    fd: bool,
    #[arg(long, default_value_t = DEFAULT_FD_STEP)]
    fd_step: f64,
    #[arg(long)]
    json: bool,
    /// Include wall time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 4)]
    max_charge: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ConnectionArgs {
    #[arg(long, allow_hyphen_values = true)]
    charge: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GaugeArgs {
    #[arg(long, allow_hyphen_values = true)]
    charge: i64,
    #[arg(long)]
    g_file: std::path::PathBuf,
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    #[arg(long, default_value_t = DEFAULT_FD_STEP)]
    fd_step: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    /// Exponents a,b,c of x1^a x2^b x3^c.
    #[arg(long, value_parser = parse_monomial)]
    monomial: [u32; 3],
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (p, a) = s.split_once(['x', 'X']).ok_or("expected PxA")?;
    let p = p.trim().parse().map_err(|_| format!("bad polar count {p:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad azimuthal count {a:?}"))?;
    Ok((p, a))
}

fn parse_monomial(s: &str) -> Result<[u32; 3], String> {
    let v: Vec<u32> =
        s.split(',').map(|t| t.trim().parse::<u32>()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    v.try_into().map_err(|_| "expected three exponents a,b,c".to_string())
}

/// Exit status plus the text written to stdout.
pub enum Outcome {
    Pass(String),
    Fail(String),
}

/// Invalid input, reported on stderr with exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn check_charge(n: i64) -> Result<(), InputError> {
    if n.unsigned_abs() > MAX_CHARGE as u64 {
        return Err(InputError(format!("charge out of range: {n} (|n| <= {MAX_CHARGE})")));
    }
    Ok(())
}

/// `ψ_n` for the ket label `n`.
fn ket_label(n: i64) -> Result<(MonopoleSign, u32), InputError> {
    check_charge(n)?;
    let sign = if n <= 0 { MonopoleSign::Minus } else { MonopoleSign::Plus };
    Ok((sign, n.unsigned_abs() as u32))
}

fn resolve(sel: &Selector) -> Result<(BuiltinId, String), InputError> {
    let id = match (sel.family, sel.charge) {
        (Family::Monopole, None) => return Err(InputError("the monopole family needs --charge".into())),
        (Family::Monopole, Some(n)) => {
            let (s, k) = ket_label(n)?;
            let id = BuiltinId::Monopole(s, k);
            return Ok((id, format!("charge {n} -> {id} (ket psi_{{{n}}}, c1 = {})", -n)));
        }
        (_, Some(_)) => return Err(InputError("--charge only applies to the monopole family".into())),
        (Family::Tilde, None) => BuiltinId::Tilde,
        (Family::Normal, None) => BuiltinId::Normal,
        (Family::Tangent, None) => BuiltinId::Tangent,
        (Family::Realform, None) => BuiltinId::TildeReal,
    };
    Ok((id, format!("family {:?} -> {id}", sel.family).to_lowercase()))
}

fn grid_of(g: Option<(usize, usize)>) -> Result<SphereGrid, InputError> {
    let (p, a) = g.unwrap_or(DEFAULT_GRID);
    Ok(SphereGrid::new(p, a)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn cmd_build(a: &BuildArgs) -> Result<Outcome, InputError> {
    let (id, mapping) = resolve(&a.selector)?;
    let p = build_projector(id)?;
    if a.json {
        return Ok(Outcome::Pass(to_json(&p.to_json())));
    }
    let mut out = String::new();
    writeln!(out, "object = {id}").unwrap();
    writeln!(out, "mapping = {mapping}").unwrap();
    let w: Vec<String> = p.weights.iter().map(ToString::to_string).collect();
    writeln!(out, "weights = [{}]", w.join(", ")).unwrap();
    writeln!(out, "p = diag(sqrt w) M diag(sqrt w), M =").unwrap();
    for i in 0..p.dim() {
        for j in 0..p.dim() {
            writeln!(out, "M[{},{}] = {}", i + 1, j + 1, p.core.get(i, j)).unwrap();
        }
    }
    Ok(Outcome::Pass(out))
}

fn exact_report(p: &WeightedProjector, object: String, mapping: Option<String>) -> (ChernReport, bool) {
    let axioms = p.verify_axioms();
    let (c1, ok) = match chern_number_exact(p) {
        Ok(c) => (C1Value::exact(&c), true),
        Err(BundleError::ChernNotReal(s) | BundleError::ChernNotInteger(s)) => (C1Value::Exact(s), false),
        Err(e) => (C1Value::Exact(e.to_string()), false),
    };
    let ok = ok && axioms.all_pass();
    (ChernReport { object, backend: Backend::Exact, c1, axioms: AxiomJson::from(&axioms), mapping, ms: None }, ok)
}

fn quad_report(
    field: &NumericProjectorField,
    grid: &SphereGrid,
    derivative: Derivative,
    object: String,
    mapping: Option<String>,
) -> Result<(ChernReport, bool), InputError> {
    let trace = field.eval(std::f64::consts::FRAC_PI_2, 0.0).trace();
    match chern_number_quad(field, grid, derivative) {
        Ok(r) => Ok((
            ChernReport {
                object,
                backend: Backend::Quad,
                c1: C1Value::Float(r.c1),
                axioms: AxiomJson { idempotent: true, hermitian: true, trace: format!("{:.12}", trace.re) },
                mapping,
                ms: None,
            },
            true,
        )),
        Err(e @ bundle_forge::quadbench::QuadError::AxiomViolation { .. }) => Ok((
            ChernReport {
                object,
                backend: Backend::Quad,
                c1: C1Value::Float(f64::NAN),
                axioms: AxiomJson { idempotent: false, hermitian: false, trace: e.to_string() },
                mapping,
                ms: None,
            },
            false,
        )),
        Err(e) => Err(e.into()),
    }
}

fn render(r: &ChernReport, json: bool) -> String {
    if json {
        to_json(r)
    } else {
        format!("{r}\n")
    }
}

fn cmd_chern(a: &ChernArgs) -> Result<Outcome, InputError> {
    let (id, mapping) = resolve(&a.selector)?;
    let start = Instant::now();
    let p = build_projector(id)?;
    let (mut report, ok) = match a.backend {
        BackendArg::Exact => exact_report(&p, id.to_string(), Some(mapping)),
        BackendArg::Quad => {
            let derivative =
                if a.fd { Derivative::FiniteDifference { step: a.fd_step } } else { Derivative::Analytic };
            let field = NumericProjectorField::from_projector(&p);
            quad_report(&field, &grid_of(a.grid)?, derivative, id.to_string(), Some(mapping))?
        }
    };
    if a.timing {
        report.ms = Some(start.elapsed().as_millis());
    }
    let text = render(&report, a.json);
    Ok(if ok { Outcome::Pass(text) } else { Outcome::Fail(text) })
}

fn cmd_connection(a: &ConnectionArgs) -> Result<Outcome, InputError> {
    let (sign, n) = ket_label(a.charge)?;
    let k = monopole_ket(sign, n);
    let form = connection_form(&k)?;
    if a.json {
        return Ok(Outcome::Pass(to_json(&form.to_json())));
    }
    let mut out = String::new();
    writeln!(out, "ket = psi_{{{}}}", a.charge).unwrap();
    writeln!(out, "type = {}", equivariance_type(&k)?).unwrap();
    writeln!(out, "A = {form}").unwrap();
    Ok(Outcome::Pass(out))
}

fn cmd_gauge(a: &GaugeArgs) -> Result<Outcome, InputError> {
    let (sign, n) = ket_label(a.charge)?;
    let text = std::fs::read_to_string(&a.g_file).map_err(|e| InputError(format!("{}: {e}", a.g_file.display())))?;
    let g = parse_gauge_matrix(&text)?;
    let field = gauge_field(&monopole_ket(sign, n), &g)?;
    let object = format!("{}^g", BuiltinId::Monopole(sign, n));
    let mapping = format!("charge {} -> {} (ket psi_{{{}}}, c1 = {})", a.charge, BuiltinId::Monopole(sign, n), a.charge, -a.charge);
    let (report, ok) = quad_report(
        &field,
        &grid_of(a.grid)?,
        Derivative::FiniteDifference { step: a.fd_step },
        object,
        Some(mapping),
    )?;
    let text = render(&report, a.json);
    Ok(if ok { Outcome::Pass(text) } else { Outcome::Fail(text) })
}

fn cmd_integrate(a: &IntegrateArgs) -> Result<Outcome, InputError> {
    if a.mc_samples < MIN_MC_SAMPLES {
        return Err(InputError(format!("--mc-samples must be at least {MIN_MC_SAMPLES}")));
    }
    let [p, q, r] = a.monomial;
    let exact = monomial_integral(p, q, r);
    let f: XPoly = x(X1).pow(p) * x(X2).pow(q) * x(X3).pow(r);
    let mc = monte_carlo_integral(&f, a.mc_samples, a.seed)?;
    let exact_f = exact.to_f64_real();
    let sigmas = if mc.std_error > 0.0 { (mc.value.re - exact_f).abs() / mc.std_error } else { 0.0 };
    if a.json {
        let v = serde_json::json!({
            "monomial": [p, q, r],
            "exact": exact.value().to_string(),
            "exact_float": exact_f,
            "mc": mc.value.re,
            "std_error": mc.std_error,
            "samples": mc.samples,
            "seed": a.seed,
        });
        return Ok(Outcome::Pass(to_json(&v)));
    }
    let mut out = String::new();
    writeln!(out, "exact = {exact} = {exact_f:.12}").unwrap();
    writeln!(out, "mc = {:.12} +- {:.3e} ({} samples, seed {})", mc.value.re, mc.std_error, mc.samples, a.seed).unwrap();
    writeln!(out, "deviation = {sigmas:.3} sigma").unwrap();
    Ok(Outcome::Pass(out))
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Chern(a) => cmd_chern(a),
        Command::Verify(a) => Ok(suites::run(a.suite, a.max_charge, a.seed)),
        Command::Connection(a) => cmd_connection(a),
        Command::Gauge(a) => cmd_gauge(a),
        Command::Integrate(a) => cmd_integrate(a),
    }
}

fn first_line(s: &str) -> &str {
    s.lines().find(|l| !l.trim().is_empty()).unwrap_or(s).trim()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", first_line(&e.to_string()));
            return ExitCode::from(2);
        }
    };
    if let Some(n) = std::env::var("BUNDLE_FORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // ignore failure if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(Outcome::Pass(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(s)) => {
            print!("{s}");
            ExitCode::from(1)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {}", first_line(&msg));
            ExitCode::from(2)
        }
    }
}

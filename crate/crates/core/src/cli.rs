//! Command-line front end. Every command writes one JSON document (or a
//! CSV table) to stdout; exit codes are 0 on success, 1 on usage errors
//! and 2 on domain errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::CrError;
use crate::figures::{curvature_scan_figure, phase_portrait, profile_figure};
use crate::orbifold_metric::{
    area, cone_angles, construct_profile, construction_report, uniqueness_cross_check, ConeData, DEFAULT_GRID,
    DEFAULT_TOL,
};
use crate::phase_plane::{
    classify_level, first_integral, fixed_points, integrate_orbit, level_roots, period_quadrature, weierstrass_reduce,
    LevelClass, PhaseParams, PhaseState,
};
use crate::reeb_flow::{classify_weights, flow, torus_gap, wrapping_from_lengths, SphereState, WeightKind, Weights};
use crate::report::{emit_svg, to_csv, to_json, Figure, Report};
use crate::sl2_model::{
    base_curvature, boundedness_probe, bracket_check, curvature_fd_oracle, curvature_scan, psi, scan_grid, BasePoint,
    DeformParam, SL2Matrix,
};
use crate::verify::run_suite;

/// Environment variable overriding the default event/return-time tolerance.
pub const TOL_ENV: &str = "CRLAB_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "crlab",
    version,
    about = "Normal CR structures on S^3: orbit invariants, cone metrics, SL(2,R) model"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format for stdout.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Also write an SVG figure to this path.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Classify a weighted Reeb flow and report its orbit invariants.
    Classify(ClassifyArgs),
    /// Level set, crossings and period of the curvature phase-plane flow.
    Phase(PhaseArgs),
    /// Construct the cone metric for wrapping numbers (q1, q2).
    Metric(MetricArgs),
    /// Curvature of the deformed SL(2,R) model.
    Sl2(Sl2Args),
    /// Run the built-in verification suite.
    Verify,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyArgs {
    /// Weight numerator; needs --q.
    #[arg(long)]
    pub p: Option<u64>,
    /// Weight denominator; needs --p.
    #[arg(long)]
    pub q: Option<u64>,
    /// Orbit-length scale c.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Irrational weight ratio b/a (declared, not inferred).
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Tag recording why --ratio is irrational.
    #[arg(long, default_value = "declared")]
    pub certificate: String,
    /// Use the golden ratio as irrational weight ratio.
    #[arg(long)]
    pub golden: bool,
    /// Number of torus samples for the density diagnostic.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct PhaseArgs {
    /// Constant in y' = c - x²/2.
    #[arg(long)]
    pub c: f64,
    /// Level of the first integral.
    #[arg(long = "F0")]
    pub f0: f64,
    /// Number of RK4 steps.
    #[arg(long, default_value_t = 20_000)]
    pub steps: usize,
    /// Integration horizon; defaults to 2.05 half periods on periodic levels, 1 otherwise.
    #[arg(long)]
    pub t_end: Option<f64>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct MetricArgs {
    /// Larger cone order; the pole angle is 2π/q1.
    #[arg(long)]
    pub q1: f64,
    /// Smaller cone order.
    #[arg(long)]
    pub q2: f64,
    /// Homothety scale.
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    /// Sampling intervals along the meridian.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Add Gauss–Bonnet, curvature and uniqueness checks.
    #[arg(long)]
    pub verify: bool,
    /// Accept non-integer cone parameters.
    #[arg(long)]
    pub real_cones: bool,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct Sl2Args {
    /// Deformation parameter; 1 is the standard structure.
    #[arg(long = "qJ")]
    pub qj: f64,
    /// Half-width of the scanned square in the orbit space.
    #[arg(long, default_value_t = 100.0)]
    pub radius: f64,
    /// Grid points per axis (odd values include the origin).
    #[arg(long, default_value_t = 201)]
    pub n: usize,
}

/// Exit code and captured streams of one CLI run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(CrError),
}

impl From<CrError> for Failure {
    fn from(e: CrError) -> Self {
        Failure::Domain(e)
    }
}

struct Output {
    report: Report,
    csv: Option<String>,
    figure: Option<Figure>,
}

/// Parses `args` (including the program name) and runs the command.
/// `tol_env` is the raw value of [`TOL_ENV`], if set.
pub fn run_args<I, T>(args: I, tol_env: Option<String>) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, tol_env),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                RunOutcome { code, stdout: text, stderr: String::new() }
            } else {
                RunOutcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cfg: &RunConfig, tol_env: Option<String>) -> RunOutcome {
    let usage = |msg: String| RunOutcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") };
    let tol = match tol_env.as_deref().map(str::parse::<f64>) {
        None => DEFAULT_TOL,
        Some(Ok(t)) if t.is_finite() && t > 0.0 => t,
        Some(_) => return usage(format!("{TOL_ENV} must be a positive number")),
    };
    let name = command_name(&cfg.command);
    let inputs = inputs_json(cfg, tol);
    let result = match &cfg.command {
        Command::Classify(a) => classify_cmd(a),
        Command::Phase(a) => phase_cmd(a),
        Command::Metric(a) => metric_cmd(a, tol),
        Command::Sl2(a) => sl2_cmd(a, cfg.seed),
        Command::Verify => verify_cmd(cfg.seed, tol),
    };
    match result {
        Err(Failure::Usage(msg)) => usage(msg),
        Err(Failure::Domain(e)) => RunOutcome {
            code: 2,
            stdout: to_json(&Report::failed(name, inputs, &e)) + "\n",
            stderr: format!("{}: {e}\n", e.name()),
        },
        Ok(out) => {
            let mut stderr = String::new();
            if let (Some(path), Some(fig)) = (&cfg.svg, &out.figure) {
                if let Err(e) = std::fs::write(path, emit_svg(fig)) {
                    return usage(format!("--svg {}: {e}", path.display()));
                }
            } else if cfg.svg.is_some() {
                stderr.push_str("note: this command has no figure; --svg ignored\n");
            }
            let mut report = out.report;
            report.inputs = inputs;
            let stdout = match (cfg.format, out.csv) {
                (OutputFormat::Csv, Some(csv)) => csv,
                (OutputFormat::Csv, None) => return usage("--format csv is not available for this command".into()),
                (OutputFormat::Json, _) => to_json(&report) + "\n",
            };
            let code = if report.status == "ok" { 0 } else { 2 };
            RunOutcome { code, stdout, stderr }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify(_) => "classify",
        Command::Phase(_) => "phase",
        Command::Metric(_) => "metric",
        Command::Sl2(_) => "sl2",
        Command::Verify => "verify",
    }
}

fn inputs_json(cfg: &RunConfig, tol: f64) -> Value {
    let mut v = match &cfg.command {
        Command::Classify(a) => json!({
            "p": a.p, "q": a.q, "scale": a.scale, "ratio": a.ratio,
            "certificate": a.certificate, "golden": a.golden, "n": a.n,
        }),
        Command::Phase(a) => json!({"c": a.c, "F0": a.f0, "steps": a.steps, "t_end": a.t_end}),
        Command::Metric(a) => json!({
            "q1": a.q1, "q2": a.q2, "l": a.l, "grid": a.grid,
            "verify": a.verify, "real_cones": a.real_cones, "tol": tol,
        }),
        Command::Sl2(a) => json!({"qJ": a.qj, "radius": a.radius, "n": a.n}),
        Command::Verify => json!({"tol": tol}),
    };
    v["seed"] = json!(cfg.seed);
    v
}

fn classify_cmd(a: &ClassifyArgs) -> Result<Output, Failure> {
    let weights = match (a.p, a.q, a.ratio, a.golden) {
        (Some(p), Some(q), None, false) => Weights::rational(p, q, a.scale)?,
        (None, None, Some(r), false) => Weights::irrational(r, a.certificate.clone())?,
        (None, None, None, true) => Weights::golden(),
        (Some(_), None, ..) => return Err(Failure::Usage("--p requires --q".into())),
        (None, Some(_), ..) => return Err(Failure::Usage("--q requires --p".into())),
        _ => return Err(Failure::Usage("give either --p/--q, --ratio or --golden".into())),
    };
    let report = classify_weights(&weights);
    let (ra, rb) = weights.rates();
    let gap = torus_gap(ra, rb, a.n);
    let mut residuals = json!({});
    let mut row = Vec::new();
    if let (WeightKind::RationalPair { p, q, c }, Some(len)) = (weights.kind(), report.lengths) {
        let recovered = wrapping_from_lengths(len.x0, len.y0, len.generic)?;
        let h = 0.5f64.sqrt();
        let start = SphereState::normalized(h.into(), num_complex::Complex64::new(0.0, h));
        let back = flow(ra, rb, len.generic, start);
        residuals = json!({
            "wrapping_recovered": [recovered.0, recovered.1],
            "generic_return": (back.x - start.x).norm().max((back.y - start.y).norm()),
        });
        row = vec![*p as f64, *q as f64, *c, len.x0, len.y0, len.generic, gap];
    }
    let outputs = json!({
        "class": report.class,
        "lengths": report.lengths.map(|l| [l.x0, l.y0, l.generic]),
        "wrapping": report.wrapping.map(|(p, q)| [p, q]),
        "rates": [ra, rb],
        "torus_gap": gap,
    });
    let csv = if row.is_empty() {
        to_csv(&["ratio", "torus_gap"], [vec![rb / ra, gap]])
    } else {
        to_csv(&["p", "q", "scale", "len_x0", "len_y0", "len_generic", "torus_gap"], [row])
    };
    Ok(Output { report: Report::ok("classify", Value::Null, outputs, residuals), csv: Some(csv), figure: None })
}

fn level_name(c: &LevelClass) -> &'static str {
    match c {
        LevelClass::SingleLine => "SingleLine",
        LevelClass::CircleAndLine => "CircleAndLine",
        LevelClass::PointAndLine { .. } => "PointAndLine",
        LevelClass::NodalCubic { .. } => "NodalCubic",
        LevelClass::FixedPointOnly => "FixedPointOnly",
    }
}

fn phase_cmd(a: &PhaseArgs) -> Result<Output, Failure> {
    if a.steps == 0 {
        return Err(Failure::Usage("--steps must be positive".into()));
    }
    let p = PhaseParams::new(a.c)?;
    let level = classify_level(p, a.f0);
    let (wp, wq) = weierstrass_reduce(p, a.f0);
    let mut outputs = json!({
        "level": level_name(&level.class),
        "roots": level.roots,
        "fixed_points": fixed_points(p).iter().map(|s| [s.x, s.y]).collect::<Vec<_>>(),
        "weierstrass": [wp, wq],
    });
    let mut residuals = json!({});

    let (start, t_end, tau) = match level.class {
        LevelClass::CircleAndLine => {
            let [_, s1, s2] = level_roots(p, a.f0)?;
            let tau = period_quadrature(p, a.f0)?;
            outputs["crossings"] = json!([s1, s2]);
            outputs["half_period_quadrature"] = json!(tau);
            let s = p.s().unwrap_or(0.0);
            residuals["pole_relation"] = json!((s1 * s1 + s1 * s2 + s2 * s2 - 3.0 * s * s).abs());
            (PhaseState::new(s1, 0.0), a.t_end.unwrap_or(2.05 * tau), Some(tau))
        }
        LevelClass::PointAndLine { point } => (point, a.t_end.unwrap_or(1.0), None),
        LevelClass::NodalCubic { node } => (node, a.t_end.unwrap_or(1.0), None),
        LevelClass::FixedPointOnly => (PhaseState::new(0.0, 0.0), a.t_end.unwrap_or(1.0), None),
        LevelClass::SingleLine => {
            let x = *level.roots.last().expect("a cubic has a real root");
            (PhaseState::new(x, 0.0), a.t_end.unwrap_or(1.0), None)
        }
    };
    let orbit = integrate_orbit(p, start, t_end, t_end / a.steps as f64)?;
    outputs["half_period_rk4"] = json!(orbit.half_period);
    outputs["samples"] = json!(orbit.samples.len());
    residuals["f_drift"] = json!(orbit.f_drift);
    if let (Some(tau), Some(rk)) = (tau, orbit.half_period) {
        residuals["period_relative_difference"] = json!(((rk - tau) / tau).abs());
    }
    let weier = orbit
        .samples
        .iter()
        .map(|(_, s)| {
            let z = -s.x / 3.0;
            let dz = -s.y / 3.0;
            (dz * dz - z * z * z - wp * z - wq).abs()
        })
        .fold(0.0, f64::max);
    residuals["weierstrass"] = json!(weier);

    let csv =
        to_csv(&["t", "x", "y", "F"], orbit.samples.iter().map(|(t, s)| vec![*t, s.x, s.y, first_integral(p, *s)]));
    let figure = phase_portrait(p, Some(&orbit));
    Ok(Output { report: Report::ok("phase", Value::Null, outputs, residuals), csv: Some(csv), figure: Some(figure) })
}

fn metric_cmd(a: &MetricArgs, tol: f64) -> Result<Output, Failure> {
    let cone = if a.real_cones {
        ConeData::with_real_cones(a.q1, a.q2, a.l)?
    } else {
        let as_int = |flag: &str, v: f64| {
            if v.fract() == 0.0 && v >= 0.0 && v <= u32::MAX as f64 {
                Ok(v as u32)
            } else {
                Err(Failure::Usage(format!("--{flag} must be a positive integer (or pass --real-cones)")))
            }
        };
        ConeData::new(as_int("q1", a.q1)?, as_int("q2", a.q2)?, a.l)?
    };
    let prof = construct_profile(&cone, a.grid, tol)?;
    let angles = cone_angles(&prof);
    let s = prof.s;
    let outputs = json!({
        "s": s,
        "s1": prof.s1,
        "s2": prof.s2,
        "c": 0.5 * s * s,
        "tau": prof.tau,
        "cone_angles": [angles.0, angles.1],
        "r_prime_poles": [prof.r_prime_poles.0, prof.r_prime_poles.1],
        "n_grid": prof.samples.len() - 1,
    });
    let mut residuals = json!({
        "pole_relation": (prof.s1 * prof.s1 + prof.s1 * prof.s2 + prof.s2 * prof.s2 - 3.0 * s * s).abs(),
    });
    if a.verify {
        let rep = construction_report(&prof);
        let tau = std::f64::consts::TAU;
        residuals["gauss_bonnet"] = json!(rep.gauss_bonnet);
        residuals["gauss_bonnet_target"] = json!(1.0 / cone.q1 + 1.0 / cone.q2);
        residuals["area"] = json!(area(&prof));
        residuals["area_target"] = json!(tau * (prof.s2 - prof.s1) / cone.l);
        residuals["cone_angle_relative"] = json!((((angles.0 - tau / cone.q1) / (tau / cone.q1)).abs())
            .max(((angles.1 - tau / cone.q2) / (tau / cone.q2)).abs()));
        residuals["curvature_residual"] = json!(rep.curvature_residual);
        residuals["killing_residual"] = json!(rep.killing_residual);
        residuals["uniqueness"] = json!(uniqueness_cross_check(&cone)?);
    }
    let csv = to_csv(&["t", "k", "r", "r_prime"], prof.samples.iter().map(|p| vec![p.t, p.k, p.r, p.r_prime]));
    let figure = profile_figure(&prof);
    Ok(Output { report: Report::ok("metric", Value::Null, outputs, residuals), csv: Some(csv), figure: Some(figure) })
}

fn sl2_cmd(a: &Sl2Args, seed: u64) -> Result<Output, Failure> {
    use rand::SeedableRng;
    if !(a.radius.is_finite() && a.radius > 0.0) {
        return Err(Failure::Usage("--radius must be positive".into()));
    }
    let d = DeformParam::new(a.qj)?;
    let probe = boundedness_probe(d, a.radius, a.n);
    let origin = BasePoint::new(0.0, 0.0);
    let oracle = scan_grid(2.0, 10)
        .into_iter()
        .map(|z| {
            let k = base_curvature(d, z);
            (curvature_fd_oracle(d, z, 1e-3) - k).abs() / k.abs().max(1.0)
        })
        .fold(0.0, f64::max);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let psi_norm = (0..100).map(|_| (psi(&SL2Matrix::random(&mut rng)).norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
    let brackets = bracket_check();
    let outputs = json!({
        "sup_abs": probe.sup_abs,
        "argmax": [probe.argmax.u, probe.argmax.v],
        "curvature_at_origin": base_curvature(d, origin),
        "growth_rate_bound": (1.0 / (a.qj * a.qj) - a.qj * a.qj).abs() * 6.0 * (1.0 + 4.0 * a.radius * a.radius).sqrt(),
    });
    let residuals = json!({
        "oracle_relative": oracle,
        "psi_unit_norm": psi_norm,
        "matrix_brackets_exact": brackets.matrix_exact(),
        "field_brackets": brackets.field_max_residual(),
    });
    let csv = to_csv(&["u", "v", "K"], curvature_scan(d, a.radius, a.n).into_iter().map(|(z, k)| vec![z.u, z.v, k]));
    let figure = curvature_scan_figure(d, a.radius, a.n);
    Ok(Output { report: Report::ok("sl2", Value::Null, outputs, residuals), csv: Some(csv), figure: Some(figure) })
}

fn verify_cmd(seed: u64, tol: f64) -> Result<Output, Failure> {
    let rep = run_suite(seed, tol)?;
    let mut report = Report::ok("verify", Value::Null, json!({"checks": rep.checks}), json!({}));
    if !rep.all_pass() {
        report.status = "fail".into();
    }
    let mut csv = String::from("check,value,threshold,pass\n");
    for c in &rep.checks {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            c.name,
            crate::report::fmt_f64(c.value),
            crate::report::fmt_f64(c.threshold),
            c.pass
        ));
    }
    Ok(Output { report, csv: Some(csv), figure: None })
}

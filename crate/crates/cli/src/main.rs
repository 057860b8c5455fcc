//! `taille`: batch front end for surfaces, the geometric cocycle, phase
//! traces, the worked experiments and finite cohomology reports.
//!
//! Exit codes: 0 success, 2 when a requested value is undefined or a zero
//! product (the report is still written), 3 on invalid input.

mod output;

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use taille_core::cohomology::{
    coherent_deform, is_cocycle, mod_taille_triviality, solve_coboundary_real, AdditiveModTaille, AdditiveReal,
    Cochain, CoboundarySolution, FiniteSemigroup, ModTailleOutcome, MultiplicativeReal, Semigroup,
};
use taille_core::deformation::{deflection_trace, weight_function, CocycleEval, GeometricCocycle, Parameter};
use taille_core::experiments::{
    bohr_check, build_triangulated_sphere, debroglie, nontriviality_report, phase_plane_circle, sphere_experiment,
    DeBroglieConfig, ExperimentError, SphereConfig,
};
use taille_core::geom::{Integrator, Surface};
use taille_core::paths::{Path, PathSpec};

use output::Output;

const EXIT_UNDEFINED: u8 = 2;
const EXIT_INVALID: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "taille", version, about = "Geometric phase cocycles on path semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Describe a surface and its taille.
    Surface(SurfaceArgs),
    /// Evaluate ω̃ on two paths (and the cocycle residual with a third).
    Cocycle(CocycleArgs),
    /// Phase and weight trace along a path, or the deflection trace after
    /// a first path.
    Trace(TraceArgs),
    /// Wavelength of the deflection weight on the phase plane.
    Debroglie(DebroglieArgs),
    /// Quantization test for a closed orbit in the phase plane.
    Bohr(BohrArgs),
    /// Meridian-then-equator run on the unit sphere.
    SphereExp(SphereArgs),
    /// Cohomology report for a triangulated sphere or a finite semigroup.
    Cohom(CohomArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum SurfaceName {
    Plane,
    Sphere,
    PhasePlane,
    Torus,
}

#[derive(Debug, Clone, Args, Serialize)]
struct SurfaceArgs {
    #[arg(long, value_enum, default_value = "sphere")]
    surface: SurfaceName,
    /// Planck constant for the phase plane (taille h/2).
    #[arg(long, default_value_t = 1.0)]
    h: f64,
    /// Torus periods.
    #[arg(long, default_value_t = 1.0)]
    lx: f64,
    #[arg(long, default_value_t = 1.0)]
    ly: f64,
    /// Multiplier on the area form.
    #[arg(long, default_value_t = 1.0)]
    form_scale: f64,
}

impl SurfaceArgs {
    fn build(&self) -> Result<Surface> {
        let s = match self.surface {
            SurfaceName::Plane => Surface::euclidean_plane(),
            SurfaceName::Sphere => Surface::unit_sphere(),
            SurfaceName::PhasePlane => Surface::phase_plane(self.h)?,
            SurfaceName::Torus => Surface::flat_torus(self.lx, self.ly)?,
        };
        Ok(if self.form_scale == 1.0 { s } else { s.with_form_scale(self.form_scale)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Method {
    Quadrature,
    Exact,
}

#[derive(Debug, Clone, Args, Serialize)]
struct IntegratorArgs {
    /// Romberg quadrature over the filling, or closed-form cone triangles.
    #[arg(long, value_enum, default_value = "quadrature")]
    method: Method,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

impl IntegratorArgs {
    fn build(&self) -> Result<Integrator> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            bail!("--tol must be positive");
        }
        Ok(match self.method {
            Method::Quadrature => Integrator::Quadrature { tol: self.tol },
            Method::Exact => Integrator::Exact,
        })
    }
}

#[derive(Debug, Clone, Args, Serialize)]
struct ParameterArgs {
    /// Quantum number (positive taille).
    #[arg(long, default_value_t = 1, conflicts_with = "lambda")]
    n: i64,
    /// Real parameter λ (zero taille).
    #[arg(long)]
    lambda: Option<f64>,
}

impl ParameterArgs {
    fn build(&self, surface: &Surface) -> Parameter {
        match self.lambda {
            Some(l) => Parameter::Lambda(l),
            None if surface.taille() == 0.0 => Parameter::Lambda(1.0),
            None => Parameter::Quantum(self.n),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
struct OutArgs {
    /// CSV output file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report file (also printed to stdout).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
struct CocycleArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    path_a: PathBuf,
    #[arg(long)]
    path_b: PathBuf,
    /// Optional third path for the cocycle residual.
    #[arg(long)]
    path_c: Option<PathBuf>,
    #[command(flatten)]
    parameter: ParameterArgs,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct TraceArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    path: PathBuf,
    /// First path; when given, the deflection trace of `--path` after it.
    #[arg(long)]
    after: Option<PathBuf>,
    /// Evenly spaced samples over the path length.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[command(flatten)]
    parameter: ParameterArgs,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct DebroglieArgs {
    #[arg(long, default_value_t = 1.0)]
    h: f64,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long, default_value_t = 2.0)]
    xmax: f64,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct BohrArgs {
    /// Planck constant; the default 2π gives taille π.
    #[arg(long, default_value_t = 2.0 * PI)]
    h: f64,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 0.0)]
    q0: f64,
    #[arg(long, default_value_t = 0.0)]
    p0: f64,
    #[arg(long, default_value_t = 1)]
    n: i64,
    /// Chords approximating the circle.
    #[arg(long, default_value_t = 1 << 18)]
    segments: usize,
    /// Integer-closeness tolerance.
    #[arg(long, default_value_t = 1e-9)]
    quant_tol: f64,
    /// A closed path (JSON) to test instead of a circle.
    #[arg(long)]
    path: Option<PathBuf>,
    /// Romberg quadrature or closed-form cone triangles.
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct SphereArgs {
    /// Starting colatitude in degrees.
    #[arg(long, default_value_t = 0.0)]
    theta0: f64,
    #[arg(long, default_value_t = 1)]
    n: i64,
    /// Samples per circuit of the equator.
    #[arg(long, default_value_t = 360)]
    samples: usize,
    #[arg(long, default_value_t = 2)]
    circuits: usize,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Complex {
    Icosa,
}

#[derive(Debug, Clone, Args, Serialize)]
struct CohomArgs {
    /// Built-in complex.
    #[arg(long, value_enum, conflicts_with = "table")]
    complex: Option<Complex>,
    #[arg(long, default_value_t = 1)]
    level: u32,
    #[arg(long, default_value_t = 1)]
    n: i64,
    /// Multiplication table file (`n zero` header, then n rows).
    #[arg(long, requires = "cochain")]
    table: Option<PathBuf>,
    /// Cochain JSON file for `--table`.
    #[arg(long, requires = "table")]
    cochain: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "quadrature")]
    method: Method,
    /// Quadrature tolerance for ω̃.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Tolerance for cocycle and coboundary decisions.
    #[arg(long, default_value_t = 1e-8)]
    solve_tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

/// Cochain file for `cohom --table`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CochainFile {
    /// `real`, `mod_taille` or `multiplicative`.
    group: String,
    #[serde(default)]
    taille: Option<f64>,
    arity: usize,
    entries: Vec<(Vec<usize>, f64)>,
}

/// Outcome of a subcommand: the report and whether a requested value was
/// undefined.
struct Finished {
    report: Value,
    undefined: bool,
}

fn ok(report: Value) -> Result<Finished> {
    Ok(Finished {
        report,
        undefined: false,
    })
}

fn read_path(file: &PathBuf, surface: Surface) -> Result<Path> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    PathSpec::parse(&text, Some(surface)).with_context(|| format!("parsing {}", file.display()))
}

fn eval_json(cx: &GeometricCocycle, e: CocycleEval) -> (Value, bool) {
    match e {
        CocycleEval::Defined { value, real } => {
            let w = cx.weight(real);
            (
                json!({"status": "defined", "value": value.value(), "real": real, "taille": value.taille(),
                       "w_re": w.re, "w_im": w.im}),
                false,
            )
        }
        CocycleEval::Zero => (json!({"status": "zero", "taille": cx.taille()}), true),
        CocycleEval::Undefined(reason) => (
            json!({"status": "undefined", "reason": reason, "taille": cx.taille()}),
            true,
        ),
    }
}

fn run_surface(args: &SurfaceArgs) -> Result<Finished> {
    let s = args.build()?;
    ok(json!({
        "command": "surface",
        "config": args,
        "result": {"surface": s, "name": s.name(), "taille": s.taille(), "periods": s.periods()},
    }))
}

fn run_cocycle(args: &CocycleArgs) -> Result<Finished> {
    let s = args.surface.build()?;
    let cx = GeometricCocycle::new(s, args.parameter.build(&s), args.integrator.build()?)?;
    let a = read_path(&args.path_a, s)?;
    let b = read_path(&args.path_b, s)?;
    let (mut result, undefined) = eval_json(&cx, cx.omega_tilde(&a, &b)?);
    if let Some(c) = &args.path_c {
        let c = read_path(c, s)?;
        result["cocycle_residual"] = json!(cx.cocycle_residual(&a, &b, &c)?);
    }
    Ok(Finished {
        report: json!({"command": "cocycle", "config": args, "result": result}),
        undefined,
    })
}

fn run_trace(args: &TraceArgs, out: &Output) -> Result<Finished> {
    let s = args.surface.build()?;
    let cx = GeometricCocycle::new(s, args.parameter.build(&s), args.integrator.build()?)?;
    let g = read_path(&args.path, s)?;
    if args.samples < 2 {
        bail!("--samples must be at least 2");
    }
    let xs: Vec<f64> = (0..args.samples)
        .map(|i| g.length() * i as f64 / (args.samples - 1) as f64)
        .collect();
    let trace = match &args.after {
        Some(first) => deflection_trace(&cx, &read_path(first, s)?, &g, &xs)?,
        None => weight_function(&cx, &g, &xs)?,
    };
    let csv_file = out.write_csv("trace", &trace.to_csv()?)?;
    let defined = trace.samples.iter().filter(|t| t.is_defined()).count();
    ok(json!({
        "command": "trace",
        "config": args,
        "result": {"samples": trace.samples.len(), "defined": defined, "taille": trace.taille, "csv": csv_file},
    }))
}

fn run_debroglie(args: &DebroglieArgs, out: &Output) -> Result<Finished> {
    let config = DeBroglieConfig {
        h: args.h,
        p: args.p,
        x_max: args.xmax,
        samples: args.samples,
        integrator: args.integrator.build()?,
    };
    match debroglie(config) {
        Ok(r) => {
            let csv_file = out.write_csv("debroglie", &r.trace.to_csv()?)?;
            ok(json!({
                "command": "debroglie",
                "config": args,
                "result": {
                    "status": "ok",
                    "wavelength": r.wavelength_estimate,
                    "closed_form": r.wavelength_closed_form,
                    "wraps": r.wraps,
                    "csv": csv_file,
                },
            }))
        }
        Err(ExperimentError::InsufficientSamples { wraps }) => Ok(Finished {
            report: json!({
                "command": "debroglie",
                "config": args,
                "result": {"status": "insufficient_samples", "wraps": wraps, "closed_form": args.h / args.p},
            }),
            undefined: true,
        }),
        Err(e) => Err(e.into()),
    }
}

fn run_bohr(args: &BohrArgs) -> Result<Finished> {
    let s = Surface::phase_plane(args.h)?;
    let integrator = IntegratorArgs {
        method: args.method,
        tol: args.tol,
    }
    .build()?;
    let path = match &args.path {
        Some(f) => read_path(f, s)?,
        None => phase_plane_circle(s, [args.q0, args.p0], args.r, args.segments, 0.0, true)?,
    };
    let r = bohr_check(&s, &path, args.n, args.quant_tol, integrator)?;
    ok(json!({"command": "bohr", "config": args, "result": r}))
}

fn run_sphere(args: &SphereArgs, out: &Output) -> Result<Finished> {
    let integrator = IntegratorArgs {
        method: args.method,
        tol: args.tol,
    }
    .build()?;
    let r = sphere_experiment(SphereConfig {
        theta0_deg: args.theta0,
        n: args.n,
        samples_per_circuit: args.samples,
        circuits: args.circuits,
        integrator,
    })?;
    let csv_file = out.write_csv("sphere", &r.trace.to_csv()?)?;
    let mut result = serde_json::to_value(&r)?;
    if let Some(obj) = result.as_object_mut() {
        obj.remove("trace");
        obj.remove("config");
        obj.insert("csv".into(), json!(csv_file));
    }
    ok(json!({"command": "sphere-exp", "config": args, "result": result}))
}

fn run_cohom(args: &CohomArgs) -> Result<Finished> {
    match (&args.complex, &args.table, &args.cochain) {
        (Some(Complex::Icosa), None, None) => {
            let integrator = IntegratorArgs {
                method: args.method,
                tol: args.tol,
            }
            .build()?;
            let ts = build_triangulated_sphere(args.level)?;
            let r = nontriviality_report(&ts, args.n, integrator, args.solve_tol)?;
            let summary = json!({
                "vertices": ts.vertices.len(),
                "edges": ts.edges.len(),
                "faces": ts.faces.len(),
                "euler_characteristic": ts.euler_characteristic(),
                "total_area": ts.total_area(),
            });
            ok(json!({"command": "cohom", "config": args, "complex": summary, "result": r}))
        }
        (None, Some(table), Some(cochain)) => {
            let text = fs::read_to_string(table).with_context(|| format!("reading {}", table.display()))?;
            let s = FiniteSemigroup::parse(&text)?;
            let text = fs::read_to_string(cochain).with_context(|| format!("reading {}", cochain.display()))?;
            let file: CochainFile = serde_json::from_str(&text).context("parsing cochain")?;
            let entries = file.entries.into_iter();
            let tol = args.solve_tol;
            let result = match file.group.as_str() {
                "real" => {
                    let f = Cochain::from_entries(&s, file.arity, AdditiveReal, entries)?;
                    let check = is_cocycle(&s, &f, tol)?;
                    let solution = if check.is_cocycle && f.arity() >= 2 {
                        match solve_coboundary_real(&s, &f, tol)? {
                            CoboundarySolution::Trivial { g, residual } => json!({
                                "coboundary": true,
                                "residual": residual,
                                "g": g.entries().map(|(t, v)| (t.clone(), *v)).collect::<Vec<_>>(),
                            }),
                            CoboundarySolution::NotTrivial { residual_max, residual_l2 } => json!({
                                "coboundary": false, "residual_max": residual_max, "residual_l2": residual_l2,
                            }),
                        }
                    } else {
                        Value::Null
                    };
                    json!({"is_cocycle": check.is_cocycle, "max_residual": check.max_residual, "solution": solution})
                }
                "mod_taille" => {
                    let tau = file.taille.context("mod_taille cochains need a taille")?;
                    let f = Cochain::from_entries(&s, file.arity, AdditiveModTaille::new(tau)?, entries)?;
                    let check = is_cocycle(&s, &f, tol)?;
                    let outcome = if check.is_cocycle && f.arity() == 2 {
                        match mod_taille_triviality(&s, &f, &[], tol)? {
                            ModTailleOutcome::Trivial { residual, .. } => {
                                json!({"outcome": "trivial", "residual": residual})
                            }
                            ModTailleOutcome::NotTrivial { witness, pairing } => {
                                json!({"outcome": "not_trivial", "witness": witness, "pairing": pairing})
                            }
                            ModTailleOutcome::Undecided { reason } => json!({"outcome": "undecided", "reason": reason}),
                        }
                    } else {
                        Value::Null
                    };
                    json!({"is_cocycle": check.is_cocycle, "max_residual": check.max_residual, "solution": outcome})
                }
                "multiplicative" => {
                    let f = Cochain::from_entries(&s, file.arity, MultiplicativeReal, entries)?;
                    let check = is_cocycle(&s, &f, tol)?;
                    let defect = if check.is_cocycle && f.arity() == 2 {
                        json!(coherent_deform(&s, f, tol)?.associativity_defect())
                    } else {
                        Value::Null
                    };
                    json!({"is_cocycle": check.is_cocycle, "max_residual": check.max_residual,
                           "associativity_defect": defect})
                }
                other => bail!("unknown cochain group {other:?}"),
            };
            ok(json!({"command": "cohom", "config": args, "semigroup_order": s.order(), "result": result}))
        }
        _ => bail!("cohom needs either --complex or both --table and --cochain"),
    }
}

fn run(cli: &Cli) -> Result<Finished> {
    let (name, out) = match &cli.command {
        Command::Surface(_) => ("surface", None),
        Command::Cocycle(a) => ("cocycle", Some(&a.out)),
        Command::Trace(a) => ("trace", Some(&a.out)),
        Command::Debroglie(a) => ("debroglie", Some(&a.out)),
        Command::Bohr(a) => ("bohr", Some(&a.out)),
        Command::SphereExp(a) => ("sphere-exp", Some(&a.out)),
        Command::Cohom(a) => ("cohom", Some(&a.out)),
    };
    let out = Output::new(name, out.cloned());
    let finished = match &cli.command {
        Command::Surface(a) => run_surface(a),
        Command::Cocycle(a) => run_cocycle(a),
        Command::Trace(a) => run_trace(a, &out),
        Command::Debroglie(a) => run_debroglie(a, &out),
        Command::Bohr(a) => run_bohr(a),
        Command::SphereExp(a) => run_sphere(a, &out),
        Command::Cohom(a) => run_cohom(a),
    }?;
    out.write_report(&finished.report)?;
    Ok(finished)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(f) if f.undefined => ExitCode::from(EXIT_UNDEFINED),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

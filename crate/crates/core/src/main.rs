use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use innerdisk::boundary::{self, Extrapolation, RhoLadder};
use innerdisk::catalog::{Catalog, RealFunctionSpec};
use innerdisk::chain::{ChainPosition, DEFAULT_MAX_OFFSET};
use innerdisk::classify;
use innerdisk::error::{Error, Result};
use innerdisk::format::CoefficientFile;
use innerdisk::fourier::{compute_coefficients, verify_bounds, FourierCoefficients};
use innerdisk::inner::{from_fourier, DiskPoint, TaylorCoefficients};
use innerdisk::piecewise::PiecewiseFunctionFile;
use innerdisk::quad::QuadConfig;

#[derive(Parser)]
#[command(
    name = "innerdisk",
    version,
    about = "Fourier-Taylor correspondence on the unit disk",
    long_about = None
)]
struct Cli {
    /// Key=value config file overriding built-in defaults
    /// (abs_tol, rel_tol, max_panels, n, ladder_lo, ladder_hi,
    /// threshold, max_steps, guard_tol). Flags override config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog entries as a JSON array.
    List,
    /// Compute Fourier coefficients and emit the coefficient JSON.
    Coeffs(CoeffsArgs),
    /// Evaluate the truncated series at one disk point.
    Eval(EvalArgs),
    /// Emit the coefficients of the conjugate function -i w.
    Conjugate(CommonArgs),
    /// Recover the boundary value at one theta along a rho ladder.
    /// CSV columns: theta,rho,u (one row per rung).
    Recover(RecoverArgs),
    /// Walk the integral-differential chain and emit the link's
    /// coefficients.
    Chain(ChainArgs),
    /// Classify the boundary point at theta as a JSON report.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Catalog entry name.
    #[arg(long)]
    function: Option<String>,
    /// Piecewise polynomial definition file (JSON).
    #[arg(long)]
    function_file: Option<PathBuf>,
    /// Precomputed coefficient file (JSON, Fourier or Taylor form).
    #[arg(long)]
    coeffs_file: Option<PathBuf>,
    /// Truncation order N.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CoeffsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also check the 2M coefficient bounds and include the report.
    #[arg(long)]
    verify: bool,
    /// Write the JSON to this path as well as stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    rho: f64,
    #[arg(long)]
    theta: f64,
}

#[derive(Args)]
struct RecoverArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    theta: f64,
    /// Ladder rungs are rho_j = 1 - 2^-j for j = lo..=hi.
    #[arg(long)]
    ladder_lo: Option<u32>,
    #[arg(long)]
    ladder_hi: Option<u32>,
    /// Disable Richardson extrapolation.
    #[arg(long)]
    no_richardson: bool,
    /// Convergence threshold on the last successive difference.
    #[arg(long)]
    threshold: Option<f64>,
    /// Write the per-rung CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Signed walk: positive = angular derivatives, negative =
    /// angular primitives.
    #[arg(long, allow_hyphen_values = true)]
    steps: i64,
    #[arg(long)]
    max_offset: Option<i64>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    theta: f64,
    #[arg(long)]
    ladder_lo: Option<u32>,
    #[arg(long)]
    ladder_hi: Option<u32>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    guard_tol: Option<f64>,
}

/// Defaults, overridden by the config file, overridden by flags.
struct Settings {
    quad: QuadConfig,
    n: usize,
    classify_n: usize,
    ladder_lo: u32,
    ladder_hi: u32,
    classify_ladder_lo: u32,
    classify_ladder_hi: u32,
    threshold: f64,
    max_steps: usize,
    guard_tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            quad: QuadConfig::default(),
            n: 64,
            classify_n: 4096,
            ladder_lo: 4,
            ladder_hi: 14,
            classify_ladder_lo: 3,
            classify_ladder_hi: 8,
            threshold: boundary::DEFAULT_CONVERGENCE_THRESHOLD,
            max_steps: classify::DEFAULT_MAX_STEPS,
            guard_tol: classify::DEFAULT_GUARD_TOL,
        }
    }
}

impl Settings {
    fn load(config: Option<&Path>) -> Result<Settings> {
        let mut s = Settings::default();
        let Some(path) = config else { return Ok(s) };
        let text = std::fs::read_to_string(path)?;
        let mut kv = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "config line {}: expected key=value",
                    lineno + 1
                ))
            })?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let parse_f64 = |kv: &HashMap<String, String>, key: &str, dst: &mut f64| -> Result<()> {
            if let Some(v) = kv.get(key) {
                *dst = v.parse().map_err(|_| {
                    Error::InvalidArgument(format!("config {key}: bad float '{v}'"))
                })?;
            }
            Ok(())
        };
        let parse_usize =
            |kv: &HashMap<String, String>, key: &str, dst: &mut usize| -> Result<()> {
                if let Some(v) = kv.get(key) {
                    *dst = v.parse().map_err(|_| {
                        Error::InvalidArgument(format!("config {key}: bad integer '{v}'"))
                    })?;
                }
                Ok(())
            };
        parse_f64(&kv, "abs_tol", &mut s.quad.abs_tol)?;
        parse_f64(&kv, "rel_tol", &mut s.quad.rel_tol)?;
        parse_usize(&kv, "max_panels", &mut s.quad.max_panels)?;
        parse_usize(&kv, "n", &mut s.n)?;
        parse_usize(&kv, "classify_n", &mut s.classify_n)?;
        parse_f64(&kv, "threshold", &mut s.threshold)?;
        parse_usize(&kv, "max_steps", &mut s.max_steps)?;
        parse_f64(&kv, "guard_tol", &mut s.guard_tol)?;
        let mut lo = s.ladder_lo as usize;
        let mut hi = s.ladder_hi as usize;
        parse_usize(&kv, "ladder_lo", &mut lo)?;
        parse_usize(&kv, "ladder_hi", &mut hi)?;
        s.ladder_lo = lo as u32;
        s.ladder_hi = hi as u32;
        Ok(s)
    }
}

enum Resolved {
    /// A real-function source plus its computed coefficients.
    FromFunction {
        name: String,
        spec: RealFunctionSpec,
        fc: FourierCoefficients,
    },
    /// A coefficient file taken at face value.
    FromFile { name: String, file: CoefficientFile },
}

impl Resolved {
    fn name(&self) -> &str {
        match self {
            Resolved::FromFunction { name, .. } => name,
            Resolved::FromFile { name, .. } => name,
        }
    }

    fn taylor(&self) -> TaylorCoefficients {
        match self {
            Resolved::FromFunction { name, fc, .. } => {
                let mut tc = from_fourier(fc);
                tc.provenance = format!("fourier({name})");
                tc
            }
            Resolved::FromFile { file, .. } => file.taylor(),
        }
    }

    fn fourier(&self) -> FourierCoefficients {
        match self {
            Resolved::FromFunction { fc, .. } => fc.clone(),
            Resolved::FromFile { file, .. } => file.fourier(),
        }
    }
}

fn resolve(common: &CommonArgs, settings: &Settings, default_n: usize) -> Result<Resolved> {
    let n = common.n.unwrap_or(default_n);
    let sources = [
        common.function.is_some(),
        common.function_file.is_some(),
        common.coeffs_file.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if sources != 1 {
        return Err(Error::InvalidArgument(
            "exactly one of --function, --function-file, --coeffs-file is required".into(),
        ));
    }
    if let Some(path) = &common.coeffs_file {
        let file = CoefficientFile::read(path)?;
        return Ok(Resolved::FromFile {
            name: file.name.clone(),
            file,
        });
    }
    let spec = if let Some(name) = &common.function {
        Catalog::builtin().get(name)?.clone()
    } else {
        let path = common.function_file.as_ref().unwrap();
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("user_function");
        PiecewiseFunctionFile::read(path)?.into_spec(stem)?
    };
    let fc = compute_coefficients(&spec, n, &settings.quad)?;
    Ok(Resolved::FromFunction {
        name: spec.name.clone(),
        spec,
        fc,
    })
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let settings = Settings::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::List => {
            let list = Catalog::builtin().list();
            print_json(&serde_json::to_value(&list)?)
        }
        Cmd::Coeffs(args) => {
            let resolved = resolve(&args.common, &settings, settings.n)?;
            let mut value = match &resolved {
                Resolved::FromFunction { name, fc, .. } => {
                    serde_json::to_value(CoefficientFile::from_fourier(name, fc))?
                }
                Resolved::FromFile { file, .. } => serde_json::to_value(file)?,
            };
            if args.verify {
                let report = verify_bounds(&resolved.fourier());
                value["bound_report"] = json!({
                    "max_alpha_ratio": report.max_alpha_ratio,
                    "max_beta_ratio": report.max_beta_ratio,
                    "violation": report.violation,
                });
            }
            if let Some(path) = &args.output {
                std::fs::write(path, serde_json::to_string_pretty(&value)?)?;
            }
            print_json(&value)
        }
        Cmd::Eval(args) => {
            let resolved = resolve(&args.common, &settings, settings.n)?;
            let tc = resolved.taylor();
            let p = DiskPoint::new(args.rho, args.theta)?;
            let w = tc.evaluate(&p);
            print_json(&json!({
                "name": resolved.name(),
                "rho": args.rho,
                "theta": args.theta,
                "u": w.re,
                "v": w.im,
            }))
        }
        Cmd::Conjugate(common) => {
            let resolved = resolve(&common, &settings, settings.n)?;
            let conj = resolved.taylor().conjugate();
            let file = CoefficientFile::from_taylor(resolved.name(), &conj);
            print_json(&serde_json::to_value(file)?)
        }
        Cmd::Recover(args) => {
            let resolved = resolve(&args.common, &settings, settings.n)?;
            let lo = args.ladder_lo.unwrap_or(settings.ladder_lo);
            let hi = args.ladder_hi.unwrap_or(settings.ladder_hi);
            let extrap = if args.no_richardson {
                Extrapolation::None
            } else {
                Extrapolation::Richardson
            };
            let ladder = RhoLadder::geometric(lo, hi, extrap)?;
            let threshold = args.threshold.unwrap_or(settings.threshold);
            let tc = resolved.taylor();
            let result = boundary::radial_recover(&tc, args.theta, &ladder, threshold)?;

            let mut csv = String::from("theta,rho,u\n");
            for &(rho, u) in &result.estimates {
                csv.push_str(&format!("{},{},{}\n", result.theta, rho, u));
            }
            match &args.output {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            print_json(&json!({
                "theta": result.theta,
                "extrapolated": result.extrapolated,
                "converged": result.converged,
                "residual": result.residual,
                "truncation_limited": result.truncation_limited,
            }))
        }
        Cmd::Chain(args) => {
            let resolved = resolve(&args.common, &settings, settings.n)?;
            let max_offset = args.max_offset.unwrap_or(DEFAULT_MAX_OFFSET);
            let pos = ChainPosition::new(&resolved.taylor(), max_offset);
            let walked = innerdisk::chain::navigate(&pos, args.steps)?;
            let file = CoefficientFile::from_taylor(resolved.name(), &walked);
            print_json(&serde_json::to_value(file)?)
        }
        Cmd::Classify(args) => {
            let resolved = resolve(&args.common, &settings, settings.classify_n)?;
            let lo = args.ladder_lo.unwrap_or(settings.classify_ladder_lo);
            let hi = args.ladder_hi.unwrap_or(settings.classify_ladder_hi);
            let ladder = RhoLadder::geometric(lo, hi, Extrapolation::None)?;
            let max_steps = args.max_steps.unwrap_or(settings.max_steps);
            let guard_tol = args.guard_tol.unwrap_or(settings.guard_tol);
            // Regular can only be certified from catalog metadata: a
            // known closed form with no declared singularity at theta.
            let regular_hint = match &resolved {
                Resolved::FromFunction { spec, .. } => {
                    spec.known_closed_form.is_some()
                        && !spec
                            .singular_points
                            .iter()
                            .any(|sp| (sp.theta - args.theta).abs() < 1e-9)
                }
                Resolved::FromFile { .. } => false,
            };
            let report = classify::classify_point(
                &resolved.taylor(),
                args.theta,
                &ladder,
                max_steps,
                guard_tol,
                regular_hint,
            )?;
            print_json(&serde_json::to_value(&report)?)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        // Machine-readable error object, exit 1. Usage errors exit 2
        // via clap before we get here.
        let obj = json!({ "error": err.to_string() });
        println!("{obj}");
        std::process::exit(1);
    }
}

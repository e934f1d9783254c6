//! Verification CLI: samples Julia sets, runs the quantitative checks, and
//! emits machine-readable reports and figure data.
//!
//! Exit codes: 0 all checks pass, 2 a check failed, 3 inconclusive
//! (sampling error dominates the claim), 64 usage error, 1 I/O error.

mod figures;
mod render;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use holomotion::hausdorff::{verify_distance_bound, verify_exact_distance};
use holomotion::julia::{
    cantor_sample_real_with_budget, sample_inverse_iteration_with_budget, PointCloud,
    DEFAULT_POINT_BUDGET,
};
use holomotion::metric::{verify_expansion, verify_koenigs};
use holomotion::motion::{
    verify_banded_orbit, verify_derivative_bound_f_grid, verify_derivative_bound_q,
    verify_holder_all, verify_transported_bound,
};
use holomotion::report::Report;
use holomotion::symbolic::{critical_itinerary, kneading_sequence, Angle};
use num_complex::Complex64;
use render::View;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "holomotion", version, about = "Julia-set motion verification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a Julia set as a point cloud (or render it for ppm output).
    Sample(SampleArgs),
    /// Run one verification claim and print its JSON report.
    Verify(VerifyArgs),
    /// Write figure data (image sequences and curve tables).
    Figure(FigureArgs),
}

#[derive(Args)]
struct SampleArgs {
    /// Family: `q` (quadratic, needs --c) or `f` (logistic, needs --mu)
    #[arg(long)]
    family: FamilyArg,
    /// Real quadratic parameter
    #[arg(long)]
    c: Option<f64>,
    /// Real logistic parameter (>= 4)
    #[arg(long)]
    mu: Option<f64>,
    /// Pullback depth
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Point budget before deduplication
    #[arg(long, default_value_t = DEFAULT_POINT_BUDGET)]
    budget: usize,
    /// Raster viewport `xmin,xmax,ymin,ymax` (ppm only)
    #[arg(long, allow_hyphen_values = true)]
    view: Option<String>,
    /// Raster size `W,H` (ppm only)
    #[arg(long)]
    px: Option<String>,
    /// Escape-test iteration cap (ppm only)
    #[arg(long, default_value_t = 256)]
    max_iter: usize,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Q,
    F,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Csv,
    Json,
    Ppm,
    Svg,
}

#[derive(Args)]
struct VerifyArgs {
    claim: Claim,
    /// Quadratic parameter(s); repeatable
    #[arg(long)]
    c: Vec<f64>,
    /// Logistic parameter(s); repeatable
    #[arg(long)]
    mu: Vec<f64>,
    /// Sampling depth (claim-specific default)
    #[arg(long)]
    depth: Option<usize>,
    /// Verdict tolerance (claim-specific default)
    #[arg(long)]
    tol: Option<f64>,
    /// Symbol count for kneading checks
    #[arg(long)]
    n: Option<usize>,
    /// Maximum branch-word depth
    #[arg(long)]
    max_depth: Option<usize>,
    /// Orbit start for prop_delta
    #[arg(long)]
    z: Option<f64>,
    /// Band half-width for prop_delta
    #[arg(long)]
    delta: Option<f64>,
    /// Iteration cap for koenigs
    #[arg(long)]
    iters: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    Thm12,
    Thm13,
    Corollary,
    Holder14,
    #[value(name = "prop_delta")]
    PropDelta,
    Remark22,
    Expansion,
    Koenigs,
    Kneading,
}

#[derive(Args)]
struct FigureArgs {
    which: Figure,
    /// Directory for the emitted files
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Cloud depth for fig2
    #[arg(long, default_value_t = 10)]
    depth: usize,
    /// Raster size `W,H` for fig1_top
    #[arg(long, default_value = "600,600")]
    px: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    #[value(name = "fig1_top")]
    Fig1Top,
    #[value(name = "fig1_bottom")]
    Fig1Bottom,
    #[value(name = "fig2")]
    Fig2,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => match dispatch(cli) {
            Ok(code) => code,
            Err(e) => {
                match &e {
                    CliError::Usage(msg) => eprintln!("usage error: {msg}"),
                    CliError::Runtime(msg) => eprintln!("error: {msg}"),
                }
                e.exit_code()
            }
        },
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            0
        }
        Err(e) => {
            let _ = e.print();
            64
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Figure(args) => cmd_figure(args),
    }
}

fn write_output(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn parse_view(s: &str) -> Result<View, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage("--view expects xmin,xmax,ymin,ymax"))?;
    if parts.len() != 4 || parts[0] >= parts[1] || parts[2] >= parts[3] {
        return Err(usage("--view expects xmin,xmax,ymin,ymax with min < max"));
    }
    Ok(View { xmin: parts[0], xmax: parts[1], ymin: parts[2], ymax: parts[3] })
}

fn parse_px(s: &str) -> Result<(u32, u32), CliError> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage("--px expects W,H"))?;
    if parts.len() != 2 || parts[0] == 0 || parts[1] == 0 {
        return Err(usage("--px expects positive W,H"));
    }
    Ok((parts[0], parts[1]))
}

fn cmd_sample(args: SampleArgs) -> Result<i32, CliError> {
    let (cloud, c_equiv): (Option<PointCloud>, Complex64) = match args.family {
        FamilyArg::Q => {
            let c = args.c.ok_or_else(|| usage("--family q needs --c"))?;
            if args.mu.is_some() {
                return Err(usage("--mu does not apply to --family q"));
            }
            let cc = Complex64::new(c, 0.0);
            if args.format == Format::Ppm {
                (None, cc)
            } else {
                let cloud = sample_inverse_iteration_with_budget(cc, args.depth, args.budget)
                    .map_err(|e| usage(e.to_string()))?;
                (Some(cloud), cc)
            }
        }
        FamilyArg::F => {
            let mu = args.mu.ok_or_else(|| usage("--family f needs --mu"))?;
            if args.c.is_some() {
                return Err(usage("--c does not apply to --family f"));
            }
            // conjugate quadratic parameter, used for ppm rendering
            let c_equiv = Complex64::new(mu * (2.0 - mu) / 4.0, 0.0);
            if args.format == Format::Ppm {
                (None, c_equiv)
            } else {
                let cloud = cantor_sample_real_with_budget(mu, args.depth, args.budget)
                    .map_err(|e| usage(e.to_string()))?;
                (Some(cloud), c_equiv)
            }
        }
    };
    match args.format {
        Format::Csv => {
            write_output(&args.out, cloud.unwrap().csv_string().as_bytes())?;
        }
        Format::Json => {
            let text = serde_json::to_string_pretty(&cloud.unwrap().json_value())
                .expect("serializable")
                + "\n";
            write_output(&args.out, text.as_bytes())?;
        }
        Format::Svg => {
            write_output(&args.out, render::cloud_svg(&cloud.unwrap()).as_bytes())?;
        }
        Format::Ppm => {
            let view = match &args.view {
                Some(v) => parse_view(v)?,
                None => View::default(),
            };
            let (w, h) = match &args.px {
                Some(p) => parse_px(p)?,
                None => (600, 600),
            };
            let img = render::escape_ppm(c_equiv, view, w, h, args.max_iter);
            write_output(&args.out, &img)?;
        }
    }
    Ok(0)
}

fn default_grid(supplied: &[f64], default: &[f64]) -> Vec<f64> {
    if supplied.is_empty() {
        default.to_vec()
    } else {
        supplied.to_vec()
    }
}

fn require_range(values: &[f64], ok: impl Fn(f64) -> bool, msg: &str) -> Result<(), CliError> {
    for &v in values {
        if !ok(v) {
            return Err(usage(format!("{msg} (got {v})")));
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let report = match args.claim {
        Claim::Thm12 => {
            let grid = default_grid(&args.c, &[0.0, 0.1, 0.2, 0.24, 0.2499]);
            require_range(&grid, |c| (0.0..0.25).contains(&c), "thm12 needs c in [0, 1/4)")?;
            let depth = args.depth.unwrap_or(12);
            let tol = args.tol.unwrap_or(1e-9);
            let cases = grid
                .iter()
                .map(|&c| {
                    let cloud = sample_inverse_iteration_with_budget(
                        Complex64::new(c, 0.0),
                        depth,
                        DEFAULT_POINT_BUDGET,
                    )
                    .map_err(|e| usage(e.to_string()))?;
                    Ok(verify_derivative_bound_q(c, &cloud, tol))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Report::merge("thm12", cases)
        }
        Claim::Thm13 => {
            let grid = default_grid(&args.mu, &[4.1, 4.01, 4.001, 4.0001]);
            require_range(&grid, |m| m > 4.0, "thm13 needs mu > 4")?;
            let depth = args.depth.unwrap_or(14);
            verify_derivative_bound_f_grid(&grid, depth, 1e-10, 0.01, 4.0)
        }
        Claim::Corollary => {
            let grid = default_grid(&args.c, &[0.0, 0.1, 0.1875]);
            require_range(&grid, |c| (0.0..0.25).contains(&c), "corollary needs c in [0, 1/4)")?;
            let depth = args.depth.unwrap_or(16);
            let tol = args.tol.unwrap_or(0.01);
            let cases = grid.iter().map(|&c| verify_exact_distance(c, depth, tol)).collect();
            Report::merge("corollary", cases)
        }
        Claim::Holder14 => {
            let grid = default_grid(&args.c, &[0.0, 0.1, 0.2, 0.24]);
            require_range(&grid, |c| (0.0..0.25).contains(&c), "holder14 needs c in [0, 1/4)")?;
            let max_depth = args.max_depth.unwrap_or(6);
            verify_holder_all(max_depth, &grid, args.tol.unwrap_or(1e-9), 1e-10)
        }
        Claim::PropDelta => {
            let tol = args.tol.unwrap_or(1e-9);
            let cases = match (args.mu.as_slice(), args.z, args.delta) {
                ([mu], Some(z), Some(delta)) => {
                    if *mu < 4.0 {
                        return Err(usage("prop_delta needs mu >= 4"));
                    }
                    if !(delta > 0.0 && delta <= 0.5) {
                        return Err(usage("prop_delta needs delta in (0, 1/2]"));
                    }
                    vec![verify_banded_orbit(*mu, z, delta, tol, 1e-12)]
                }
                ([], None, None) => {
                    // interior fixed points and the period-2 cycle at mu = 4
                    let period2 = (5.0 - 5.0f64.sqrt()) / 8.0;
                    vec![
                        verify_banded_orbit(4.5, 1.0 - 1.0 / 4.5, 2.0 / 9.0, tol, 1e-12),
                        verify_banded_orbit(5.0, 0.8, 0.2, tol, 1e-12),
                        verify_banded_orbit(4.0, period2, (3.0 - 5.0f64.sqrt()) / 8.0, tol, 1e-12),
                    ]
                }
                _ => {
                    return Err(usage(
                        "prop_delta takes either no point flags or all of --mu --z --delta",
                    ))
                }
            };
            Report::merge("prop_delta", cases)
        }
        Claim::Remark22 => {
            let grid = default_grid(&args.mu, &[1.05, 1.5, 1.9]);
            require_range(&grid, |m| m > 1.0 && m < 2.0, "remark22 needs mu in (1, 2)")?;
            let depth = args.depth.unwrap_or(16);
            let tol = args.tol.unwrap_or(0.01);
            let mut cases = Vec::new();
            for &mu in &grid {
                cases.push(verify_distance_bound(mu, depth, tol));
                cases.push(verify_transported_bound(mu, args.max_depth.unwrap_or(4), 1e-9));
            }
            Report::merge("remark22", cases)
        }
        Claim::Expansion => {
            let grid = default_grid(&args.mu, &[4.0, 4.1, 4.5]);
            require_range(&grid, |m| m >= 4.0, "expansion needs mu >= 4")?;
            let depth = args.depth.unwrap_or(14);
            let cases = grid
                .iter()
                .map(|&mu| verify_expansion(mu, depth, 1e-12, 1e-9))
                .collect();
            Report::merge("expansion", cases)
        }
        Claim::Koenigs => {
            let grid = default_grid(&args.mu, &[4.0]);
            require_range(&grid, |m| m >= 4.0, "koenigs needs mu >= 4")?;
            let iters = args.iters.unwrap_or(60);
            let cases = grid
                .iter()
                .map(|&mu| verify_koenigs(mu, iters, 1e-8, 1e-10))
                .collect();
            Report::merge("koenigs", cases)
        }
        Claim::Kneading => verify_kneading(args.n.unwrap_or(64))?,
    };
    let json = serde_json::to_string_pretty(&report.to_json()).expect("serializable") + "\n";
    write_output(&args.out, json.as_bytes())?;
    Ok(report.verdict.exit_code())
}

/// Claim `kneading`: the angle-doubling kneading sequence of 1/2 agrees
/// with the logistic critical itinerary at mu = 4, symbol for symbol.
fn verify_kneading(n: usize) -> Result<Report, CliError> {
    if n == 0 {
        return Err(usage("kneading needs --n >= 1"));
    }
    let mut report = Report::new("kneading");
    report.param("n", serde_json::json!(n));
    let half = Angle::new(1, 2).map_err(|e| usage(e.to_string()))?;
    match (kneading_sequence(half, n), critical_itinerary(4.0, n)) {
        (Ok(e), Ok(i)) => {
            report.metric("kneading", serde_json::json!(e.to_string()));
            report.metric("itinerary", serde_json::json!(i.to_string()));
            if e != i {
                report.fail("kneading sequence and itinerary disagree".into());
            }
            let mut expected = vec![1u8; n];
            expected[0] = 0;
            if e.prefix(n) != expected {
                report.fail("sequence is not 0 followed by all 1s".into());
            }
        }
        (Err(e), _) => {
            report.fail(format!("kneading evaluation failed: {e}"));
        }
        (_, Err(e)) => {
            report.fail(format!("itinerary evaluation failed: {e}"));
        }
    }
    Ok(report)
}

fn cmd_figure(args: FigureArgs) -> Result<i32, CliError> {
    fs::create_dir_all(&args.out_dir)?;
    let written = match args.which {
        Figure::Fig1Top => {
            let (w, h) = parse_px(&args.px)?;
            figures::fig1_top(Path::new(&args.out_dir), w, h)?
        }
        Figure::Fig1Bottom => figures::fig1_bottom(Path::new(&args.out_dir))?,
        Figure::Fig2 => figures::fig2(Path::new(&args.out_dir), args.depth)?,
    };
    for name in written {
        println!("{}", args.out_dir.join(name).display());
    }
    Ok(0)
}

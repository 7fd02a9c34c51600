//! `hbdisks` command-line front end.
//!
//! Exit codes: 0 when everything passes, 1 when a verification check fails,
//! 2 on malformed input or a computation that could not be carried out.

mod plot;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use hbdisks::analysis::{level_curve_classify, min_modulus_on_halfcircle};
use hbdisks::report::{analyze, verify, Suite, VerifyOptions};
use hbdisks::roots::wronskian_roots;
use hbdisks::sample::random_pair;
use hbdisks::wronski::{invert_wronskian, PositivePolynomial};
use hbdisks::{tol, InterlacingPair, RealPolynomial};

#[derive(Parser, Debug)]
#[command(name = "hbdisks", version, about = "Root localization and maximal univalent disks of q/p with interlacing zeros")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relative tolerance; absolute tolerances are this times max(1, scale).
    #[arg(long, global = true, env = "HBDISKS_TOL", value_parser = positive_f64)]
    tol: Option<f64>,

    /// Output file, written atomically. Standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random interlacing pair.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..=32))]
        degree: u32,
    },
    /// Run a verification suite on a pair.
    Verify {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        params: Params,
    },
    /// Summarize a pair: roots, residues, Wronskian, disks, half-circle minima.
    Analyze {
        #[arg(long)]
        pair: PathBuf,
    },
    /// Classify level sets of |R| in one inner disk.
    Levelcurves {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, default_value_t = 1)]
        disk: usize,
        /// Level; defaults to 0.5 m, m and 2 m.
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 256)]
        grid: usize,
    },
    /// Recover a normalized interlacing pair from its Wronskian.
    Invert {
        /// JSON file `{"u": {"coeffs": [...]}, "k": k}`.
        #[arg(long)]
        input: PathBuf,
    },
    /// Draw an SVG figure.
    Plot {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, value_enum, default_value_t = PlotKind::Omega)]
        what: PlotKind,
        /// α of the plotted roots of p + iαq.
        #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
        alpha: f64,
        /// Inner disk for the level plot.
        #[arg(long, default_value_t = 1)]
        disk: usize,
        #[arg(long, default_value_t = 240)]
        grid: usize,
    },
}

#[derive(clap::Args, Debug)]
struct Params {
    /// α of p + iαq for the hb suite.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Modulus r of q/p = r e^{iφ} for the census suite.
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Restrict disk-wise suites to D_j.
    #[arg(long)]
    disk: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    probes: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    Omega,
    Levels,
}

#[derive(Deserialize)]
struct InvertInput {
    u: RealPolynomial,
    k: usize,
}

/// Input and usage problems; everything else a command returns is a result.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got '{s}'")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, passed)) => match emit(cli.out.as_deref(), &text) {
            Ok(()) if passed => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(Failure(msg)) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_pair(path: &Path) -> Result<InterlacingPair, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn format_or(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("finite JSON values");
    s.push('\n');
    s
}

/// Output text and whether every check passed.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let relative = cli.tol.unwrap_or(tol::DEFAULT_RELATIVE);
    match &cli.command {
        Command::Gen { seed, degree } => {
            let pair = random_pair(*seed, *degree as usize)?;
            let text = match format_or(cli, Format::Json, &[Format::Json, Format::Csv])? {
                Format::Json => {
                    let mut v = serde_json::to_value(&pair)?;
                    v["seed"] = json!(seed);
                    v["degree"] = json!(degree);
                    pretty(&v)
                }
                _ => {
                    let mut s = String::from("polynomial,index,root\n");
                    for (name, roots) in [("p", pair.p_roots()), ("q", pair.q_roots())] {
                        for (i, r) in roots.iter().enumerate() {
                            s.push_str(&format!("{name},{},{r:e}\n", i + 1));
                        }
                    }
                    s
                }
            };
            Ok((text, true))
        }
        Command::Verify { pair, suite, params } => {
            format_or(cli, Format::Json, &[Format::Json])?;
            let pair = read_pair(pair)?;
            let suite: Suite = suite.parse()?;
            let d = VerifyOptions::default();
            let opts = VerifyOptions {
                relative_tol: relative,
                alpha: params.alpha.unwrap_or(d.alpha),
                r: params.r.unwrap_or(d.r),
                phi: params.phi.unwrap_or(d.phi),
                disk: params.disk.or(d.disk),
                grid: params.grid.unwrap_or(d.grid),
                probes: params.probes.unwrap_or(d.probes),
            };
            let report = verify(&pair, suite, &opts)?;
            let mut text = report.to_json();
            text.push('\n');
            Ok((text, report.passed))
        }
        Command::Analyze { pair } => {
            let pair = read_pair(pair)?;
            let text = match format_or(cli, Format::Json, &[Format::Json, Format::Csv])? {
                Format::Json => pretty(&analyze(&pair)?),
                _ => {
                    let mut roots = wronskian_roots(&pair)?.roots;
                    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
                    let mut s = String::from("index,re,im,abs_r\n");
                    for (i, z) in roots.iter().enumerate() {
                        let v = pair.r_partial_fractions(*z).norm();
                        s.push_str(&format!("{},{:e},{:e},{v:e}\n", i + 1, z.re, z.im));
                    }
                    s
                }
            };
            Ok((text, true))
        }
        Command::Levelcurves { pair, disk, r, grid } => {
            let pair = read_pair(pair)?;
            let m = min_modulus_on_halfcircle(&pair, *disk)?;
            let levels = match r {
                Some(r) => vec![*r],
                None => vec![0.5 * m.m, m.m, 2.0 * m.m],
            };
            let reports = levels
                .iter()
                .map(|&r| level_curve_classify(&pair, *disk, r, *grid))
                .collect::<hbdisks::Result<Vec<_>>>()?;
            let text = match format_or(cli, Format::Json, &[Format::Json, Format::Csv])? {
                Format::Json => pretty(&json!({ "disk": disk, "grid": grid, "minimum": m, "levels": reports })),
                _ => {
                    let mut s = String::from("r,classification,components,real_crossings\n");
                    for rep in &reports {
                        let class = serde_json::to_value(rep.classification)?;
                        let class = class.as_str().unwrap_or_default().to_string();
                        s.push_str(&format!("{:e},{class},{},{}\n", rep.r, rep.component_count, rep.real_crossings));
                    }
                    s
                }
            };
            Ok((text, true))
        }
        Command::Invert { input } => {
            format_or(cli, Format::Json, &[Format::Json])?;
            let text = fs::read_to_string(input).map_err(|e| Failure(format!("{}: {e}", input.display())))?;
            let inp: InvertInput = serde_json::from_str(&text)?;
            if inp.k < 2 || inp.u.degree() != 2 * inp.k - 2 {
                return Err(Failure(format!("deg u = {} does not match k = {}", inp.u.degree(), inp.k)));
            }
            let u = PositivePolynomial::new(inp.u)?;
            let inv = invert_wronskian(&u)?;
            let (p, q) = inv.pair.to_polynomials();
            let v = json!({
                "k": inp.k,
                "a": inv.pair.a,
                "b": inv.pair.b,
                "p": p,
                "q": q,
                "residual": inv.residual,
                "steps": inv.steps,
                "rejected_steps": inv.rejected_steps,
                "max_condition": inv.max_condition,
            });
            Ok((pretty(&v), true))
        }
        Command::Plot { pair, what, alpha, disk, grid } => {
            format_or(cli, Format::Svg, &[Format::Svg])?;
            let pair = read_pair(pair)?;
            let svg = match what {
                PlotKind::Omega => plot::omega(&pair, *alpha)?,
                PlotKind::Levels => plot::levels(&pair, *disk, *grid)?,
            };
            Ok((svg, true))
        }
    }
}

/// Writes to a temporary file next to `out` and renames it into place.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(out) = out else {
        print!("{text}");
        return Ok(());
    };
    let dir = match out.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.flush()?;
    tmp.persist(out).map_err(|e| Failure(e.error.to_string()))?;
    Ok(())
}

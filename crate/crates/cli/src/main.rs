//! Batch entry points over the library: compute the critical coupling, run
//! spectral sweeps, run the verification suites, produce the divergence
//! demonstration, and evaluate kernels pointwise.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage/config error.  Every
//! output document embeds the command configuration, library version and
//! tolerances; JSON is canonical and CSV is a projection of the same rows.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use br2d::certificate::{certificate_suite, critical_coupling};
use br2d::identities::identity_suite;
use br2d::kernel::{channel_kernel, full_kernel, Channel, Momentum, Momentum2D};
use br2d::quadrature::{build_radial_grid, MapKind};
use br2d::spectral::{delta_sweep, SpectralReport};
use br2d::unbounded::{divergence_demo, fit_slope, lemma_suite, DivergenceRow};
use br2d::Error;

#[derive(Parser)]
#[command(name = "br2d", version, about = "Partial-wave spectral toolkit for the 2D Brown-Ravenhall operator with Coulomb coupling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (CSV projects the result rows of the JSON document)
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the document to this path as well as stdout; relative paths
    /// resolve against $BR2D_OUT_DIR when set
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the critical coupling delta_c and the floor 1 - 2 delta_c
    Critical {
        /// Significant digits
        #[arg(long, default_value_t = 10)]
        precision: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lowest eigenvalue of the discretized channel form over couplings
    Spectrum {
        /// Couplings, comma separated (scientific notation accepted)
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        /// Use the critical coupling as the (additional) sweep point
        #[arg(long)]
        delta_c: bool,
        /// Channel indices, comma separated
        #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
        k: Vec<i32>,
        /// Grid size
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Truncation scale of the radial grid
        #[arg(long, default_value_t = 1e4)]
        p_max: f64,
        /// Half-line map
        #[arg(long, default_value = "rational")]
        map: String,
        /// Exit 1 unless lambda_min >= 1 - 2 delta - 0.02 for every
        /// subcritical row
        #[arg(long)]
        assert_floor: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite
    Verify {
        /// Which suite to run
        #[arg(value_parser = ["identities", "certificates", "lemmas", "all"])]
        suite: String,
        /// Tolerance multiplier pass-through, e.g. 0.5x reruns the
        /// quantitative identity checks at halved tolerances
        #[arg(long, default_value = "1x")]
        strict_tol: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Divergence demonstration above the critical coupling
    Diverge {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        a: f64,
        /// Window ends, comma separated (scientific notation accepted)
        #[arg(long, value_delimiter = ',')]
        b: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pointwise kernel evaluation (channel kernel K_k, or the full 2D
    /// kernel with --p1/--p2/--q1/--q2)
    KernelEval {
        #[arg(long, default_value_t = 0)]
        k: i32,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        p1: Option<f64>,
        #[arg(long)]
        p2: Option<f64>,
        #[arg(long)]
        q1: Option<f64>,
        #[arg(long)]
        q2: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn resolve_out(path: &PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("BR2D_OUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.clone()
}

/// Wrap results with the reproducibility envelope.
fn document(command: &str, config: Value, tolerances: Value, results: Value) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "tolerances": tolerances,
        "results": results,
    })
}

fn emit(doc: &Value, csv: Option<String>, output: &OutputArgs) -> Result<(), Error> {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable document"),
        Format::Csv => csv.unwrap_or_else(|| "unsupported csv projection".into()),
    };
    println!("{text}");
    if let Some(path) = &output.out {
        let path = resolve_out(path);
        let mut file = std::fs::File::create(&path)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
        writeln!(file, "{text}").map_err(|e| Error::Config(e.to_string()))?;
    }
    Ok(())
}

fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - mag).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Critical { precision, output } => {
            let cc = critical_coupling();
            let doc = document(
                "critical",
                json!({ "precision": precision }),
                json!({ "paper_approximation": 0.378, "abs_window": 5e-4 }),
                json!({
                    "delta_c": cc.delta_c,
                    "floor": cc.floor(),
                    "delta_c_str": fmt_sig(cc.delta_c, precision),
                    "floor_str": fmt_sig(cc.floor(), precision),
                }),
            );
            let csv = format!("delta_c,floor\n{},{}", cc.delta_c, cc.floor());
            emit(&doc, Some(csv), &output)?;
            Ok(0)
        }
        Command::Spectrum { mut delta, delta_c, k, n, p_max, map, assert_floor, output } => {
            if delta_c {
                delta.push(critical_coupling().delta_c);
            }
            if delta.is_empty() {
                return Err(Error::Config("no couplings given (use --delta or --delta-c)".into()));
            }
            let map_kind: MapKind = map.parse()?;
            let grid = build_radial_grid(n, map_kind, p_max)?;
            let mut rows: Vec<SpectralReport> = Vec::new();
            for &ch in &k {
                rows.extend(delta_sweep(&grid, Channel::new(ch), &delta)?);
            }
            let dc = critical_coupling().delta_c;
            let floor_ok = rows
                .iter()
                .filter(|r| r.delta <= dc + 1e-12)
                .all(|r| r.lambda_min >= 1.0 - 2.0 * r.delta - 0.02);
            let doc = document(
                "spectrum",
                json!({
                    "delta": delta, "k": k, "n": n, "p_max": p_max,
                    "map": map_kind.to_string(), "assert_floor": assert_floor,
                    "grid_self_test_error": grid.self_test_error(),
                }),
                json!({ "floor_slack": 0.02, "eigen_residual": 1e-8 }),
                serde_json::to_value(&rows).expect("rows serialize"),
            );
            let mut csv = String::from(SpectralReport::csv_header());
            for r in &rows {
                csv.push('\n');
                csv.push_str(&r.csv_row());
            }
            emit(&doc, Some(csv), &output)?;
            Ok(if assert_floor && !floor_ok { 1 } else { 0 })
        }
        Command::Verify { suite, strict_tol, output } => {
            let scale: f64 = {
                let s = strict_tol.trim_end_matches('x');
                s.parse()
                    .map_err(|_| Error::Config(format!("bad --strict-tol '{strict_tol}'")))?
            };
            if scale <= 0.0 {
                return Err(Error::Config("--strict-tol must be positive".into()));
            }
            let mut sections = BTreeMap::new();
            let mut all_pass = true;
            if suite == "certificates" || suite == "all" {
                let reps = certificate_suite()?;
                all_pass &= reps.iter().all(|r| r.pass);
                sections.insert("certificates", serde_json::to_value(&reps).unwrap());
            }
            if suite == "identities" || suite == "all" {
                let reps: Vec<_> = identity_suite()?
                    .into_iter()
                    .map(|r| r.rescaled(scale))
                    .collect();
                all_pass &= reps.iter().all(|r| r.pass);
                sections.insert("identities", serde_json::to_value(&reps).unwrap());
            }
            if suite == "lemmas" || suite == "all" {
                let reps: Vec<_> = lemma_suite()?
                    .into_iter()
                    .map(|r| r.rescaled(scale))
                    .collect();
                all_pass &= reps.iter().all(|r| r.pass);
                sections.insert("lemmas", serde_json::to_value(&reps).unwrap());
            }
            let doc = document(
                "verify",
                json!({ "suite": suite, "strict_tol": strict_tol }),
                json!({ "tolerance_scale": scale }),
                json!({ "pass": all_pass, "sections": sections }),
            );
            emit(&doc, None, &output)?;
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Diverge { delta, a, b, output } => {
            let rows = divergence_demo(delta, a, &b)?;
            let slope = fit_slope(&rows);
            let decreasing = rows.windows(2).all(|w| w[1].form_value < w[0].form_value);
            let doc = document(
                "diverge",
                json!({ "delta": delta, "a": a, "b": b }),
                json!({ "quadrature_tol": 1e-7 }),
                json!({
                    "rows": rows, "fit_slope": slope, "strictly_decreasing": decreasing,
                }),
            );
            let mut csv = String::from(DivergenceRow::csv_header());
            for r in &rows {
                csv.push('\n');
                csv.push_str(&r.csv_row());
            }
            emit(&doc, Some(csv), &output)?;
            Ok(if decreasing { 0 } else { 1 })
        }
        Command::KernelEval { k, p, q, p1, p2, q1, q2, output } => {
            let doc = match (p, q, p1, p2, q1, q2) {
                (Some(p), Some(q), None, None, None, None) => {
                    let value =
                        channel_kernel(Channel::new(k), Momentum::new(p)?, Momentum::new(q)?)?;
                    document(
                        "kernel-eval",
                        json!({ "k": k, "p": p, "q": q }),
                        json!({}),
                        json!({ "kind": "channel", "value": value }),
                    )
                }
                (None, None, Some(p1), Some(p2), Some(q1), Some(q2)) => {
                    let value =
                        full_kernel(Momentum2D::new(p1, p2)?, Momentum2D::new(q1, q2)?)?;
                    document(
                        "kernel-eval",
                        json!({ "p1": p1, "p2": p2, "q1": q1, "q2": q2 }),
                        json!({}),
                        json!({ "kind": "full-2d", "re": value.re, "im": value.im }),
                    )
                }
                _ => {
                    return Err(Error::Config(
                        "give either --p/--q (channel kernel) or --p1/--p2/--q1/--q2 (full 2D)"
                            .into(),
                    ))
                }
            };
            emit(&doc, None, &output)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

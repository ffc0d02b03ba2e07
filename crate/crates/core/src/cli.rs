//! Command-line front end.
//!
//! Every subcommand builds one JSON value; `--json`, `--csv` or the default
//! human form are rendered from it. Output goes to stdout or, with
//! `--output`, to a file written through a temporary sibling and a rename.
//!
//! Exit codes: 0 success, 1 violation or ratio above the reference,
//! 2 inconclusive certification, 3 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::certify::bnb::{DEFAULT_EPS, DEFAULT_MAX_DEPTH};
use crate::certify::{certify_nonneg, CertifyRequest, InequalityId};
use crate::constants::{
    classify, conjectured_constant, hv_max_constant, pichorides_constant, sharp_constant, verbitsky_constant,
    ExponentPair,
};
use crate::error::{Error, Result};
use crate::fourier::extremal::DEFAULT_NODES;
use crate::fourier::{conjugate_search, default_alphabeta_grid, extremal_sweep, gamma_ratio, random_ratio_search};
use crate::lowerbound::{asymptotic_sweep, lower_bound_with_scan, DEFAULT_SCAN};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Relative tolerance before a ratio counts as exceeding its reference.
pub const RATIO_TOL: f64 = 1e-6;
/// Number of `(alpha, beta)` directions in the sweep grid.
pub const SWEEP_DIRECTIONS: usize = 24;

#[derive(Debug, Parser)]
#[command(name = "riesz-sharp", version, about = "Sharp constants for the Riesz projection pair")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form constants and the regime of (p, s).
    Constants {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: f64,
    },
    /// Supremum of the extremal-family ratio.
    LowerBound {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: f64,
        /// Scan points before golden-section refinement.
        #[arg(long, default_value_t = DEFAULT_SCAN)]
        grid: usize,
    },
    /// Lower bounds for s on a geometric grid from 1 to s-max.
    Asymptote {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s_max: f64,
        #[arg(long, default_value_t = 16)]
        steps: usize,
    },
    /// Interval branch-and-bound certification of an inequality.
    Certify {
        #[arg(long)]
        ineq: InequalityId,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: u32,
    },
    /// Projection ratio of one member of the extremal family.
    Ratio {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        gamma_frac: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        /// Quadrature nodes (a power of two).
        #[arg(long, default_value_t = DEFAULT_NODES)]
        n: usize,
    },
    /// Best extremal-family ratio for each gamma fraction.
    Sweep {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.8,0.9,0.95,0.99")]
        fracs: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        n: usize,
    },
    /// Largest projection ratio over random polynomials.
    Search {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Largest conjugate-function ratio over random real polynomials.
    Conjugate {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        degree: usize,
    },
}

/// Result of one subcommand before rendering.
struct Outcome {
    value: Value,
    exit: i32,
    /// Preferred format when no flag is given.
    default_format: Format,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Self {
            value,
            exit: EXIT_OK,
            default_format: Format::Human,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn exceed_exit(exceeds: bool) -> i32 {
    if exceeds {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn execute(cmd: &Command) -> Result<Outcome> {
    Ok(match *cmd {
        Command::Constants { p, s } => {
            let e = ExponentPair::new(p, s)?;
            let (c, regime) = sharp_constant(&e);
            debug_assert_eq!(regime, classify(&e));
            Outcome::ok(json!({
                "C": c,
                "regime": regime.name(),
                "p": p,
                "s": s,
                "proved": regime.is_proved(),
                "condition": regime.condition(),
                "conjectured": conjectured_constant(&e),
                "hv_max": hv_max_constant(p)?,
                "verbitsky": verbitsky_constant(p)?,
                "pichorides": pichorides_constant(p)?,
            }))
        }
        Command::LowerBound { p, s, grid } => {
            let e = ExponentPair::new(p, s)?;
            let lb = lower_bound_with_scan(&e, grid)?;
            let mut v = to_value(&lb);
            v["p"] = json!(p);
            v["s"] = json!(s);
            v["C"] = json!(sharp_constant(&e).0);
            Outcome::ok(v)
        }
        Command::Asymptote { p, s_max, steps } => {
            if !(s_max > 1.0 && s_max.is_finite()) || steps < 2 {
                return Err(Error::Parameter("need s-max > 1 and steps >= 2".into()));
            }
            let s_values: Vec<f64> = (0..steps)
                .map(|k| s_max.powf(k as f64 / (steps - 1) as f64))
                .collect();
            let rows = asymptotic_sweep(p, &s_values)?;
            Outcome::ok(to_value(&rows))
        }
        Command::Certify {
            ineq,
            p,
            s,
            eps,
            max_depth,
        } => {
            let mut req = CertifyRequest::new(ineq).eps(eps).max_depth(max_depth);
            if let Some(p) = p {
                req = req.p(p);
            }
            if let Some(s) = s {
                req = req.s(s);
            }
            let report = certify_nonneg(&req)?;
            Outcome {
                value: to_value(&report),
                exit: report.status.exit_code(),
                default_format: Format::Human,
            }
        }
        Command::Ratio {
            p,
            s,
            gamma_frac,
            alpha,
            beta,
            n,
        } => {
            let e = ExponentPair::new(p, s)?;
            let gamma = gamma_frac * std::f64::consts::PI / (2.0 * p);
            let r = gamma_ratio(&e, gamma, alpha, beta, n)?;
            Outcome {
                value: to_value(&r),
                exit: exceed_exit(r.exceeds_reference(RATIO_TOL)),
                default_format: Format::Human,
            }
        }
        Command::Sweep { p, s, ref fracs, n } => {
            let e = ExponentPair::new(p, s)?;
            let reports = extremal_sweep(&e, fracs, &default_alphabeta_grid(SWEEP_DIRECTIONS), n)?;
            let exceeds = reports.iter().any(|r| r.exceeds_reference(RATIO_TOL));
            let rows: Vec<Value> = fracs
                .iter()
                .zip(&reports)
                .map(|(f, r)| {
                    json!({
                        "gamma_frac": f,
                        "alpha": r.alpha,
                        "beta": r.beta,
                        "N": r.n,
                        "ratio": r.ratio,
                        "reference": r.reference,
                    })
                })
                .collect();
            Outcome {
                value: Value::Array(rows),
                exit: exceed_exit(exceeds),
                default_format: Format::Csv,
            }
        }
        Command::Search {
            p,
            s,
            trials,
            degree,
            seed,
        } => {
            let e = ExponentPair::new(p, s)?;
            let out = random_ratio_search(&e, trials, degree, seed)?;
            Outcome {
                value: to_value(&out.report),
                exit: exceed_exit(out.report.exceeds_reference(RATIO_TOL)),
                default_format: Format::Human,
            }
        }
        Command::Conjugate {
            p,
            trials,
            seed,
            degree,
        } => {
            let r = conjugate_search(p, trials, degree, seed)?;
            Outcome {
                value: to_value(&r),
                exit: exceed_exit(r.exceeds_reference(RATIO_TOL)),
                default_format: Format::Human,
            }
        }
    })
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(v: &Value) -> String {
    let text = scalar_text(v);
    if text.contains([',', '"']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text
    }
}

fn rows_of(v: &Value) -> Vec<&Map<String, Value>> {
    match v {
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        Value::Object(m) => vec![m],
        _ => Vec::new(),
    }
}

fn render_csv(v: &Value) -> String {
    let rows = rows_of(v);
    let Some(first) = rows.first() else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let mut out = keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = keys
            .iter()
            .map(|k| row.get(*k).map_or(String::new(), csv_field))
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn render_human(v: &Value) -> String {
    let rows = rows_of(v);
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let width = row.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, val) in row.iter() {
            out.push_str(&format!("{k:<width$}  {}\n", scalar_text(val)));
        }
    }
    out
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(v),
        Format::Human => render_human(v),
    }
}

/// Writes `text` to `path` through a temporary file in the same directory.
fn write_atomic(path: &Path, text: &str) -> io::Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn usage_error(msg: impl std::fmt::Display) -> i32 {
    let text = msg.to_string();
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut line = lines.next().unwrap_or("usage error").to_string();
    if line.ends_with(':') {
        if let Some(next) = lines.next() {
            line = format!("{line} {next}");
        }
    }
    eprintln!("{line}");
    EXIT_USAGE
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return EXIT_OK;
        }
        Err(e) => return usage_error(e),
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => return usage_error(format!("error: {e}")),
    };
    let format = if cli.out.json {
        Format::Json
    } else if cli.out.csv {
        Format::Csv
    } else {
        outcome.default_format
    };
    let text = render(&outcome.value, format);
    let written = match &cli.out.output {
        Some(path) => write_atomic(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return usage_error(format!("error: cannot write output: {e}"));
    }
    outcome.exit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_and_orders() {
        let v = json!([{"a": 1.5, "b": "x,y"}, {"a": null, "b": "z"}]);
        assert_eq!(render_csv(&v), "a,b\n1.5,\"x,y\"\n,z\n");
    }

    #[test]
    fn usage_errors_exit_three() {
        assert_eq!(run(["riesz-sharp", "constants", "--p", "0.5", "--s", "2"]), EXIT_USAGE);
        assert_eq!(run(["riesz-sharp", "nonsense"]), EXIT_USAGE);
        assert_eq!(run(["riesz-sharp", "certify", "--ineq", "nope"]), EXIT_USAGE);
        assert_eq!(run(["riesz-sharp", "--help"]), EXIT_OK);
    }

    #[test]
    fn sweep_fracs_parse_as_list() {
        let cli = Cli::try_parse_from(["x", "sweep", "--p", "4", "--s", "2", "--fracs", "0.5,0.7"]).unwrap();
        match cli.command {
            Command::Sweep { fracs, .. } => assert_eq!(fracs, vec![0.5, 0.7]),
            _ => unreachable!(),
        }
    }
}

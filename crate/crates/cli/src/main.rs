//! `kurepa`: evaluate Kurepa's function, tabulate it, check the two-sided
//! bounds on K(x)/Γ(x + 1) and run the property suites.
//!
//! Exit codes: 0 ok, 1 usage, 2 domain or pole error, 3 quadrature did not
//! converge, 4 a property or bound check failed.

mod complex;
mod config;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kurepa_core::bounds::{normalized_ratio_with, sandwich_bounds};
use kurepa_core::verify::{run_suite, CheckKind, Suite};
use kurepa_core::{
    gamma, kurepa_derivative_with, kurepa_with, ComplexValue, KurepaError, Method, QuadratureConfig,
};

use crate::complex::parse_complex;
use crate::config::load_config;
use crate::output::{Cell, Format, RecordWriter};

const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "kurepa", version, about = "Kurepa's left-factorial function K(z)")]
struct Cli {
    /// Key-value file overriding the quadrature settings
    /// (split_delta, tail_cutoff, abs_tol, max_subdivisions).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write JSON lines instead of CSV.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate K(z) at one point, e.g. `eval 5`, `eval 0.5+2i`.
    Eval {
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Tabulate K and friends on the real grid start + i·step.
    #[command(allow_negative_numbers = true)]
    Table {
        start: f64,
        stop: f64,
        step: f64,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Column::K, Column::DK, Column::Gamma, Column::Ratio])]
        columns: Vec<Column>,
    },
    /// Two-sided bounds A_k(x) < K(x)/Γ(x+1) <= B_k(x) on a grid.
    #[command(allow_negative_numbers = true)]
    Bounds {
        k: u32,
        start: f64,
        stop: f64,
        step: f64,
    },
    /// Run the property suites.
    Verify {
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Series,
    Quadrature,
    Continuation,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        match self {
            MethodArg::Auto => None,
            MethodArg::Series => Some(Method::ExactSeries),
            MethodArg::Quadrature => Some(Method::Quadrature),
            MethodArg::Continuation => Some(Method::Continuation),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Column {
    #[value(name = "K")]
    K,
    #[value(name = "dK")]
    DK,
    #[value(name = "gamma")]
    Gamma,
    #[value(name = "ratio")]
    Ratio,
}

impl Column {
    fn name(self) -> &'static str {
        match self {
            Column::K => "K",
            Column::DK => "dK",
            Column::Gamma => "gamma",
            Column::Ratio => "ratio",
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn checks(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<KurepaError> for Failure {
    fn from(e: KurepaError) -> Self {
        let code = match e {
            KurepaError::Convergence { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A closed pipe (`kurepa verify | head`) is not an error.
        let code = if e.kind() == io::ErrorKind::BrokenPipe { 0 } else { 1 };
        Failure {
            code,
            message: format!("output error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = load_config(cli.config.as_deref()).map_err(Failure::usage)?;
    let format = if cli.json { Format::JsonLines } else { Format::Csv };
    let stdout = io::stdout();
    let mut out = RecordWriter::new(stdout.lock(), format);
    let result = match cli.command {
        Command::Eval { z, method } => cmd_eval(&mut out, &z, method, &cfg),
        Command::Table {
            start,
            stop,
            step,
            columns,
        } => cmd_table(&mut out, start, stop, step, &columns, &cfg),
        Command::Bounds { k, start, stop, step } => cmd_bounds(&mut out, k, start, stop, step),
        Command::Verify { suites, seed } => cmd_verify(&mut out, &suites, seed),
    };
    out.flush()?;
    result
}

fn cmd_eval<W: Write>(out: &mut RecordWriter<W>, z: &str, method: MethodArg, cfg: &QuadratureConfig) -> Result<(), Failure> {
    let z = parse_complex(z).map_err(Failure::usage)?;
    let k = kurepa_with(z, method.method(), cfg)?;
    out.write(&[
        ("z_re", z.re.into()),
        ("z_im", z.im.into()),
        ("value_re", k.value.re.into()),
        ("value_im", k.value.im.into()),
        ("abs_err", k.abs_err_estimate.into()),
        ("method", k.method.as_str().into()),
    ])?;
    Ok(())
}

/// Points `start + i·step` up to `stop` (inclusive, with a little slack for
/// rounding in the division).
fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Failure::usage("grid bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(Failure::usage(format!("step must be positive, got {step}")));
    }
    if start > stop {
        return Err(Failure::usage(format!("start {start} is greater than stop {stop}")));
    }
    let intervals = ((stop - start) / step + 1e-9).floor();
    if intervals >= MAX_GRID_POINTS as f64 {
        return Err(Failure::usage(format!("grid has more than {MAX_GRID_POINTS} points")));
    }
    Ok((0..=intervals as usize).map(|i| start + i as f64 * step).collect())
}

/// A value, the pole marker, or a hard failure.
fn cell_or_pole(r: kurepa_core::Result<f64>) -> Result<Cell, Failure> {
    match r {
        Ok(v) => Ok(Cell::Num(v)),
        Err(KurepaError::Pole { .. }) => Ok(Cell::from("pole")),
        Err(e) => Err(e.into()),
    }
}

fn real(x: f64) -> ComplexValue {
    ComplexValue::new(x, 0.0)
}

fn table_cell(column: Column, x: f64, cfg: &QuadratureConfig) -> Result<Cell, Failure> {
    match column {
        Column::K => cell_or_pole(kurepa_with(real(x), None, cfg).map(|k| k.value.re)),
        Column::DK => {
            if (0.0..=1.0).contains(&x) {
                Ok(Cell::Num(kurepa_derivative_with(x, cfg)?))
            } else {
                Ok(Cell::from("NA"))
            }
        }
        Column::Gamma => cell_or_pole(gamma(real(x)).map(|g| g.re)),
        Column::Ratio => {
            if x > 0.0 {
                Ok(Cell::Num(normalized_ratio_with(x, cfg)?))
            } else {
                cell_or_pole((|| Ok(kurepa_with(real(x), None, cfg)?.value.re / gamma(real(x + 1.0))?.re))())
            }
        }
    }
}

fn cmd_table<W: Write>(
    out: &mut RecordWriter<W>,
    start: f64,
    stop: f64,
    step: f64,
    columns: &[Column],
    cfg: &QuadratureConfig,
) -> Result<(), Failure> {
    if columns.is_empty() {
        return Err(Failure::usage("at least one column is required"));
    }
    let mut seen = Vec::new();
    for c in columns {
        if seen.contains(c) {
            return Err(Failure::usage(format!("column {} listed twice", c.name())));
        }
        seen.push(*c);
    }
    for x in grid(start, stop, step)? {
        let mut record = vec![("x", Cell::Num(x))];
        for &c in columns {
            record.push((c.name(), table_cell(c, x, cfg)?));
        }
        out.write(&record)?;
    }
    Ok(())
}

fn cmd_bounds<W: Write>(out: &mut RecordWriter<W>, k: u32, start: f64, stop: f64, step: f64) -> Result<(), Failure> {
    if k == 0 {
        return Err(Failure::usage("k must be a positive integer"));
    }
    let min_start = f64::from(k) + 2.0;
    if start < min_start {
        return Err(Failure::usage(format!("start must be at least k + 2 = {min_start}, got {start}")));
    }
    let mut rows = 0usize;
    let mut violations = 0usize;
    let mut min_left = f64::INFINITY;
    let mut min_right = f64::INFINITY;
    let mut max_left = f64::NEG_INFINITY;
    let mut max_right = f64::NEG_INFINITY;
    for x in grid(start, stop, step)? {
        let r = sandwich_bounds(k, x)?;
        rows += 1;
        if !(r.left_ok && r.right_ok) {
            violations += 1;
        }
        min_left = min_left.min(r.left_margin());
        min_right = min_right.min(r.right_margin());
        max_left = max_left.max(r.left_margin());
        max_right = max_right.max(r.right_margin());
        out.write(&[
            ("k", Cell::Int(i64::from(r.k))),
            ("x", r.x.into()),
            ("a_k", r.a_k.into()),
            ("b_k", r.b_k.into()),
            ("ratio", r.ratio.into()),
            ("gap", r.gap.into()),
            ("left_ok", r.left_ok.into()),
            ("right_ok", r.right_ok.into()),
            ("right_equality", r.right_equality.into()),
        ])?;
    }
    out.summary(&[
        ("rows", Cell::Int(rows as i64)),
        ("min_left_margin", min_left.into()),
        ("max_left_margin", max_left.into()),
        ("min_right_margin", min_right.into()),
        ("max_right_margin", max_right.into()),
        ("violations", Cell::Int(violations as i64)),
    ])?;
    if violations > 0 {
        return Err(Failure::checks(format!("{violations} of {rows} grid points violate the bounds")));
    }
    Ok(())
}

fn cmd_verify<W: Write>(out: &mut RecordWriter<W>, suites: &[String], seed: u64) -> Result<(), Failure> {
    let mut selected: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites
            .iter()
            .map(|s| s.trim().parse::<Suite>().map_err(Failure::usage))
            .collect::<Result<_, _>>()?
    };
    selected.sort();
    selected.dedup();

    let mut checks = 0usize;
    let mut failed_properties = 0usize;
    let mut per_suite = Vec::new();
    for suite in selected {
        let mut passed = 0usize;
        let mut failed = 0usize;
        let mut worst_residual = 0.0f64;
        for o in run_suite(suite, seed) {
            checks += o.checks;
            if o.passed() {
                passed += 1;
            } else {
                failed += 1;
            }
            if o.kind == CheckKind::Residual {
                worst_residual = worst_residual.max(o.worst);
            }
            out.write(&[
                ("suite", o.suite.name().into()),
                ("property", o.property.into()),
                ("kind", o.kind.as_str().into()),
                ("checks", Cell::Int(o.checks as i64)),
                ("failures", Cell::Int(o.failures as i64)),
                ("worst", o.worst.into()),
                ("threshold", o.threshold.into()),
                ("status", if o.passed() { "pass" } else { "fail" }.into()),
            ])?;
        }
        failed_properties += failed;
        per_suite.push((suite, passed, failed, worst_residual));
    }
    for (suite, passed, failed, worst_residual) in per_suite {
        out.summary(&[
            ("suite", suite.name().into()),
            ("passed", Cell::Int(passed as i64)),
            ("failed", Cell::Int(failed as i64)),
            ("worst_residual", worst_residual.into()),
        ])?;
    }
    out.summary(&[
        ("seed", Cell::Int(seed as i64)),
        ("checks", Cell::Int(checks as i64)),
        ("failed_properties", Cell::Int(failed_properties as i64)),
    ])?;
    if failed_properties > 0 {
        return Err(Failure::checks(format!("{failed_properties} properties failed")));
    }
    Ok(())
}

//! Command-line front end: `dist`, `moments`, `verify`, and `suppress`
//! subcommands over the library, with machine-readable JSON or CSV output.
//!
//! Exit codes: 0 success, 2 configuration errors (flags, compositions,
//! matrix files), 3 exact-count capacity errors, 4 verification failures.
//! JSON floats carry 17 significant digits so parsed output reproduces the
//! in-memory values exactly; `MULTIPHOTON_TOL` overrides the default
//! tolerance where a subcommand takes one.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::combinat::{CombinatError, Composition};
use crate::jsonfmt;
use crate::optics::{self, InterferometerMatrix, OpticsError};
use crate::oracle::{self, OracleError};
use crate::statistics::{self, StatisticsError};
use crate::suppress;
use crate::transition::{self, StatisticsKind, TransitionError};

pub const TOLERANCE_ENV_VAR: &str = "MULTIPHOTON_TOL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error(transparent)]
    Capacity(#[from] CombinatError),
    #[error("permanent oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("verification failed: {summary}")]
    VerificationFailed { summary: String, report: String },
    #[error("{0}")]
    Render(String),
}

impl From<StatisticsError> for CliError {
    fn from(e: StatisticsError) -> Self {
        match e {
            StatisticsError::Capacity(c) => CliError::Capacity(c),
            StatisticsError::Transition(t) => CliError::Transition(t),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Capacity(_) | CliError::Transition(TransitionError::Capacity(_)) => 3,
            CliError::VerificationFailed { .. } => 4,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "multiphoton",
    about = "Exact multiphoton interference statistics for linear interferometers",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Output distribution over all output configurations, per statistics.
    Dist(DistArgs),
    /// Factorial moments and cumulants of one output mode, closed form
    /// against brute force.
    Moments(MomentsArgs),
    /// Cross-check routing-class probabilities against the permanent oracle
    /// and the normalization constraint.
    Verify(VerifyArgs),
    /// List suppressed (zero-probability) outputs of an input configuration.
    Suppress(SuppressArgs),
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArgs {
    /// Beam splitter with transmittance T in [0, 1].
    #[arg(long, value_name = "T")]
    pub bs: Option<f64>,
    /// K-port Fourier (DFT) interferometer.
    #[arg(long, value_name = "K")]
    pub fourier: Option<usize>,
    /// Three-port interferometer from three mixing angles and a phase.
    #[arg(long, value_name = "T1,T2,T3,PHI")]
    pub tritter: Option<String>,
    /// JSON matrix file: {"k": .., "re": [[..]], "im": [[..]]}.
    #[arg(long, value_name = "PATH")]
    pub matrix: Option<PathBuf>,
    /// Skip the unitarity check when loading --matrix.
    #[arg(long)]
    pub allow_nonunitary: bool,
}

impl MatrixArgs {
    pub fn resolve(&self) -> Result<InterferometerMatrix, CliError> {
        let mut sources = 0;
        for present in [
            self.bs.is_some(),
            self.fourier.is_some(),
            self.tritter.is_some(),
            self.matrix.is_some(),
        ] {
            sources += usize::from(present);
        }
        if sources != 1 {
            return Err(CliError::Config(
                "exactly one of --bs, --fourier, --tritter, --matrix is required".into(),
            ));
        }
        if let Some(t) = self.bs {
            return Ok(optics::beam_splitter(t)?);
        }
        if let Some(k) = self.fourier {
            if k < 2 {
                return Err(CliError::Config(format!(
                    "--fourier needs at least 2 ports, got {k}"
                )));
            }
            return Ok(optics::fourier(k));
        }
        if let Some(angles) = &self.tritter {
            let parts: Result<Vec<f64>, _> =
                angles.split(',').map(|p| p.trim().parse::<f64>()).collect();
            let parts = parts.map_err(|_| {
                CliError::Config(format!(
                    "--tritter expects four comma-separated angles, got '{angles}'"
                ))
            })?;
            if parts.len() != 4 {
                return Err(CliError::Config(format!(
                    "--tritter expects four comma-separated angles, got {}",
                    parts.len()
                )));
            }
            return Ok(optics::tritter(parts[0], parts[1], parts[2], parts[3]));
        }
        let path = self.matrix.as_ref().expect("matrix source checked above");
        let m = if self.allow_nonunitary {
            optics::read_matrix_unvalidated(path)?
        } else {
            optics::read_matrix(path)?
        };
        Ok(m)
    }

    fn describe(&self) -> Value {
        if let Some(t) = self.bs {
            json!({"kind": "beam_splitter", "t": t})
        } else if let Some(k) = self.fourier {
            json!({"kind": "fourier", "k": k})
        } else if let Some(angles) = &self.tritter {
            json!({"kind": "tritter", "angles": angles})
        } else {
            json!({
                "kind": "file",
                "path": self.matrix.as_ref().map(|p| p.display().to_string()),
            })
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct DistArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Input composition, comma-separated photon counts per port.
    #[arg(long, value_name = "N1,N2,...")]
    pub input: Composition,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_name = "N1,N2,...")]
    pub input: Composition,
    /// Output mode (1-based port index).
    #[arg(long, value_name = "PORT", default_value_t = 1)]
    pub mode: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Optional single matrix to verify instead of the random grid.
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Largest port count of the random grid.
    #[arg(long, alias = "k", value_name = "K", default_value_t = 4)]
    pub k_max: usize,
    /// Largest photon number.
    #[arg(long, alias = "m", value_name = "M", default_value_t = 5)]
    pub m_max: u32,
    /// Number of seeded random unitaries per port count.
    #[arg(long, value_name = "N", default_value_t = 20)]
    pub seeds: u64,
    /// Max tolerated |P_routing - P_permanent| and normalization error.
    #[arg(long, value_name = "TOL")]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct SuppressArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_name = "N1,N2,...")]
    pub input: Composition,
    /// Probabilities below this absolute threshold count as suppressed.
    #[arg(long, value_name = "TOL")]
    pub threshold: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

fn tolerance_or(cli_value: Option<f64>, fallback: f64) -> Result<f64, CliError> {
    if let Some(v) = cli_value {
        return Ok(v);
    }
    match std::env::var(TOLERANCE_ENV_VAR) {
        Ok(text) => text.parse::<f64>().map_err(|_| {
            CliError::Config(format!(
                "{TOLERANCE_ENV_VAR} must hold a floating-point tolerance, got '{text}'"
            ))
        }),
        Err(_) => Ok(fallback),
    }
}

fn check_input(u: &InterferometerMatrix, input: &Composition) -> Result<(), CliError> {
    if input.k() != u.k() {
        return Err(CliError::Config(format!(
            "input composition has {} ports but the matrix has {}",
            input.k(),
            u.k()
        )));
    }
    Ok(())
}

/// A rendered table: named columns plus a JSON value per cell, convertible
/// to both output formats.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    extra: Vec<(&'static str, Value)>,
}

impl Table {
    fn render(&self, command: &str, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = serde_json::Map::new();
                        for (name, cell) in self.columns.iter().zip(row) {
                            obj.insert((*name).to_string(), cell.clone());
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let mut top = serde_json::Map::new();
                top.insert("command".into(), json!(command));
                for (name, value) in &self.extra {
                    top.insert((*name).to_string(), value.clone());
                }
                top.insert("rows".into(), Value::Array(rows));
                jsonfmt::to_string(&Value::Object(top))
                    .map_err(|e| CliError::Render(e.to_string()))
            }
            OutputFormat::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                writer
                    .write_record(&self.columns)
                    .map_err(|e| CliError::Render(e.to_string()))?;
                for row in &self.rows {
                    let record: Vec<String> = row.iter().map(csv_cell).collect();
                    writer
                        .write_record(&record)
                        .map_err(|e| CliError::Render(e.to_string()))?;
                }
                let bytes = writer
                    .into_inner()
                    .map_err(|e| CliError::Render(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

fn csv_cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn composition_value(c: &Composition) -> Value {
    Value::Array(c.counts().iter().map(|&x| json!(x)).collect())
}

fn float_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// One row per output composition: bosonic, classical, and (where defined)
/// fermionic probabilities, plus the quantum-to-classical ratio.
pub fn cmd_dist(args: &DistArgs) -> Result<String, CliError> {
    let u = args.matrix.resolve()?;
    check_input(&u, &args.input)?;
    let n = &args.input;
    let fermions_apply = n.is_collision_free() && n.total() as usize <= u.k();
    let mut rows = Vec::new();
    for c in crate::combinat::enumerate_compositions(n.total(), u.k()) {
        let q = transition::p_quantum(&u, n, &c)?;
        let cl = transition::p_classical(&u, n, &c)?;
        let fermion = if fermions_apply {
            if c.is_collision_free() {
                float_value(transition::clamp_probability(
                    transition::p_fermionic(&u, n, &c)?.probability,
                ))
            } else {
                float_value(0.0)
            }
        } else {
            Value::Null
        };
        let ratio = match q.ratio {
            Some(r) => float_value(r),
            None => Value::Null,
        };
        rows.push(vec![
            composition_value(&c),
            float_value(transition::clamp_probability(q.probability)),
            float_value(transition::clamp_probability(cl.probability)),
            fermion,
            ratio,
        ]);
    }
    let table = Table {
        columns: vec!["output", "p_boson", "p_classical", "p_fermion", "ratio"],
        rows,
        extra: vec![
            ("matrix", args.matrix.describe()),
            ("input", composition_value(n)),
        ],
    };
    table.render("dist", args.format)
}

/// Closed-form and brute-force moment columns with their absolute
/// difference, for factorial moments, mean, variance, and cumulants.
pub fn cmd_moments(args: &MomentsArgs) -> Result<String, CliError> {
    let u = args.matrix.resolve()?;
    check_input(&u, &args.input)?;
    if args.mode == 0 || args.mode > u.k() {
        return Err(CliError::Config(format!(
            "--mode must be a port index in 1..={}, got {}",
            u.k(),
            args.mode
        )));
    }
    let n = &args.input;
    let mode = args.mode - 1;
    let report = statistics::moment_report(&u, n, mode)?;
    let dist_q = transition::output_distribution(&u, n, StatisticsKind::Boson)?;
    let dist_c = transition::output_distribution(&u, n, StatisticsKind::Distinguishable)?;
    let brute_q = statistics::moments_bruteforce(&dist_q, mode, 4);
    let brute_c = statistics::moments_bruteforce(&dist_c, mode, 4);
    let brute_kq = statistics::cumulants_bruteforce(&dist_q, mode);
    let brute_kc = statistics::cumulants_bruteforce(&dist_c, mode);

    let mut rows = Vec::new();
    let mut push = |quantity: String, kind: &str, closed: f64, brute: f64| {
        rows.push(vec![
            json!(quantity),
            json!(kind),
            float_value(closed),
            float_value(brute),
            float_value((closed - brute).abs()),
        ]);
    };
    for r in 0..4 {
        push(
            format!("factorial_moment_r{}", r + 1),
            "boson",
            report.factorial_moments_quantum[r],
            brute_q[r],
        );
        push(
            format!("factorial_moment_r{}", r + 1),
            "classical",
            report.factorial_moments_classical[r],
            brute_c[r],
        );
    }
    push("mean".into(), "boson", report.mean, brute_q[0]);
    push("mean".into(), "classical", report.mean, brute_c[0]);
    push(
        "variance".into(),
        "boson",
        report.variance_quantum,
        brute_kq[1],
    );
    push(
        "variance".into(),
        "classical",
        report.variance_classical,
        brute_kc[1],
    );
    for r in 0..4 {
        push(
            format!("kappa{}", r + 1),
            "boson",
            report.cumulants_quantum[r],
            brute_kq[r],
        );
        push(
            format!("kappa{}", r + 1),
            "classical",
            report.cumulants_classical[r],
            brute_kc[r],
        );
    }
    let table = Table {
        columns: vec!["quantity", "kind", "closed_form", "brute_force", "abs_diff"],
        rows,
        extra: vec![
            ("matrix", args.matrix.describe()),
            ("input", composition_value(n)),
            ("mode", json!(args.mode)),
        ],
    };
    table.render("moments", args.format)
}

struct VerifyOutcome {
    rows: Vec<Vec<Value>>,
    max_oracle_dev: f64,
    max_norm_dev: f64,
    max_fermion_dev: f64,
    fermion_checked: bool,
}

fn verify_matrix(
    label: &str,
    u: &InterferometerMatrix,
    m_max: u32,
    outcome: &mut VerifyOutcome,
) -> Result<(), CliError> {
    let k = u.k();
    for m in 1..=m_max {
        let comps: Vec<Composition> =
            crate::combinat::enumerate_compositions(m, k).collect();
        let mut oracle_dev: f64 = 0.0;
        let mut norm_dev: f64 = 0.0;
        let mut fermion_dev: f64 = 0.0;
        for n in &comps {
            let mut total = 0.0;
            for c in &comps {
                let routing = transition::p_quantum(u, n, c)?.probability;
                let permanent = oracle::p_via_permanent(u, n, c)?;
                oracle_dev = oracle_dev.max((routing - permanent).abs());
                total += routing;
            }
            norm_dev = norm_dev.max((total - 1.0).abs());
            if m as usize <= k && n.is_collision_free() {
                for c in comps.iter().filter(|c| c.is_collision_free()) {
                    let routing = transition::p_fermionic(u, n, c)?.probability;
                    let det = oracle::determinant(&oracle::scattering_submatrix(u, n, c));
                    fermion_dev = fermion_dev.max((routing - det.norm_sqr()).abs());
                    outcome.fermion_checked = true;
                }
            }
        }
        outcome.rows.push(vec![
            json!(label),
            json!(k),
            json!(m),
            float_value(oracle_dev),
            float_value(norm_dev),
            float_value(fermion_dev),
        ]);
        outcome.max_oracle_dev = outcome.max_oracle_dev.max(oracle_dev);
        outcome.max_norm_dev = outcome.max_norm_dev.max(norm_dev);
        outcome.max_fermion_dev = outcome.max_fermion_dev.max(fermion_dev);
    }
    Ok(())
}

/// Runs the oracle-equivalence and normalization grid; errors with a
/// nonzero exit code when any deviation exceeds the tolerance.
pub fn cmd_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let tol = tolerance_or(args.tol, 1e-10)?;
    let mut outcome = VerifyOutcome {
        rows: Vec::new(),
        max_oracle_dev: 0.0,
        max_norm_dev: 0.0,
        max_fermion_dev: 0.0,
        fermion_checked: false,
    };
    let explicit_matrix = args.matrix.bs.is_some()
        || args.matrix.fourier.is_some()
        || args.matrix.tritter.is_some()
        || args.matrix.matrix.is_some();
    if explicit_matrix {
        let u = args.matrix.resolve()?;
        verify_matrix("explicit", &u, args.m_max, &mut outcome)?;
    } else {
        if args.k_max < 2 {
            return Err(CliError::Config(format!(
                "--k-max must be at least 2, got {}",
                args.k_max
            )));
        }
        for k in 2..=args.k_max {
            for seed in 0..args.seeds {
                let u = optics::random_unitary(k, seed);
                verify_matrix(&format!("random(k={k}, seed={seed})"), &u, args.m_max, &mut outcome)?;
            }
        }
    }
    let pass = outcome.max_oracle_dev <= tol
        && outcome.max_norm_dev <= tol
        && outcome.max_fermion_dev <= tol;
    let table = Table {
        columns: vec![
            "matrix",
            "k",
            "m",
            "max_oracle_deviation",
            "max_normalization_deviation",
            "max_fermion_deviation",
        ],
        rows: outcome.rows,
        extra: vec![
            ("tolerance", float_value(tol)),
            ("max_oracle_deviation", float_value(outcome.max_oracle_dev)),
            (
                "max_normalization_deviation",
                float_value(outcome.max_norm_dev),
            ),
            (
                "max_fermion_deviation",
                if outcome.fermion_checked {
                    float_value(outcome.max_fermion_dev)
                } else {
                    Value::Null
                },
            ),
            ("pass", json!(pass)),
        ],
    };
    let report = table.render("verify", args.format)?;
    if pass {
        Ok(report)
    } else {
        Err(CliError::VerificationFailed {
            summary: format!(
                "max oracle deviation {:.3e}, max normalization deviation {:.3e}, tolerance {tol:.1e}",
                outcome.max_oracle_dev, outcome.max_norm_dev
            ),
            report,
        })
    }
}

/// Lists suppressed outputs of one input configuration.
pub fn cmd_suppress(args: &SuppressArgs) -> Result<String, CliError> {
    let u = args.matrix.resolve()?;
    check_input(&u, &args.input)?;
    let threshold = tolerance_or(args.threshold, suppress::DEFAULT_SUPPRESSION_THRESHOLD)?;
    let records = suppress::scan_suppressed(&u, &args.input, threshold)?;
    let rows = records
        .iter()
        .map(|r| {
            vec![
                composition_value(&r.input),
                composition_value(&r.output),
                float_value(transition::clamp_probability(r.probability)),
                r.predicted_by_rule
                    .map(|tag| json!(tag.to_string()))
                    .unwrap_or(Value::Null),
            ]
        })
        .collect();
    let table = Table {
        columns: vec!["input", "output", "probability", "rule"],
        rows,
        extra: vec![
            ("matrix", args.matrix.describe()),
            ("threshold", float_value(threshold)),
        ],
    };
    table.render("suppress", args.format)
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Dist(args) => cmd_dist(args),
        Command::Moments(args) => cmd_moments(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Suppress(args) => cmd_suppress(args),
    }
}

/// Entry point for the binary: parses `std::env::args`, prints the result,
/// and maps errors onto the documented exit codes.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::VerificationFailed { summary, report }) => {
            println!("{report}");
            eprintln!("verification failed: {summary}");
            ExitCode::from(4)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

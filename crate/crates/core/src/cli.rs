//! The `defzero` command line.
//!
//! Exit codes: 0 on success, 1 for usage or configuration errors (including
//! a missing input file), 2 when an input file cannot be parsed.
//!
//! Tables go to stdout or `--out PATH` as CSV (default) or JSON. A CSV table
//! starts with one `#` comment line echoing every input, seeds included; a
//! JSON document is a single object with `schema_version`, `command`,
//! `config` and `rows`. `DEFZERO_THREADS` caps the worker threads; results
//! other than `wall_time_ms` do not depend on it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::er_sampler::{sample_er_network, ErTrialConfig};
use crate::experiments::{
    estimate_four_species_given_paired, estimate_isolated_tail, estimate_matrix_independence,
    estimate_paired_given_def_zero, exact_def_zero_prob_small, sweep_threshold,
    ConditionalEstimate, EstimateRow, ExperimentError, IsolatedTailSpec, SweepSpec,
};
use crate::netparse::{parse_network, serialize_network, to_reaction_network, NetworkDocument};
use crate::network_core::{deficiency, DeficiencyReport};

pub const SCHEMA_VERSION: &str = "1";
pub const THREADS_ENV: &str = "DEFZERO_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "defzero",
    version,
    about = "Deficiency of random binary reaction networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Deficiency report of a network file
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Draw one Erdős–Rényi network and report its deficiency
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the sampled network to this file (`-` for stdout)
        #[arg(long, value_name = "PATH")]
        emit_network: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Estimate P(deficiency = 0) along p = c * n^-beta
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        n_grid: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run one of the supporting experiments
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// `csv`, `json`, or a file path (format taken from a `.json` extension)
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum)]
    format: Option<TableFormat>,
}

impl OutputArgs {
    fn resolve(&self) -> (TableFormat, Option<PathBuf>) {
        match self.out.as_deref() {
            None => (self.format.unwrap_or(TableFormat::Csv), None),
            Some("csv") => (self.format.unwrap_or(TableFormat::Csv), None),
            Some("json") => (self.format.unwrap_or(TableFormat::Json), None),
            Some(path) => {
                let by_ext = if Path::new(path).extension().is_some_and(|e| e == "json") {
                    TableFormat::Json
                } else {
                    TableFormat::Csv
                };
                (self.format.unwrap_or(by_ext), Some(PathBuf::from(path)))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    Isolated,
    FourSpecies,
    MatrixIndep,
    PairedGivenDefzero,
    ExactSmall,
}

impl Experiment {
    fn name(self) -> &'static str {
        match self {
            Experiment::Isolated => "isolated",
            Experiment::FourSpecies => "four-species",
            Experiment::MatrixIndep => "matrix-indep",
            Experiment::PairedGivenDefzero => "paired-given-defzero",
            Experiment::ExactSmall => "exact-small",
        }
    }
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    name: Experiment,
    /// Species counts, comma separated; one row per value
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Pairs (four-species) or columns (matrix-indep)
    #[arg(long)]
    k: Option<usize>,
    /// Edge probability (paired-given-defzero, exact-small)
    #[arg(long)]
    p: Option<f64>,
    /// isolated: alpha_n = alpha_scale * n^alpha_power
    #[arg(long, default_value_t = 1.0)]
    alpha_scale: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha_power: f64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI writing to the given streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };

    let threads = match thread_count() {
        Ok(t) => t,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let buffered = |cmd: Command| {
        let mut buf = Vec::new();
        dispatch(cmd, &mut buf).map(|()| buf)
    };
    let result = match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| buffered(cli.command)),
            Err(e) => Err(Failure::usage(format!("cannot start {t} threads: {e}"))),
        },
        None => buffered(cli.command),
    };
    match result.and_then(|buf| out.write_all(&buf).map_err(io_failure)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn thread_count() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Failure::usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Analyze { path, format } => cmd_analyze(&path, format, out),
        Command::Sample {
            n,
            p,
            seed,
            emit_network,
            format,
        } => cmd_sample(n, p, seed, emit_network.as_deref(), format, out),
        Command::Sweep {
            n_grid,
            c,
            beta,
            trials,
            seed,
            output,
        } => {
            let spec = SweepSpec {
                n_grid,
                c,
                beta,
                trials,
                master_seed: seed,
            };
            cmd_sweep(&spec, &output, out)
        }
        Command::Experiment(args) => cmd_experiment(&args, out),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::usage(format!("write failed: {e}"))
}

fn read_document(path: &Path) -> Result<NetworkDocument, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|e| Failure::data(format!("{}: not valid UTF-8: {e}", path.display())))?;
    parse_network(&text).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn report_text(report: &DeficiencyReport, species: &[String]) -> String {
    if report.num_reactions == 0 {
        return "empty network, deficiency: 0\n".to_string();
    }
    let mut s = String::new();
    let _ = writeln!(s, "species: {}", report.num_species);
    if !species.is_empty() {
        let _ = writeln!(s, "species order: {}", species.join(" "));
    }
    let _ = writeln!(s, "reactions: {}", report.num_reactions);
    let _ = writeln!(s, "complexes: {}", report.num_complexes);
    let _ = writeln!(s, "linkage classes: {}", report.num_components);
    let _ = writeln!(s, "rank: {}", report.rank);
    let _ = writeln!(s, "deficiency: {}", report.deficiency);
    let _ = writeln!(
        s,
        "paired: {} ({} component{})",
        if report.is_paired { "yes" } else { "no" },
        report.num_components,
        if report.num_components == 1 { "" } else { "s" }
    );
    let _ = writeln!(
        s,
        "{:>9} {:>9} {:>5} {:>10}",
        "component", "complexes", "rank", "deficiency"
    );
    for (i, c) in report.components.iter().enumerate() {
        let _ = writeln!(
            s,
            "{:>9} {:>9} {:>5} {:>10}",
            i + 1,
            c.num_complexes,
            c.rank,
            c.deficiency
        );
    }
    s
}

fn record(command: &str, config: Value, rows: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "rows": rows,
    })
}

fn to_json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_analyze(path: &Path, format: ReportFormat, out: &mut dyn Write) -> Result<(), Failure> {
    let doc = read_document(path)?;
    let report = deficiency(&to_reaction_network(&doc));
    let text = match format {
        ReportFormat::Text => report_text(&report, doc.species()),
        ReportFormat::Json => to_json_line(&record(
            "analyze",
            json!({ "path": path.display().to_string(), "species_order": doc.species() }),
            json!([report]),
        )),
    };
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn cmd_sample(
    n: usize,
    p: f64,
    seed: u64,
    emit: Option<&Path>,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let cfg = ErTrialConfig::new(n, p, seed).map_err(|e| Failure::usage(e.to_string()))?;
    let net = sample_er_network(&cfg).map_err(|e| Failure::usage(e.to_string()))?;
    let report = deficiency(&net);
    let network_text = serialize_network(&NetworkDocument::from_network(&net));

    let mut text = match format {
        ReportFormat::Text => {
            format!("# defzero schema={SCHEMA_VERSION} command=sample n={n} p={p} seed={seed}\n")
                + &report_text(&report, &[])
        }
        ReportFormat::Json => to_json_line(&record("sample", json!(cfg), json!([report]))),
    };
    match emit {
        Some(path) if path == Path::new("-") => text.push_str(&network_text),
        Some(path) => std::fs::write(path, &network_text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => {}
    }
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// CSV columns of an estimate table.
#[derive(Clone, Copy)]
enum Columns {
    Probability,
    Size,
}

impl Columns {
    fn header(self) -> &'static str {
        match self {
            Columns::Probability => "n,p,trials,successes,estimate,ci_low,ci_high,wall_time_ms",
            Columns::Size => "n,k,trials,successes,estimate,ci_low,ci_high,wall_time_ms",
        }
    }

    fn row(self, r: &EstimateRow) -> String {
        let second = match self {
            Columns::Probability => fmt_opt(r.p),
            Columns::Size => r.k.map_or_else(String::new, |k| k.to_string()),
        };
        format!(
            "{},{second},{},{},{},{},{},{}",
            r.n, r.trials, r.successes, r.estimate, r.ci_low, r.ci_high, r.wall_time_ms
        )
    }
}

fn csv_comment(command: &str, config: &Value) -> String {
    let mut s = format!("# defzero schema={SCHEMA_VERSION} command={command}");
    if let Value::Object(map) = config {
        for (k, v) in map {
            let v = match v {
                Value::Array(items) => items
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            let _ = write!(s, " {k}={v}");
        }
    }
    s.push('\n');
    s
}

fn emit_table(
    output: &OutputArgs,
    json_doc: Value,
    csv: String,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let (format, path) = output.resolve();
    let text = match format {
        TableFormat::Csv => csv,
        TableFormat::Json => to_json_line(&json_doc),
    };
    match path {
        Some(p) => std::fs::write(&p, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_failure),
    }
}

fn estimate_table(
    command: &str,
    config: Value,
    rows: &[EstimateRow],
    cols: Columns,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let mut csv = csv_comment(command, &config);
    csv.push_str(cols.header());
    csv.push('\n');
    for r in rows {
        csv.push_str(&cols.row(r));
        csv.push('\n');
    }
    emit_table(output, record(command, config, json!(rows)), csv, out)
}

fn cmd_sweep(spec: &SweepSpec, output: &OutputArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let rows = sweep_threshold(spec)?;
    let config = json!({
        "n_grid": spec.n_grid,
        "c": spec.c,
        "beta": spec.beta,
        "trials": spec.trials,
        "seed": spec.master_seed,
    });
    estimate_table("sweep", config, &rows, Columns::Probability, output, out)
}

fn require<T>(v: Option<T>, flag: &str, exp: Experiment) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("experiment {} requires --{flag}", exp.name())))
}

fn cmd_experiment(args: &ExperimentArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let exp = args.name;
    let command = format!("experiment {}", exp.name());
    let mut config = json!({
        "experiment": exp.name(),
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
    });
    let set = |config: &mut Value, k: &str, v: Value| {
        config
            .as_object_mut()
            .expect("object")
            .insert(k.to_string(), v);
    };

    match exp {
        Experiment::Isolated => {
            set(&mut config, "alpha_scale", json!(args.alpha_scale));
            set(&mut config, "alpha_power", json!(args.alpha_power));
            let rows = args
                .n
                .iter()
                .map(|&n| {
                    estimate_isolated_tail(&IsolatedTailSpec {
                        n,
                        alpha: args.alpha_scale * (n as f64).powf(args.alpha_power),
                        trials: args.trials,
                        seed: args.seed,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            estimate_table(
                &command,
                config,
                &rows,
                Columns::Probability,
                &args.output,
                out,
            )
        }
        Experiment::FourSpecies | Experiment::MatrixIndep => {
            let k = require(args.k, "k", exp)?;
            set(&mut config, "k", json!(k));
            let rows = args
                .n
                .iter()
                .map(|&n| match exp {
                    Experiment::FourSpecies => {
                        estimate_four_species_given_paired(n, k, args.trials, args.seed)
                    }
                    _ => estimate_matrix_independence(n, k, args.trials, args.seed),
                })
                .collect::<Result<Vec<_>, _>>()?;
            estimate_table(&command, config, &rows, Columns::Size, &args.output, out)
        }
        Experiment::PairedGivenDefzero => {
            let p = require(args.p, "p", exp)?;
            set(&mut config, "p", json!(p));
            let results = args
                .n
                .iter()
                .map(|&n| {
                    let cfg = ErTrialConfig::new(n, p, args.seed).map_err(ExperimentError::from)?;
                    estimate_paired_given_def_zero(&cfg, args.trials)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut csv = csv_comment(&command, &config);
            csv.push_str(
                "n,p,trials,conditioning,successes,estimate,ci_low,ci_high,wall_time_ms\n",
            );
            for (n, c) in args.n.iter().zip(&results) {
                csv.push_str(&conditional_csv_row(*n, p, c));
            }
            emit_table(
                &args.output,
                record(&command, config, json!(results)),
                csv,
                out,
            )
        }
        Experiment::ExactSmall => {
            let p = require(args.p, "p", exp)?;
            set(&mut config, "p", json!(p));
            let mut rows = Vec::new();
            let mut csv = csv_comment(&command, &config);
            csv.push_str("n,p,probability\n");
            for &n in &args.n {
                let prob = exact_def_zero_prob_small(n, p)?;
                let _ = writeln!(csv, "{n},{p},{prob}");
                rows.push(json!({ "n": n, "p": p, "probability": prob }));
            }
            emit_table(
                &args.output,
                record(&command, config, json!(rows)),
                csv,
                out,
            )
        }
    }
}

fn conditional_csv_row(n: usize, p: f64, c: &ConditionalEstimate) -> String {
    match &c.row {
        Some(r) => format!(
            "{n},{p},{},{},{},{},{},{},{}\n",
            c.total_trials,
            c.conditioning_count,
            c.paired_count,
            r.estimate,
            r.ci_low,
            r.ci_high,
            r.wall_time_ms
        ),
        None => format!("{n},{p},{},0,0,undefined,,,\n", c.total_trials),
    }
}

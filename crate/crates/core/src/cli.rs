//! Command-line driver.
//!
//! Machine-readable results go to stdout or `--output`; progress, per-round
//! statistics and warnings go to stderr.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cer::to_c_database;
use crate::io::{
    c_database_to_string, parse_esequence_db, parse_utility_table, write_patterns, ParseReport,
    PatternFormat,
};
use crate::miner::{mine, MinerConfig, Pruning, ThresholdMode};
use crate::model::{DefaultPolicy, ESequenceDatabase, UtilityTable};
use crate::oracle::differential::{reference_miner, verify, VerifyOptions};

/// Exit status for usage and configuration errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for runtime failures (I/O, parse errors, verification mismatch).
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "huip", version, about = "High-utility interval-based pattern miner")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine high-utility patterns from an interval database.
    Mine(MineArgs),
    /// Dump the coincidence eventset representation of a database.
    Convert(ConvertArgs),
    /// Check the miner against the brute-force oracle on random databases.
    Verify(VerifyArgs),
    /// Summarize a dataset.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PruningArg {
    Ldcp,
    Sdcp,
    None,
}

impl From<PruningArg> for Pruning {
    fn from(p: PruningArg) -> Self {
        match p {
            PruningArg::Ldcp => Pruning::Ldcp,
            PruningArg::Sdcp => Pruning::Sdcp,
            PruningArg::None => Pruning::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Tsv,
    Jsonl,
}

impl From<FormatArg> for PatternFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tsv => PatternFormat::Tsv,
            FormatArg::Jsonl => PatternFormat::Jsonl,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnmappedArg {
    /// Unmapped labels are worth 1.
    One,
    /// Unmapped labels are an error.
    Reject,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// TAB-separated `label utility` file; every label is worth 1 without it.
    #[arg(long)]
    pub utilities: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "one")]
    pub unmapped: UnmappedArg,
    #[arg(long)]
    pub threshold: f64,
    /// Threshold is a fraction of the database utility (default).
    #[arg(long, conflicts_with = "absolute")]
    pub relative: bool,
    /// Threshold is a utility value.
    #[arg(long)]
    pub absolute: bool,
    #[arg(long, default_value_t = 4)]
    pub max_length: usize,
    #[arg(long, default_value_t = 5)]
    pub max_size: usize,
    #[arg(long, value_enum, default_value = "ldcp")]
    pub pruning: PruningArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: FormatArg,
    /// Worker threads for candidate evaluation (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub runs: usize,
    #[arg(long, value_enum, default_value = "ldcp")]
    pub pruning: PruningArg,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Runs the CLI with explicit streams; returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return e.exit_code();
        }
    };
    let outcome = match &cli.command {
        Command::Mine(args) => cmd_mine(args, stdout, stderr),
        Command::Convert(args) => cmd_convert(args, stdout),
        Command::Verify(args) => cmd_verify(args, stdout),
        Command::Stats(args) => cmd_stats(args, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn with_threads<T, F>(threads: Option<usize>, f: F) -> Result<T, Failure>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match threads {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure::Runtime(e.to_string())),
    }
}

fn read_database(path: &Path) -> Result<(ESequenceDatabase, ParseReport), Failure> {
    let file = File::open(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    parse_esequence_db(BufReader::new(file))
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn report_parse(report: &ParseReport, stderr: &mut dyn Write) {
    for r in &report.rejected {
        let _ = writeln!(stderr, "warning: line {} rejected: {}", r.line, r.reason);
    }
    for w in &report.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
}

fn open_output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(stdout),
    })
}

fn cmd_mine(args: &MineArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = MinerConfig {
        threshold: args.threshold,
        threshold_mode: if args.absolute {
            ThresholdMode::Absolute
        } else {
            ThresholdMode::Relative
        },
        max_length: args.max_length,
        max_size: args.max_size,
        pruning: args.pruning.into(),
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    let policy = match args.unmapped {
        UnmappedArg::One => DefaultPolicy::DefaultOne,
        UnmappedArg::Reject => DefaultPolicy::Reject,
    };
    let utilities = match &args.utilities {
        Some(path) => {
            let file = File::open(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
            parse_utility_table(BufReader::new(file), policy)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?
        }
        None => UtilityTable::new(policy),
    };
    let (db, report) = read_database(&args.input)?;
    report_parse(&report, stderr);

    let result = with_threads(args.threads, || mine(&db, &utilities, &cfg))??;
    if args.utilities.is_some() {
        for label in &result.defaulted_labels {
            let _ = writeln!(stderr, "warning: no utility for label {label:?}; using 1");
        }
    }
    for r in &result.stats.rounds {
        let _ = writeln!(
            stderr,
            "{} round {}: generated {}, pruned {}, promising {}, high-utility {}, {:.3} ms",
            r.phase,
            r.round,
            r.generated,
            r.pruned,
            r.promising,
            r.high_utility,
            r.elapsed.as_secs_f64() * 1e3
        );
    }
    let _ = writeln!(
        stderr,
        "{} patterns at threshold {} ({} pruning)",
        result.len(),
        result.threshold,
        cfg.pruning
    );

    let mut out = open_output(&args.output, stdout)?;
    write_patterns(&mut out, &result.patterns(), db.alphabet(), args.format.into())?;
    out.flush()?;
    Ok(0)
}

fn cmd_convert(args: &ConvertArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (db, _) = read_database(&args.input)?;
    let dump = c_database_to_string(&to_c_database(&db));
    let mut out = open_output(&args.output, stdout)?;
    out.write_all(dump.as_bytes())?;
    out.flush()?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let opts = VerifyOptions {
        seed: args.seed,
        runs: args.runs,
        pruning: args.pruning.into(),
        ..Default::default()
    };
    let report = with_threads(args.threads, || verify(&opts, &reference_miner))?;
    writeln!(stdout, "{report}")?;
    Ok(if report.is_success() { 0 } else { EXIT_FAILURE })
}

/// Dataset summary columns.
#[derive(Clone, Debug, PartialEq)]
pub struct DatasetStats {
    pub intervals: usize,
    pub sequences: usize,
    pub size_min: usize,
    pub size_max: usize,
    pub size_avg: f64,
    pub labels: usize,
    pub duration_min: u64,
    pub duration_max: u64,
    pub duration_avg: f64,
    /// Population standard deviation.
    pub duration_stdv: f64,
}

pub fn dataset_stats(db: &ESequenceDatabase) -> DatasetStats {
    let sizes: Vec<usize> = db.sequences().iter().map(|s| s.len()).collect();
    let durations: Vec<u64> = db
        .sequences()
        .iter()
        .flat_map(|s| s.intervals().iter().map(|e| e.duration()))
        .collect();
    let n = durations.len().max(1) as f64;
    let mean = durations.iter().map(|&d| d as f64).sum::<f64>() / n;
    let var = durations.iter().map(|&d| (d as f64 - mean).powi(2)).sum::<f64>() / n;
    DatasetStats {
        intervals: durations.len(),
        sequences: sizes.len(),
        size_min: sizes.iter().copied().min().unwrap_or(0),
        size_max: sizes.iter().copied().max().unwrap_or(0),
        size_avg: sizes.iter().sum::<usize>() as f64 / sizes.len().max(1) as f64,
        labels: db.alphabet().len(),
        duration_min: durations.iter().copied().min().unwrap_or(0),
        duration_max: durations.iter().copied().max().unwrap_or(0),
        duration_avg: mean,
        duration_stdv: var.sqrt(),
    }
}

pub const STATS_HEADER: &str =
    "intervals\tsequences\tsize_min\tsize_max\tsize_avg\tlabels\tduration_min\tduration_max\tduration_avg\tduration_stdv";

impl DatasetStats {
    /// One TSV row; averages and deviation rounded to integers.
    pub fn to_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.intervals,
            self.sequences,
            self.size_min,
            self.size_max,
            self.size_avg.round(),
            self.labels,
            self.duration_min,
            self.duration_max,
            self.duration_avg.round(),
            self.duration_stdv.round()
        )
    }
}

fn cmd_stats(args: &StatsArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (db, _) = read_database(&args.input)?;
    let stats = dataset_stats(&db);
    writeln!(stdout, "{STATS_HEADER}")?;
    writeln!(stdout, "{}", stats.to_row())?;
    Ok(0)
}

/// Entry point for the binary.
pub fn main_with_std() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run(std::env::args_os(), &mut out, &mut err)
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or config error,
//! 3 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchConfig, BenchEntry};
use crate::flows::{Engine, FlowScores};
use crate::generate::{default_criteria, generate_with, DEFAULT_P, DEFAULT_Q};
use crate::io::{self, DataError, RunConfig};
use crate::model::{OrientedMatrix, PreferenceKind};
use crate::ranking::{rank_promethee1, rank_promethee2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Largest flow difference `verify` accepts between the two engines.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "promethee",
    version,
    about = "Exact PROMETHEE I/II flow scores and rankings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded uniform [0, 1) decision matrix.
    Gen(GenArgs),
    /// Compute flow scores.
    Flows(FlowsArgs),
    /// Compute a PROMETHEE II or PROMETHEE I ranking.
    Rank(RankArgs),
    /// Run both engines and compare their flows.
    Verify(InputArgs),
    /// Time both engines on doubling problem sizes.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    Linear,
    Level,
}

impl From<Function> for PreferenceKind {
    fn from(f: Function) -> Self {
        match f {
            Function::Linear => PreferenceKind::Linear,
            Function::Level => PreferenceKind::Level,
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Number of alternatives.
    #[arg(long)]
    n: usize,
    /// Number of criteria.
    #[arg(long, default_value_t = 1)]
    q: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Data CSV to write.
    #[arg(long, short)]
    output: PathBuf,
    /// Also write a matching JSON config here.
    #[arg(long)]
    config_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Function::Linear)]
    function: Function,
    /// Indifference threshold for the written config.
    #[arg(long, default_value_t = DEFAULT_Q)]
    indifference: f64,
    /// Preference threshold for the written config.
    #[arg(long, default_value_t = DEFAULT_P)]
    preference: f64,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Evaluation CSV (`id,<crit1>,...`).
    #[arg(long)]
    data: PathBuf,
    /// JSON config with the criteria.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Debug, Args)]
struct FlowsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Engine::Sbp)]
    engine: Engine,
    /// Output CSV; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Complete ranking by net flow.
    Ii,
    /// Partial ranking from positive and negative flows.
    I,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Engine::Sbp)]
    engine: Engine,
    #[arg(long, value_enum, default_value_t = Method::Ii)]
    method: Method,
    /// Overrides `tie_eps` from the config.
    #[arg(long)]
    tie_eps: Option<f64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated ascending sizes. Defaults to 2^min-exp .. 2^max-exp.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 10)]
    min_exp: u32,
    #[arg(long, default_value_t = 16)]
    max_exp: u32,
    /// Number of criteria.
    #[arg(long, default_value_t = 1)]
    q: usize,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "naive,sbp")]
    engines: Vec<Engine>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = bench::DEFAULT_MAX_NAIVE_N)]
    max_naive_n: usize,
    #[arg(long, value_enum, default_value_t = Function::Linear)]
    function: Function,
    #[arg(long, default_value_t = DEFAULT_Q)]
    indifference: f64,
    #[arg(long, default_value_t = DEFAULT_P)]
    preference: f64,
    /// Let the engines use every worker thread instead of one.
    #[arg(long)]
    parallel: bool,
    /// Output CSV; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Data(String),
    Verify(String),
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Flows(a) => cmd_flows(a),
        Command::Rank(a) => cmd_rank(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            EXIT_DATA
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_VERIFY
        }
    }
}

fn load(input: &InputArgs) -> Result<(OrientedMatrix, RunConfig), Failure> {
    let table = io::load_matrix(&input.data)?;
    let config = io::load_config(&input.config)?;
    let matrix = config.build_matrix(&table)?;
    let oriented = OrientedMatrix::new(&matrix).map_err(DataError::from)?;
    Ok((oriented, config))
}

/// Writes the finished buffer in one go so failures never leave a partial file.
fn emit(output: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn cmd_gen(a: GenArgs) -> Result<(), Failure> {
    let criteria = default_criteria(a.q, a.function.into(), a.indifference, a.preference);
    let matrix = generate_with(a.n, criteria, a.seed).map_err(|e| Failure::Data(e.to_string()))?;
    let mut data = Vec::new();
    io::write_matrix(&mut data, &matrix)?;
    emit(Some(&a.output), &data)?;
    if let Some(path) = a.config_out {
        let mut config = Vec::new();
        io::write_config(&mut config, &RunConfig::from_criteria(matrix.criteria()))?;
        config.push(b'\n');
        emit(Some(&path), &config)?;
    }
    Ok(())
}

fn flows_csv(flows: &FlowScores) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    io::write_flows(&mut buf, flows)?;
    Ok(buf)
}

fn cmd_flows(a: FlowsArgs) -> Result<(), Failure> {
    let (matrix, _) = load(&a.input)?;
    let flows = a.engine.flows(&matrix);
    emit(a.output.as_deref(), &flows_csv(&flows)?)
}

fn cmd_rank(a: RankArgs) -> Result<(), Failure> {
    let (matrix, config) = load(&a.input)?;
    let tie_eps = a.tie_eps.unwrap_or(config.tie_eps);
    if !(tie_eps.is_finite() && tie_eps >= 0.0) {
        return Err(Failure::Data(format!(
            "tie_eps must be non-negative, got {tie_eps}"
        )));
    }
    let flows = a.engine.flows(&matrix);
    let mut buf = Vec::new();
    match a.method {
        Method::Ii => io::write_total_ranking(&mut buf, &flows, &rank_promethee2(&flows, tie_eps))?,
        Method::I => {
            io::write_partial_ranking(&mut buf, &flows, &rank_promethee1(&flows, tie_eps))?
        }
    }
    emit(a.output.as_deref(), &buf)
}

fn cmd_verify(a: InputArgs) -> Result<(), Failure> {
    let (matrix, _) = load(&a)?;
    let naive = Engine::Naive.flows(&matrix);
    let fast = Engine::Sbp.flows(&matrix);
    let diff = naive.max_abs_diff(&fast);
    println!(
        "n={} q={} max_abs_diff={diff:e} tolerance={VERIFY_TOLERANCE:e}",
        matrix.n(),
        matrix.q()
    );
    if diff <= VERIFY_TOLERANCE {
        println!("ok");
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "engines differ by {diff:e} (> {VERIFY_TOLERANCE:e})"
        )))
    }
}

fn cmd_bench(a: BenchArgs) -> Result<(), Failure> {
    let sizes = match a.sizes {
        Some(sizes) => sizes,
        None => {
            if a.min_exp > a.max_exp || a.max_exp >= usize::BITS {
                return Err(Failure::Data(format!(
                    "bad sizes: exponent range {}..={}",
                    a.min_exp, a.max_exp
                )));
            }
            (a.min_exp..=a.max_exp).map(|e| 1usize << e).collect()
        }
    };
    let config = BenchConfig {
        sizes,
        q: a.q,
        repeats: a.repeats,
        engines: a.engines,
        seed: a.seed,
        max_naive_n: a.max_naive_n,
        function: a.function.into(),
        indifference: a.indifference,
        preference: a.preference,
        threads: if a.parallel { None } else { Some(1) },
    };
    let report = bench::run_bench_with(&config, |entry| match entry {
        BenchEntry::Measured(r) => {
            eprintln!("{:>9} {:<5} median {:.6} s", r.n, r.engine, r.median())
        }
        BenchEntry::Skipped {
            n, engine, reason, ..
        } => {
            eprintln!("{n:>9} {engine:<5} {reason}")
        }
    })
    .map_err(|e| Failure::Data(e.to_string()))?;
    let mut buf = Vec::new();
    report.write_csv(&mut buf)?;
    emit(a.output.as_deref(), &buf)
}

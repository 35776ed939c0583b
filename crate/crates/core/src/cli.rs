//! Command-line driver. [`run_cli`] takes its streams as arguments so it can
//! be exercised in-process.

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::engine::{solve, Guards, Mode, SolveOptions};
use crate::graph::DEFAULT_BRUTE_FORCE_MAX_N;
use crate::io::{
    generate_graph_file, parse_graph, run_benchmark, to_csv, ResultDocument, SuiteConfig,
};
use crate::minplus::ScaledKernel;
use crate::rational::Rational;

const DEFAULT_EPSILON: &str = "0.1";

#[derive(Debug, Parser)]
#[command(
    name = "mcm",
    version,
    about = "Minimum cycle mean of weighted digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the minimum cycle mean of a graph file.
    Solve(SolveArgs),
    /// Write a random graph file.
    Generate(GenerateArgs),
    /// Run a benchmark suite and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliMode {
    Karp,
    ExactPower,
    Approx,
    Brute,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Karp => Mode::Karp,
            CliMode::ExactPower => Mode::ExactPower,
            CliMode::Approx => Mode::Approx,
            CliMode::Brute => Mode::Brute,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Plain,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliKernel {
    Naive,
    Encoding,
}

impl From<CliKernel> for ScaledKernel {
    fn from(k: CliKernel) -> ScaledKernel {
        match k {
            CliKernel::Naive => ScaledKernel::Naive,
            CliKernel::Encoding => ScaledKernel::IntegerEncoding,
        }
    }
}

#[derive(Debug, clap::Args)]
struct GuardArgs {
    /// Largest n accepted by the brute-force engine.
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_MAX_N)]
    brute_max_n: usize,
    /// Largest n accepted by the exact-power engine.
    #[arg(long, default_value_t = Guards::default().power_max_n)]
    power_max_n: usize,
    /// Largest W accepted by the exact-power engine.
    #[arg(long, default_value_t = Guards::default().power_max_weight)]
    power_max_weight: u64,
    /// Exact kernel used inside approximate products.
    #[arg(long, value_enum, default_value = "naive")]
    kernel: CliKernel,
}

impl GuardArgs {
    fn options(&self, epsilon: Rational) -> SolveOptions {
        SolveOptions {
            epsilon,
            guards: Guards {
                brute_max_n: self.brute_max_n,
                power_max_n: self.power_max_n,
                power_max_weight: self.power_max_weight,
            },
            kernel: self.kernel.into(),
        }
    }
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    #[arg(long, value_enum, default_value = "karp")]
    mode: CliMode,
    /// Approximation parameter in (0, 1], as a decimal or p/q. Default 0.1.
    #[arg(long)]
    epsilon: Option<String>,
    /// Graph file, or '-' for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
    #[command(flatten)]
    guards: GuardArgs,
}

#[derive(Debug, clap::Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long = "max-weight", short = 'w')]
    max_weight: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct BenchArgs {
    /// TOML suite description.
    #[arg(long)]
    config: PathBuf,
    /// Write CSV to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    guards: GuardArgs,
}

/// Runs the CLI and returns the process exit code.
pub fn run_cli<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => run_solve(args, stdin, stdout, stderr),
        Command::Generate(args) => run_generate(args, stdout),
        Command::Bench(args) => run_bench(args, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn run_solve(
    args: SolveArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), String> {
    let mode: Mode = args.mode.into();
    if args.epsilon.is_some() && mode.is_exact() {
        let _ = writeln!(stderr, "warning: --epsilon is ignored in {mode} mode");
    }
    let epsilon: Rational = args
        .epsilon
        .as_deref()
        .unwrap_or(DEFAULT_EPSILON)
        .parse()
        .map_err(|e| format!("--epsilon: {e}"))?;

    let graph = if args.input == "-" {
        parse_graph(BufReader::new(stdin))
    } else {
        let file = fs::File::open(&args.input).map_err(|e| format!("{}: {e}", args.input))?;
        parse_graph(BufReader::new(file))
    }
    .map_err(|e| format!("{}: {e}", args.input))?;

    let result = solve(&graph, mode, &args.guards.options(epsilon)).map_err(|e| e.to_string())?;
    let doc = ResultDocument::new(&graph, &result);
    let text = match args.output {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Plain => doc.to_plain(),
    };
    stdout.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

fn write_out(path: Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), String> {
    match path {
        Some(p) => fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn run_generate(args: GenerateArgs, stdout: &mut dyn Write) -> Result<(), String> {
    let text = generate_graph_file(args.n, args.m, args.max_weight, args.seed)
        .map_err(|e| e.to_string())?;
    write_out(args.output, &text, stdout)
}

fn run_bench(args: BenchArgs, stdout: &mut dyn Write) -> Result<(), String> {
    let text =
        fs::read_to_string(&args.config).map_err(|e| format!("{}: {e}", args.config.display()))?;
    let config = SuiteConfig::from_toml(&text).map_err(|e| e.to_string())?;
    let base = args
        .guards
        .options(DEFAULT_EPSILON.parse().expect("constant"));
    let rows = run_benchmark(&config, &base);
    write_out(args.output, &to_csv(&rows), stdout)
}

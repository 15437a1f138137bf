//! `alphaperm`: exact and Monte-Carlo alpha-permanents from the command line.
//!
//! Exit codes: 0 success, 1 failed check or mismatch against published data,
//! 2 bad input (parse errors, inadmissible parameters), 3 size limit.

mod checks;
mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use alphaperm::io::{parse_matrix, MatrixFormat};
use alphaperm::{Complex64, Matrix};
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{parse_alpha, Engine, EstimateArgs, Fixture, TableKind};
use report::{digest, Failure, Output, RunResult, Status};

#[derive(Parser)]
#[command(
    name = "alphaperm",
    version,
    about = "Exact and Monte-Carlo alpha-permanents"
)]
struct Cli {
    /// Emit the run as JSON with sorted keys.
    #[arg(long, global = true)]
    json: bool,

    /// Report wall-clock time (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    CsvDense,
    CsvUpperTriangularSymmetric,
}

impl From<FormatArg> for MatrixFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::CsvDense => MatrixFormat::CsvDense,
            FormatArg::CsvUpperTriangularSymmetric => MatrixFormat::CsvUpperTriangularSymmetric,
        }
    }
}

#[derive(Args)]
struct MatrixArgs {
    /// Matrix file (comma separated; `#` comments allowed).
    #[arg(long)]
    matrix: PathBuf,

    /// File layout; detected from the row lengths when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate per_alpha exactly.
    Exact {
        #[command(flatten)]
        input: MatrixArgs,
        /// `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
        alpha: Complex64,
        #[arg(long, value_enum, default_value = "definition")]
        engine: Engine,
    },
    /// Importance-sampling estimate of per_alpha for a real matrix.
    Estimate {
        #[command(flatten)]
        input: MatrixArgs,
        /// Real alpha.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
        alpha: Complex64,
        /// Pitman-Ewens discount; defaults to -1 for alpha = -k, else 0.
        #[arg(long, allow_hyphen_values = true, requires = "theta")]
        a: Option<f64>,
        /// Pitman-Ewens strength; defaults to k for alpha = -k, else 1.
        #[arg(long, allow_hyphen_values = true, requires = "a")]
        theta: Option<f64>,
        /// Sample uniform permutations instead of partitions.
        #[arg(long)]
        uniform: bool,
        /// Number of samples.
        #[arg(long = "N", alias = "samples", default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check an identity on random inputs.
    Check {
        #[arg(value_enum)]
        suite: checks::Suite,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print rencontres, Stirling or Bell tables.
    Tables {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long)]
        n: usize,
        /// Compare against the published rencontres tables.
        #[arg(long)]
        verify_appendix: bool,
    },
    /// Exact values and estimates for the published 8x8 example.
    #[command(name = "reproduce-table1")]
    ReproduceTable1 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "N", alias = "samples", default_value_t = 100_000)]
        samples: usize,
    },
    /// Print an embedded matrix.
    Fixture {
        #[arg(value_enum)]
        name: Fixture,
        /// Write all n x n entries instead of the upper triangle.
        #[arg(long)]
        dense: bool,
    },
}

fn load(input: &MatrixArgs) -> Result<(Matrix, Vec<u8>), Failure> {
    let bytes = std::fs::read(&input.matrix)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", input.matrix.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::input(format!("{} is not UTF-8 text", input.matrix.display())))?;
    let format = match input.format {
        Some(f) => f.into(),
        None => MatrixFormat::detect(&text)?,
    };
    Ok((parse_matrix(&text, format)?, bytes))
}

fn run(command: &Command) -> Result<(Output, Vec<Vec<u8>>), Failure> {
    Ok(match command {
        Command::Exact {
            input,
            alpha,
            engine,
        } => {
            let (m, bytes) = load(input)?;
            (commands::exact(&m, *alpha, *engine)?, vec![bytes])
        }
        Command::Estimate {
            input,
            alpha,
            a,
            theta,
            uniform,
            samples,
            seed,
        } => {
            let (m, bytes) = load(input)?;
            let args = EstimateArgs {
                alpha: *alpha,
                a: *a,
                theta: *theta,
                uniform: *uniform,
                samples: *samples,
                seed: *seed,
            };
            (commands::estimate(&m, &args)?, vec![bytes])
        }
        Command::Check {
            suite,
            n,
            trials,
            seed,
        } => (commands::check(*suite, *n, *trials, *seed)?, Vec::new()),
        Command::Tables {
            kind,
            n,
            verify_appendix,
        } => (commands::tables(*kind, *n, *verify_appendix)?, Vec::new()),
        Command::ReproduceTable1 { seed, samples } => {
            (commands::reproduce_table1(*seed, *samples)?, Vec::new())
        }
        Command::Fixture { name, dense } => (commands::fixture(*name, *dense), Vec::new()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let (out, inputs) = match run(&cli.command) {
        Ok(done) => done,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.status.into();
        }
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    for w in &out.warnings {
        eprintln!("{w}");
    }
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    let written = if cli.json {
        let result = RunResult {
            command: &args,
            inputs_digest: digest(&args, &inputs),
            outputs: &out.json,
            wall_time_ms: cli.timing.then_some(elapsed_ms),
        };
        let mut text =
            serde_json::to_string_pretty(&serde_json::to_value(&result).expect("serialisable"))
                .expect("serialisable");
        text.push('\n');
        handle.write_all(text.as_bytes())
    } else {
        let mut text = out.lines.join("\n");
        text.push('\n');
        if cli.timing {
            text.push_str(&format!("wall time: {elapsed_ms:.1} ms\n"));
        }
        handle.write_all(text.as_bytes())
    };
    if written.is_err() {
        return Status::Input.into();
    }
    out.status.into()
}

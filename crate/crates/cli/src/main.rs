use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hardy_cli::commands::{self, FalsifyRequest, RemarkRequest, TraceRequest};
use hardy_cli::error::{CliError, CliResult};
use hardy_cli::record::{Format, Record, RecordWriter};
use hardy_cli::spec::{parse_count, parse_mean, parse_sequence};
use hardy_core::hardy::Stride;

#[derive(Parser)]
#[command(
    name = "hardy",
    version,
    about = "Power, Gini and Gaussian compound means: evaluation, Hardy classification and counterexample search",
    allow_negative_numbers = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a mean at positive values; prints 15 significant digits.
    Eval {
        /// power:<l|inf|-inf>, gini:<p>,<q> or gauss:<l1>,<l2>,...
        #[arg(long)]
        mean: String,
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<String>,
    },
    /// Decide whether a mean has the Hardy property.
    Classify {
        #[arg(long)]
        mean: String,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
    },
    /// Stream the ratio A(a_1..a_n)/a_n along a sequence.
    Trace {
        #[arg(long)]
        mean: String,
        /// harmonic or file:<path>
        #[arg(long)]
        seq: String,
        /// Last index; defaults to the length of a file sequence.
        #[arg(short = 'n', long = "terms", value_parser = parse_count)]
        terms: Option<u64>,
        /// Record every index.
        #[arg(long, conflicts_with = "ratio")]
        exhaustive: bool,
        /// Geometric sampling ratio [default: 1.1]
        #[arg(long)]
        ratio: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Build and verify a sequence refuting Hardy's inequality with constant C.
    Falsify {
        #[arg(long)]
        mean: String,
        #[arg(long)]
        seq: String,
        #[arg(long = "c")]
        c: f64,
        #[arg(long, value_parser = parse_count, default_value = "10000000")]
        cap: u64,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
    },
    /// Growth exponent and crossing threshold of the compound lower bound.
    Remark {
        #[arg(default_value_t = 3)]
        p: u32,
        #[arg(default_value = "5")]
        lambda: String,
        #[arg(default_value = "1.5")]
        theta: String,
        /// Target value of the bound; decimal or a/b.
        #[arg(long, default_value = "1")]
        target: String,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
    },
}

fn emit(rec: &Record, format: Format) -> CliResult<()> {
    let stdout = io::stdout().lock();
    let mut w = RecordWriter::new(stdout, format);
    w.write(rec)?;
    w.flush()
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Eval { mean, values } => {
            let line = commands::eval(&parse_mean(&mean)?, &values)?;
            let mut out = io::stdout().lock();
            writeln!(out, "{line}")?;
            out.flush()?;
        }
        Command::Classify { mean, format } => {
            emit(&commands::verdict_record(&parse_mean(&mean)?), format)?;
        }
        Command::Trace {
            mean,
            seq,
            terms,
            exhaustive,
            ratio,
            format,
        } => {
            let mean = parse_mean(&mean)?;
            let sequence = parse_sequence(&seq)?;
            let last = terms
                .or(sequence.len())
                .ok_or_else(|| CliError::parse("--terms is required for unbounded sequences"))?;
            let stride = if exhaustive {
                Stride::Every
            } else {
                Stride::Geometric(ratio.unwrap_or(1.1))
            };
            let req = TraceRequest {
                mean: &mean,
                sequence: &sequence,
                last,
                stride,
                cap: commands::trace_cap_from_env()?,
            };
            commands::trace(&req, BufWriter::new(io::stdout().lock()), format)?;
        }
        Command::Falsify {
            mean,
            seq,
            c,
            cap,
            format,
        } => {
            let mean = parse_mean(&mean)?;
            let sequence = parse_sequence(&seq)?;
            let rec = commands::falsify(&FalsifyRequest {
                mean: &mean,
                sequence: &sequence,
                sequence_spec: &seq,
                c,
                cap,
            })?;
            emit(&rec, format)?;
        }
        Command::Remark {
            p,
            lambda,
            theta,
            target,
            digits,
            format,
        } => {
            let rec = commands::remark(&RemarkRequest {
                p,
                lambda: &lambda,
                theta: &theta,
                target: &target,
                digits,
            })?;
            emit(&rec, format)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hardy: {e}");
            ExitCode::from(e.code)
        }
    }
}

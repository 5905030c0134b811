//! `idealizer-lab`: partition counts, chain layers, rank tables, brackets and
//! the verification suite for the integral Lie ring of partitions.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch,
//! 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use idealizer_core::report::{first_mismatch, render_layer, SeqReport};
use idealizer_core::verify::{DEFAULT_SEED, DEFAULT_TRIALS};
use idealizer_core::{
    bfile, bracket, build_chain_report, enumerate_layer, parse_element, partition_counts,
    print_element, run_verify, Error, Format, Method, RingContext, VerifyConfig,
};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "idealizer-lab",
    version,
    about = "Idealizer chain of the integral Lie ring of partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Analytic,
    Oracle,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Analytic => Method::Analytic,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(clap::Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition counts a_n with first and second partial sums.
    Seq {
        #[arg(long, default_value_t = 14)]
        max: usize,
        /// OEIS b-file to compare a_n against.
        #[arg(long)]
        bfile: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Elements of the layer L_i, by direction.
    Levels {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        i: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Rank table of the chain for levels 0..=i-max.
    Chain {
        #[arg(long)]
        n: i64,
        #[arg(long = "i-max")]
        i_max: i64,
        #[arg(long, value_enum, default_value = "analytic")]
        method: MethodArg,
        /// Extra oracle candidate weight beyond n + i.
        #[arg(long, default_value_t = 0)]
        margin: u64,
        /// Include element listings.
        #[arg(long)]
        elements: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Bracket of two elements.
    Bracket {
        #[arg(long)]
        n: i64,
        left: String,
        right: String,
    },
    /// Run every check for one rank.
    Verify {
        #[arg(long)]
        n: i64,
        #[arg(long = "i-max", default_value_t = 8)]
        i_max: i64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[command(flatten)]
        output: Output,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Io(_) => EXIT_IO,
            Error::Internal(_) => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn mismatch(message: String) -> Failure {
    Failure {
        code: EXIT_MISMATCH,
        message,
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Seq { max, bfile, output } => {
            let counts = partition_counts(max)?;
            let report = SeqReport::from(counts);
            emit(&output, &report.render(output.format.into()))?;
            if let Some(path) = bfile {
                let reference = bfile::load_bfile(&path)?;
                if let Some((idx, ours, theirs)) = first_mismatch(&report.a, &reference) {
                    return Err(mismatch(format!(
                        "a_{idx} = {ours} differs from {} value {theirs}",
                        path.display()
                    )));
                }
            }
            Ok(())
        }
        Command::Levels { n, i, output } => {
            let ctx = RingContext::new(n)?;
            let layer = enumerate_layer(&ctx, i)?;
            emit(
                &output,
                &render_layer(ctx.n(), &layer, output.format.into()),
            )
        }
        Command::Chain {
            n,
            i_max,
            method,
            margin,
            elements,
            output,
        } => {
            let ctx = RingContext::new(n)?;
            let report = build_chain_report(&ctx, i_max, method.into(), margin, elements)?;
            emit(&output, &report.render(output.format.into()))?;
            let oracle = report.oracle_mismatches();
            if !oracle.is_empty() {
                return Err(mismatch(format!("oracle disagrees at levels {oracle:?}")));
            }
            let predicted = report.prediction_mismatches();
            if !predicted.is_empty() {
                return Err(mismatch(format!(
                    "closed-form sizes disagree at levels {predicted:?}"
                )));
            }
            Ok(())
        }
        Command::Bracket { n, left, right } => {
            let ctx = RingContext::new(n)?;
            let x = parse_element(&ctx, &left)?;
            let y = parse_element(&ctx, &right)?;
            println!("{}", print_element(&bracket(&ctx, &x, &y)?));
            Ok(())
        }
        Command::Verify {
            n,
            i_max,
            seed,
            trials,
            output,
        } => {
            let n = u32::try_from(n).map_err(|_| Failure::from(Error::InvalidRank(n)))?;
            let report = run_verify(VerifyConfig {
                n,
                i_max,
                seed,
                trials,
            })?;
            emit(&output, &report.render(output.format.into()))?;
            if !report.passed {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                return Err(mismatch(format!("failed checks: {}", failed.join(", "))));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

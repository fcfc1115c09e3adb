//! `hyperterm`: evaluate interpolated terms `Δ:n = a(a+b)…(a+(n−1)b)` for
//! real `n` from the command line.

mod commands;
mod number;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperterm_core::{AlphaStrategy, SeriesParams};

use commands::{MethodChoice, Outcome, EXIT_ERROR};
use number::parse_real;
use output::{Format, OutputSpec};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "hyperterm",
    version,
    about = "Interpolated terms of products in arithmetic progression"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Δ:n by one route.
    Eval {
        #[command(flatten)]
        series: SeriesArgs,
        /// Index n (decimal or p/q).
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        n: f64,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Free product parameter: `a`, `accel` or a positive number.
        #[arg(long, default_value = "a", value_parser = parse_alpha)]
        alpha: AlphaStrategy,
        #[arg(long, default_value = "1e-10", value_parser = parse_real)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Δ:frac, Δ:(frac+1), … from one product evaluation and the recurrence.
    Table {
        #[command(flatten)]
        series: SeriesArgs,
        /// Fractional start index in (0, 1).
        #[arg(long, value_parser = parse_real)]
        frac: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=100_000))]
        count: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Terms needed and error reached per α strategy and tolerance.
    Converge {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        n: f64,
        /// Comma-separated α strategies.
        #[arg(long, default_value = "a,accel", value_delimiter = ',', value_parser = parse_alpha)]
        alpha: Vec<AlphaStrategy>,
        /// Comma-separated tolerances.
        #[arg(long, default_value = "1e-4,1e-6,1e-8,1e-10", value_delimiter = ',', value_parser = parse_real)]
        tol: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run every applicable route and report how far apart they are.
    Compare {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        n: f64,
        #[arg(long, default_value = "1e-10", value_parser = parse_real)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct SeriesArgs {
    /// First factor a > 0.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    a: f64,
    /// Common difference b > 0.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    b: f64,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Significant digits in printed numbers.
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u8).range(4..=17))]
    precision: u8,
}

impl OutputArgs {
    fn spec(&self) -> OutputSpec {
        OutputSpec {
            format: self.format,
            precision: self.precision as usize,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Product,
    Integral,
    Oracle,
    Auto,
}

fn parse_alpha(s: &str) -> Result<AlphaStrategy, String> {
    match s.trim() {
        "a" => Ok(AlphaStrategy::DefaultA),
        "accel" => Ok(AlphaStrategy::Accelerated),
        other => parse_real(other)
            .map(AlphaStrategy::Custom)
            .map_err(|_| format!("'{other}' is not `a`, `accel` or a number")),
    }
}

fn run(command: Command) -> Result<(Outcome, OutputSpec), hyperterm_core::Error> {
    let params = |s: &SeriesArgs| SeriesParams::new(s.a, s.b);
    Ok(match command {
        Command::Eval {
            series,
            n,
            method,
            alpha,
            tol,
            out,
        } => {
            let method = match method {
                MethodArg::Product => MethodChoice::Product,
                MethodArg::Integral => MethodChoice::Integral,
                MethodArg::Oracle => MethodChoice::Oracle,
                MethodArg::Auto => MethodChoice::Auto,
            };
            (
                commands::eval(params(&series)?, n, method, alpha, tol)?,
                out.spec(),
            )
        }
        Command::Table {
            series,
            frac,
            count,
            out,
        } => (
            commands::table(params(&series)?, frac, count as usize)?,
            out.spec(),
        ),
        Command::Converge {
            series,
            n,
            alpha,
            tol,
            out,
        } => (
            commands::converge(params(&series)?, n, &alpha, &tol)?,
            out.spec(),
        ),
        Command::Compare {
            series,
            n,
            tol,
            out,
        } => (commands::compare(params(&series)?, n, tol)?, out.spec()),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((outcome, spec)) => {
            let mut stdout = io::stdout().lock();
            let written = output::emit(&mut stdout, spec, &outcome.records, outcome.single)
                .and_then(|_| stdout.flush());
            if let Err(e) = written {
                eprintln!("hyperterm: cannot write output: {e}");
                return ExitCode::from(EXIT_ERROR);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("hyperterm: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

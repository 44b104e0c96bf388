mod commands;
mod schema;

use clap::{Parser, Subcommand};
use commands::{CliError, Outcome};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

pub const SCHEMA: &str = "curvekit/1";
pub const IMIN_ENV: &str = "CURVEKIT_IMIN_TABLE";

#[derive(Debug, Parser)]
#[command(
    name = "curvekit",
    version,
    about = "Analyze filling pairs of curves given as ladders"
)]
struct Cli {
    /// Print the JSON schema of the reports and exit.
    #[arg(long, global = true)]
    schema: bool,
    /// Tie-breaking seed for randomized heuristics; every command is
    /// deterministic, so the value is accepted and ignored.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decomposition, canonical class, spirals and distance of a ladder.
    Analyze {
        path: PathBuf,
        #[arg(long, default_value_t = curvekit::geodesics::MAX_SUPPORTED_DISTANCE)]
        max_d: usize,
    },
    /// Curve-graph distance, decided up to `--max-d`.
    Distance {
        path: PathBuf,
        #[arg(long, default_value_t = curvekit::geodesics::MAX_SUPPORTED_DISTANCE)]
        max_d: usize,
    },
    /// Bands that overlap themselves along v.
    Spirals { path: PathBuf },
    /// Spiral surgery along one w-arc of a spiral.
    Surgery {
        path: PathBuf,
        /// Band index of the spiral, as listed by `spirals`.
        #[arg(long)]
        spiral: usize,
        /// Label of a w-arc crossed by the spiral.
        #[arg(long)]
        edge: usize,
    },
    /// Spiral addition by twisting along a bicorn or a band.
    Add {
        path: PathBuf,
        /// Bicorn given as `V,W` arc labels.
        #[arg(long, value_parser = parse_pair, conflicts_with = "band", required_unless_present = "band")]
        bicorn: Option<(usize, usize)>,
        /// Band index, as listed by `spirals` or `analyze`.
        #[arg(long)]
        band: Option<usize>,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Repeated spiral surgery that keeps the distance.
    Reduce {
        path: PathBuf,
        /// JSON table merged over the built-in i_min entries.
        /// Defaults to the path in `CURVEKIT_IMIN_TABLE`.
        #[arg(long)]
        imin_table: Option<PathBuf>,
        #[arg(long, default_value_t = curvekit::geodesics::MAX_SUPPORTED_DISTANCE)]
        max_d: usize,
    },
    /// Canonical representative under cyclic relabelling.
    Canonical { path: PathBuf },
    /// Run `analyze` on every `*.ladder` file of a directory.
    Batch { dir: PathBuf },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected V,W but got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn emit(outcome: &Outcome) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", outcome.json);
    if !outcome.summary.is_empty() {
        eprintln!("{}", outcome.summary);
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    let outcome = match command {
        Command::Analyze { path, max_d } => commands::analyze(&path, max_d),
        Command::Distance { path, max_d } => commands::distance(&path, max_d),
        Command::Spirals { path } => commands::spirals(&path),
        Command::Surgery { path, spiral, edge } => commands::surgery(&path, spiral, edge),
        Command::Add {
            path,
            bicorn,
            band,
            m,
        } => commands::add(&path, bicorn, band, m),
        Command::Reduce {
            path,
            imin_table,
            max_d,
        } => commands::reduce(&path, imin_table.as_deref(), max_d),
        Command::Canonical { path } => commands::canonical(&path),
        Command::Batch { dir } => {
            let mut worst = 0;
            for outcome in commands::batch(&dir)? {
                emit(&outcome);
                worst = worst.max(outcome.code);
            }
            return Ok(worst);
        }
    }?;
    emit(&outcome);
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if cli.schema {
        let _ = writeln!(std::io::stdout(), "{}", schema::schema());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("no command given; run `curvekit --help`");
        return ExitCode::from(1);
    };
    let started = Instant::now();
    let code = match run(command) {
        Ok(code) => code,
        Err(e) => {
            emit(&e.outcome());
            e.exit_code()
        }
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    ExitCode::from(code)
}

//! `bclab`: reproducible verification suites with machine-readable reports.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on a
//! usage error.

mod report;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bclab_core::lp::Mode;
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Outcome, Record, RunReport};
use suites::{CliError, ThompsonGroup};

#[derive(Parser, Debug)]
#[command(name = "bclab", version, about = "Exact checks of bounded-cohomology constructions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Seed for the splitmix64 sample streams.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    F,
    T,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternating-operator identities.
    #[command(subcommand)]
    Verify(Verify),
    /// Orientation (Euler) cocycle checks.
    #[command(subcommand)]
    Euler(Euler),
    /// Conjugation homotopy on bar chains.
    Theta {
        #[arg(long, default_value = "S3")]
        group: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Explicit inverse of the degree-2 coboundary.
    Psi {
        #[arg(long, default_value = "C6")]
        group: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Sampled lower bound on the uniform boundary constant.
    Ubc {
        #[arg(long, default_value = "C2")]
        group: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Sampled lower bound on the vanishing modulus.
    Modulus {
        #[arg(long, default_value = "C3")]
        group: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Thompson group witnesses.
    #[command(subcommand)]
    Thompson(Thompson),
    /// Build a dissipator for (a, b) and check its ladder.
    Dissipator {
        #[command(flatten)]
        interval: Interval,
    },
    /// Build and verify a pseudo-mitosis witness.
    Witness {
        #[command(flatten)]
        interval: Interval,
        /// JSON array of interval maps supported in (a, b).
        #[arg(long)]
        gens: Option<PathBuf>,
        /// Sampled word quadruples for the multiplicativity check.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// The full acceptance suite.
    All,
}

#[derive(Args, Debug)]
struct Interval {
    #[arg(long, default_value = "3/2^3")]
    a: String,
    #[arg(long, default_value = "1/2^1")]
    b: String,
    #[arg(long, default_value_t = bclab_core::binate::DEFAULT_DEPTH)]
    depth: u32,
}

#[derive(Subcommand, Debug)]
enum Verify {
    AltIdentity {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Euler {
    CocycleCheck {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Thompson {
    MapTuple {
        #[arg(long, value_enum, ignore_case = true, default_value_t = GroupArg::T)]
        group: GroupArg,
        /// Comma-separated dyadics, e.g. "1/2^2,1/2^1".
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let seed = cli.common.seed;
    match &cli.command {
        Command::Verify(Verify::AltIdentity { k }) => suites::alt_identity(*k),
        Command::Euler(Euler::CocycleCheck { samples }) => suites::euler_cocycle(*samples, seed),
        Command::Theta { group, degree, trials } => {
            suites::theta_suite(&[suites::parse_group(group)?], *degree, *trials, seed)
        }
        Command::Psi { group, trials } => suites::psi(&[suites::parse_group(group)?], *trials, seed),
        Command::Ubc { group, degree, samples, mode } => {
            suites::ubc(&suites::parse_group(group)?, *degree, *samples, seed, (*mode).into())
        }
        Command::Modulus { group, degree, samples, mode } => {
            let g = suites::parse_group(group)?;
            let mut o = suites::modulus(&g, *degree, *samples, seed, (*mode).into())?;
            if *degree == 2 {
                o.extend("constant", suites::constant_witness_check(&g)?);
            }
            Ok(o)
        }
        Command::Thompson(Thompson::MapTuple { group, from, to }) => {
            let group = match group {
                GroupArg::F => ThompsonGroup::F,
                GroupArg::T => ThompsonGroup::T,
            };
            suites::map_tuple(group, &suites::parse_dyadic_list("--from", from)?, &suites::parse_dyadic_list("--to", to)?)
        }
        Command::Dissipator { interval } => {
            let (a, b) = parse_interval(interval)?;
            suites::dissipator(&a, &b, interval.depth)
        }
        Command::Witness { interval, gens, samples } => {
            let (a, b) = parse_interval(interval)?;
            let gens = gens.as_deref().map(suites::load_generators).transpose()?;
            suites::witness(&a, &b, interval.depth, gens, *samples, seed, true)
        }
        Command::All => suites::all(seed),
    }
}

fn parse_interval(i: &Interval) -> Result<(bclab_core::Dyadic, bclab_core::Dyadic), CliError> {
    Ok((suites::parse_dyadic("--a", &i.a)?, suites::parse_dyadic("--b", &i.b)?))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // --help and --version exit 0, everything else 2
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("see `bclab --help` for usage");
            return ExitCode::from(2);
        }
        Err(CliError::Failed(msg)) => {
            let mut o = Outcome::default();
            o.records.push(Record {
                name: "run".into(),
                paper_ref: "computation".into(),
                expected: "completes".into(),
                actual: msg,
                pass: false,
            });
            o
        }
    };
    let command = argv.iter().skip(1).cloned().collect();
    let report = RunReport::new(command, cli.common.seed, outcome, start.elapsed().as_secs_f64());
    let text = match cli.common.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    // a closed pipe is not a check failure
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

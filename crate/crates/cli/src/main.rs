//! `repstab` command-line front end.
//!
//! Exit codes: 0 success, 1 failed assertion, 2 usage error, 3 input or
//! schema error, 4 scale exceeded.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use repstab::reps::Parity;
use repstab::verify::Suite;
use repstab::Error;

use commands::Side;
use render::{Format, Outcome};

#[derive(Parser)]
#[command(name = "repstab", version, about = "Exact representation-stability computations for symmetric groups")]
struct Cli {
    /// Output format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    format: Format,
    /// Step logs on standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    PaperExample,
    Ranges,
    Algebra,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::PaperExample => Suite::PaperExample,
            SuiteArg::Ranges => Suite::Ranges,
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Character table of S_n.
    Chartab {
        #[arg(long)]
        n: usize,
        /// Also write the enveloped table here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cache directory; defaults to $REPSTAB_CACHE, then the user cache.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Decompose a class function into irreducible characters.
    Decompose {
        #[arg(long)]
        character: PathBuf,
    },
    /// FI-module table tools.
    Fimod {
        #[command(subcommand)]
        action: FimodAction,
    },
    /// Tables for configuration spaces of points in R^n.
    Config {
        #[arg(long, value_enum)]
        parity: ParityArg,
        /// Lie weight; for the cohomology side, the Arnold degree j.
        #[arg(long)]
        lie_weight: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = Side::Homotopy)]
        side: Side,
    },
    /// Free Lie and Gerstenhaber pieces and their weight bound.
    Freelie {
        /// Generator degree, at least 2.
        #[arg(long)]
        d: usize,
        /// Bracket degree shift, at least 1.
        #[arg(long)]
        m: usize,
        /// Internal degree of the piece.
        #[arg(long)]
        piece: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Run acceptance criteria; exits 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Check uniform representation stability from a given n.
    RepstabCheck {
        file: PathBuf,
        #[arg(long)]
        range: usize,
    },
}

#[derive(Subcommand)]
enum FimodAction {
    /// Weight, generation degree, stability bounds, polynomial and onset.
    Info { file: PathBuf },
    /// Levelwise tensor product with bound metadata.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub enum CliError {
    Usage(String),
    Input(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Core(Error::ScaleExceeded(_) | Error::RankTooLarge { .. }) => 4,
            CliError::Core(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Input(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

pub struct Log {
    verbose: bool,
}

impl Log {
    pub fn step(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("repstab: {}", msg.as_ref());
        }
    }
}

/// Checks that need no computation, so bad flags fail before any work.
fn validate(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Config { lie_weight: 0, side, .. } if *side != Side::Cohomology => {
            Err(CliError::Usage("--lie-weight must be at least 1".into()))
        }
        Command::Freelie { d, .. } if *d < 2 => Err(CliError::Usage("--d must be at least 2".into())),
        Command::Freelie { m: 0, .. } => Err(CliError::Usage("--m must be at least 1".into())),
        Command::Freelie { piece: 0, .. } => Err(CliError::Usage("--piece must be at least 1".into())),
        _ => Ok(()),
    }
}

fn dispatch(cmd: Command, log: &Log) -> Result<Outcome, CliError> {
    match cmd {
        Command::Chartab { n, out, cache_dir } => commands::chartab(n, out.as_deref(), cache_dir.as_deref(), log),
        Command::Decompose { character } => commands::decompose(&character, log),
        Command::Fimod {
            action: FimodAction::Info { file },
        } => commands::fimod_info(&file, log),
        Command::Fimod {
            action: FimodAction::Tensor { a, b, out },
        } => commands::fimod_tensor(&a, &b, out.as_deref(), log),
        Command::Config {
            parity,
            lie_weight,
            kmax,
            side,
        } => commands::config(parity.into(), lie_weight, kmax, side, log),
        Command::Freelie { d, m, piece, nmax } => commands::freelie(d, m, piece, nmax, log),
        Command::Verify { suite } => commands::verify(suite.into(), log),
        Command::RepstabCheck { file, range } => commands::repstab_check(&file, range, log),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let log = Log { verbose: cli.verbose };
    let result = validate(&cli.command).and_then(|()| dispatch(cli.command, &log));
    match result {
        Ok(out) => {
            if let Err(e) = render::emit(&out, cli.format) {
                eprintln!("repstab: error: {e}");
                return ExitCode::from(3);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("repstab: error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

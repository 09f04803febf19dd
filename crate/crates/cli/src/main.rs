//! `parking`: enumeration, audits, exact probabilities and forest encodings
//! for bilateral parking procedures.

mod commands;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "parking", version, about = "Bilateral parking procedures on the integer line")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, env = "PARKING_JOBS")]
    jobs: Option<usize>,

    /// Lift the exhaustive size caps (7 deterministic, 5 probabilistic).
    #[arg(long, global = true)]
    cap_unsafe: bool,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct ProcArg {
    /// Catalog procedure, `name[:key=value,...]`.
    #[arg(long = "proc")]
    spec: Option<String>,

    /// Direction table in JSON.
    #[arg(long = "proc-file")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count parking words of length r.
    Enumerate {
        #[command(flatten)]
        proc: ProcArg,
        #[arg(long)]
        r: usize,
        /// Exit with status 1 unless the count is (r+1)^(r-1).
        #[arg(long)]
        expect_universal: bool,
    },
    /// Parking words per cyclic orbit of {1..r+1}^r.
    Orbits {
        #[command(flatten)]
        proc: ProcArg,
        #[arg(long)]
        r: usize,
        /// Exit with status 1 unless every orbit holds exactly one parking word.
        #[arg(long)]
        expect_one: bool,
    },
    /// Exact distribution of a word, or total parking mass at length r.
    Prob {
        #[command(flatten)]
        proc: ProcArg,
        #[arg(long, conflicts_with = "mass", required_unless_present = "mass")]
        word: Option<String>,
        #[arg(long)]
        mass: Option<usize>,
    },
    /// Fiber sizes of the outcome map and counts per tree shape.
    Fibers {
        #[command(flatten)]
        proc: ProcArg,
        #[arg(long)]
        r: usize,
        /// A single permutation: sigma_k is the arrival index of the car at spot k.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Forest pair attached to a word.
    Encode {
        #[command(flatten)]
        proc: ProcArg,
        #[arg(long)]
        word: String,
    },
    /// Empirical check of the declared structural flags.
    Flags {
        #[command(flatten)]
        proc: ProcArg,
        #[arg(long)]
        r: usize,
    },
    /// Abelianity of a probabilistic procedure and the recurrence check of its table.
    Abelian {
        #[command(flatten)]
        proc: ProcArg,
        #[arg(long)]
        r: usize,
    },
    /// Whether relabeling arrival orders stays inside the image of the encoding.
    Good {
        #[command(flatten)]
        proc: ProcArg,
        #[arg(long)]
        r: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let ctx = commands::Ctx::new(cli.jobs, cli.cap_unsafe);
    let result = match cli.command {
        Command::Enumerate { proc, r, expect_universal } => commands::enumerate(&ctx, &proc, r, expect_universal),
        Command::Orbits { proc, r, expect_one } => commands::orbits(&ctx, &proc, r, expect_one),
        Command::Prob { proc, word, mass } => commands::prob(&ctx, &proc, word.as_deref(), mass),
        Command::Fibers { proc, r, sigma } => commands::fibers(&ctx, &proc, r, sigma.as_deref()),
        Command::Encode { proc, word } => commands::encode(&ctx, &proc, &word),
        Command::Flags { proc, r } => commands::flags(&ctx, &proc, r),
        Command::Abelian { proc, r } => commands::abelian(&ctx, &proc, r),
        Command::Good { proc, r } => commands::good(&ctx, &proc, r),
    };
    match result {
        Ok(report) => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            if let Err(e) = report.write(cli.format, &mut out).and_then(|_| out.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            if report.expectation_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Workbench for union-closed set families.
#[derive(Debug, Parser)]
#[command(name = "ucs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate sequences and named families.
    #[command(subcommand)]
    Gen(Gen),
    /// Report the structure of a family file.
    Analyze { file: PathBuf },
    /// Check the conjecture on a family file (exit 1 when it fails).
    Verify { file: PathBuf },
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(Search),
    /// Compare constructions.
    #[command(subcommand)]
    Compare(Compare),
}

#[derive(Debug, Subcommand)]
enum Gen {
    /// Conway's sequence a(1..=N), one value per line.
    Conway {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Renaud's family B(N).
    Renaud(RenaudArgs),
    /// The closed form of beta(N), cross-checked against B(N) when feasible.
    Beta {
        #[arg(short = 'n')]
        n: u64,
    },
    /// The block family C_{S,K}.
    BlockUpset(BlockArgs),
    /// Pad a family so that sets per element is at most c.
    Pad(PadArgs),
}

#[derive(Debug, Args)]
struct RenaudArgs {
    #[arg(short = 'n')]
    n: u64,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BlockArgs {
    /// Block size.
    #[arg(short = 's')]
    s: u32,
    /// Number of blocks.
    #[arg(short = 'k')]
    k: u32,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PadArgs {
    /// Threshold as NUM/DEN (or an integer), greater than 2.
    #[arg(short = 'c', value_parser = commands::parse_rational)]
    c: ucs_core::constructions::Rational,
    #[arg(short = 'i')]
    input: PathBuf,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Search {
    /// phi(N), the least maximum frequency over union-closed families of N sets.
    Phi(PhiArgs),
    /// phi(1..=L) next to a(n) and beta(n).
    Table {
        #[arg(short = 'l', long = "limit")]
        limit: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Debug, Args)]
struct PhiArgs {
    #[arg(short = 'n')]
    n: usize,
    /// Use the brute-force enumeration.
    #[arg(long)]
    naive: bool,
    #[arg(long = "m-max")]
    m_max: Option<u32>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Stop after this many search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the witness here instead of stdout.
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Compare {
    /// Max-frequency gap between C_{2,N} and B(|C_{2,N}|).
    Gap {
        #[arg(short = 'N')]
        n: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(Gen::Conway { n }) => commands::gen_conway(n),
        Command::Gen(Gen::Renaud(a)) => commands::gen_renaud(a.n, a.output.as_deref()),
        Command::Gen(Gen::Beta { n }) => commands::gen_beta(n),
        Command::Gen(Gen::BlockUpset(a)) => commands::gen_block_upset(a.s, a.k, a.output.as_deref()),
        Command::Gen(Gen::Pad(a)) => commands::gen_pad(a.c, &a.input, a.output.as_deref()),
        Command::Analyze { file } => commands::analyze(&file),
        Command::Verify { file } => commands::verify(&file),
        Command::Search(Search::Phi(a)) => commands::search_phi(&commands::PhiRequest {
            n: a.n,
            naive: a.naive,
            m_max: a.m_max,
            workers: a.workers,
            budget: a.budget,
            output: a.output,
        }),
        Command::Search(Search::Table { limit, workers }) => commands::search_table(limit, workers),
        Command::Compare(Compare::Gap { n }) => commands::compare_gap(n),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            if !err.stdout.is_empty() {
                print!("{}", err.stdout);
            }
            eprintln!("ucs: {}", err.message);
            ExitCode::from(2)
        }
    }
}

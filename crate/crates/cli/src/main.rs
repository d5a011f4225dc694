//! `imprim`: imprimitivity of cycle types, permutations and permutation groups.
//!
//! Exit codes: 0 decided, 1 reproduction mismatch or error, 2 inconclusive
//! (a search budget ran out).

mod build;
mod group;
mod input;
mod partition;
mod report;
mod repro;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use imprim_core::Budgets;

use report::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "imprim",
    version,
    about = "Imprimitive permutations and primitive groups"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Emit one JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Search nodes allowed per exhaustive search.
    #[arg(long, global = true, env = "IMPRIM_BUDGET_NODES", default_value_t = Budgets::default().nodes)]
    pub budget_nodes: u64,
    /// Group elements allowed per enumeration.
    #[arg(long, global = true, default_value_t = Budgets::default().elements)]
    pub budget_elements: u64,
    /// Subsets examined per hierarchy level.
    #[arg(long, global = true, default_value_t = Budgets::default().subsets)]
    pub budget_subsets: u64,
    /// Worker threads for group searches (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Seed for sampled (non-exhaustive) searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

impl GlobalArgs {
    pub fn budgets(&self) -> Budgets {
        Budgets {
            nodes: self.budget_nodes,
            elements: self.budget_elements,
            subsets: self.budget_subsets,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// i-type and verdict for a cycle type, e.g. `1,5,10,10,10,10,10,10`.
    Partition {
        partition: String,
        /// Also test for a special M-partition.
        #[arg(long, value_name = "M")]
        special_m: Option<usize>,
    },
    /// Cycle type and verdict for a permutation in 1-based cycle notation.
    Perm {
        permutation: String,
        /// Degree.
        #[arg(short = 'n', long)]
        degree: usize,
    },
    /// Analyse a group given as a file or as `catalog:NAME`.
    Group {
        source: String,
        #[command(subcommand)]
        analysis: group::Analysis,
    },
    /// Re-run a worked example and compare it with its golden output.
    Repro {
        /// Example id; omit to list them.
        id: Option<String>,
    },
    #[command(flatten)]
    Build(build::Build),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global();
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Partition {
            partition,
            special_m,
        } => partition::run_partition(partition, *special_m, &cli.global),
        Command::Perm {
            permutation,
            degree,
        } => partition::run_perm(permutation, *degree, &cli.global),
        Command::Group { source, analysis } => group::run(source, analysis, &cli.global),
        Command::Repro { id } => repro::run(id.as_deref()),
        Command::Build(b) => build::run(b),
    };
    match result {
        Ok(mut report) => {
            report.budgets = cli.global.budgets();
            report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            report.print(cli.global.json);
            report.outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            Outcome::Error.exit_code()
        }
    }
}

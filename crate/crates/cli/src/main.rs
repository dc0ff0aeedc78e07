mod commands;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use kset_core::families::Family;
use kset_core::graph::SearchOptions;
use kset_core::homogeneity::HomogeneityOptions;

/// Constructs strongly regular graph families and checks homogeneity
/// properties of finite graphs.
#[derive(Parser, Debug)]
#[command(name = "kset", version)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every command.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Node limit for the automorphism search.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_ir_nodes: u64,
    /// Node limit for tuple-orbit trees and orbit enumeration.
    #[arg(long, global = true, default_value_t = 5_000_000, value_parser = positive_usize)]
    pub budget_orbit_nodes: usize,
    /// Limit on subsets enumerated by exhaustive censuses.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_subsets: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

impl RunConfig {
    pub fn search(&self) -> SearchOptions {
        SearchOptions {
            max_nodes: self.budget_ir_nodes,
            ..SearchOptions::default()
        }
    }

    pub fn homogeneity(&self) -> HomogeneityOptions {
        HomogeneityOptions {
            max_tree_nodes: self.budget_orbit_nodes,
            search: self.search(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family member and print it as graph6 with a descriptor.
    Construct {
        family: String,
        params: Vec<String>,
        /// Also write the graph to this file.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Write an edge list instead of graph6 to --graph-out.
        #[arg(long)]
        edge_list: bool,
    },
    /// Parameters, automorphism group and orbitals of a graph.
    Analyze {
        graph: PathBuf,
        /// Generator file of a group to analyse alongside the automorphism group.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Write the automorphism group generators to this file.
        #[arg(long)]
        save_group: Option<PathBuf>,
    },
    /// Decide k-homogeneity or k-set-homogeneity.
    Homtest {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "set")]
        mode: String,
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// Induced subgraphs of one order with their orbit counts.
    Census {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// Test the order-3 counts of an SRG parameter set against a group order.
    Screen {
        /// v,k,lambda,mu
        #[arg(long)]
        params: String,
        /// Group order, e.g. 2^8*3^3*5*7.
        #[arg(long)]
        order: String,
    },
    /// Recompute every record of an elimination ledger.
    Replay {
        /// Ledger JSON; the built-in ledger when absent.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = ["thm1.1", "thm1.2", "thm1.3", "thm1.4-psu33", "appendix1", "all"])]
        selector: String,
    },
}

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

fn exit_code_for(err: &anyhow::Error) -> u8 {
    use kset_core::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded(_)) => EXIT_BUDGET,
        Some(Error::Violation(_)) => EXIT_FAILS,
        _ => EXIT_USAGE,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let cfg = &cli.config;
    let report = match cli.command {
        Command::Construct {
            family,
            params,
            graph_out,
            edge_list,
        } => commands::construct(cfg, &family, &params, graph_out.as_deref(), edge_list)?,
        Command::Analyze {
            graph,
            group,
            save_group,
        } => commands::analyze(cfg, &graph, group.as_deref(), save_group.as_deref())?,
        Command::Homtest { graph, k, mode, group } => commands::homtest(cfg, &graph, k, &mode, group.as_deref())?,
        Command::Census { graph, m, group } => commands::census(cfg, &graph, m, group.as_deref())?,
        Command::Screen { params, order } => commands::screen(&params, &order)?,
        Command::Replay { ledger } => commands::replay(ledger.as_deref())?,
        Command::Verify { selector } => verify::run(cfg, &selector)?,
    };
    output::emit(cfg, &report)?;
    Ok(report.code)
}

fn main() -> ExitCode {
    let families = format!("Families:\n  {}", Family::USAGE.join("\n  "));
    let parsed = Cli::command()
        .mut_subcommand("construct", |c| c.after_help(families))
        .try_get_matches()
        .and_then(|m| Cli::from_arg_matches(&m));
    let cli = match parsed {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

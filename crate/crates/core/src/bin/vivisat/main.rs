//! `vivisat`: solve one DIMACS file, or run a directory of them and summarize the runs.
mod batch;
mod record;
mod solve;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vivisat::clause_db::ReduceMode;
use vivisat::restart::RestartMode;
use vivisat::vivify::{Activation, Selection, SortOrder};
use vivisat::{Budget, SolverConfig};

#[derive(Parser)]
#[command(
    name = "vivisat",
    version,
    about = "CDCL SAT solver with clause vivification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one DIMACS CNF file (`-` reads standard input).
    ///
    /// Exit code 10 means satisfiable, 20 unsatisfiable, 0 unknown and 1 an error.
    Solve(solve::SolveArgs),
    /// Solve every `.cnf` file of a directory, one process per instance.
    ///
    /// Writes one JSON record per instance to standard output and a summary table to
    /// standard error.
    Batch(batch::BatchArgs),
}

fn parse_on_off(s: &str) -> Result<bool, String> {
    match s {
        "on" => Ok(true),
        "off" => Ok(false),
        _ => Err(format!("expected `on` or `off`, got `{s}`")),
    }
}

/// Solver switches shared by `solve` and `batch`.
#[derive(Args, Clone, Debug)]
pub struct SolverFlags {
    /// Vivify clauses before and during search.
    #[arg(long, value_name = "on|off", default_value = "on", value_parser = parse_on_off, action = clap::ArgAction::Set)]
    vivify: bool,
    /// When a vivification pass starts: reduce, threshold, every, gap500, gap1000, gap1500.
    #[arg(long, value_name = "POLICY", default_value = "threshold")]
    viv_activation: Activation,
    /// Which clauses a pass visits: ghalf, gfrac=<fraction>, maple, live+, live++.
    #[arg(long, value_name = "POLICY", default_value = "live++")]
    viv_select: Selection,
    /// Literal order: current, l2h-level, h2l-level, l2h-act, h2l-act, random, reverse.
    #[arg(long, value_name = "ORDER", default_value = "current")]
    viv_sort: SortOrder,
    /// Largest learnt-clause LBD whose conflict marks the clauses used as useful.
    #[arg(long, value_name = "INT", default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    viv_gamma: u32,
    /// Propagation budget of vivification before search (0 disables it).
    #[arg(long, value_name = "INT", default_value_t = 100_000_000)]
    pre_vivify_cap: u64,
    #[arg(long, value_name = "glucose|luby", default_value = "glucose")]
    restart: RestartMode,
    #[arg(long, value_name = "glucose|tiered", default_value = "tiered")]
    reduce: ReduceMode,
    #[arg(long, value_name = "INT", default_value_t = 0)]
    seed: u64,
    /// Time limit in seconds (wall clock).
    #[arg(long, value_name = "SEC")]
    cpu_lim: Option<f64>,
    /// Conflict limit.
    #[arg(long, value_name = "INT")]
    conf_lim: Option<u64>,
}

impl SolverFlags {
    pub fn config(&self) -> SolverConfig {
        let mut cfg = SolverConfig {
            seed: self.seed,
            budget: Budget {
                conflicts: self.conf_lim,
                propagations: None,
                time_secs: self.cpu_lim,
            },
            ..SolverConfig::default()
        };
        cfg.vivify.enabled = self.vivify;
        cfg.vivify.activation = self.viv_activation;
        cfg.vivify.selection = self.viv_select;
        cfg.vivify.sort_order = self.viv_sort;
        cfg.vivify.useful_lbd_max = self.viv_gamma;
        cfg.vivify.preprocess_cap = self.pre_vivify_cap;
        cfg.restart.mode = self.restart;
        cfg.reduce.mode = self.reduce;
        cfg
    }

    /// The same flags as command-line arguments, for child processes.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![
            format!("--vivify={}", if self.vivify { "on" } else { "off" }),
            format!("--viv-activation={}", self.viv_activation),
            format!("--viv-select={}", self.viv_select),
            format!("--viv-sort={}", self.viv_sort),
            format!("--viv-gamma={}", self.viv_gamma),
            format!("--pre-vivify-cap={}", self.pre_vivify_cap),
            format!("--restart={}", self.restart),
            format!("--reduce={}", self.reduce),
            format!("--seed={}", self.seed),
        ];
        if let Some(t) = self.cpu_lim {
            args.push(format!("--cpu-lim={t}"));
        }
        if let Some(c) = self.conf_lim {
            args.push(format!("--conf-lim={c}"));
        }
        args
    }
}

/// Exit code for usage and input errors.
pub const EXIT_ERROR: u8 = 1;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => solve::run(&args),
        Command::Batch(args) => batch::run(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("vivisat: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

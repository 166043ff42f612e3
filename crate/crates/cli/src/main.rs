//! `pcnnf`: validate, smooth, cover, compile and verify DNNF encodings.
//!
//! Exit codes: 0 success (or property holds), 1 usage error, 2 input fails
//! validation, 3 internal or I/O error, 4 counterexample found, 5 sweep
//! budget or oracle limit exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pcnnf_core::encoder::EncodingKind;
use pcnnf_core::propagation::{Property, Scope, DEFAULT_BUDGET};
use pcnnf_core::separator::LevelMode;

#[derive(Parser, Debug)]
#[command(
    name = "pcnnf",
    version,
    about = "Compile smooth DNNFs into URC/PC CNF encodings and check them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Maximum number of sweep-tree nodes to visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Fall back to N random partial assignments if the budget runs out.
    #[arg(long, value_name = "N")]
    pub sample: Option<u64>,
    /// Seed for sampled mode.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check decomposability, smoothness, constant-freeness and reachability.
    Validate { input: PathBuf },
    /// Make a decomposable DNNF smooth.
    Smooth {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Level the DNNF, subdivide long edges and build the separator cover.
    Cover {
        input: PathBuf,
        #[arg(long, default_value = "min-pull")]
        level: LevelMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a smooth DNNF into a CNF encoding (DIMACS).
    Compile {
        input: PathBuf,
        #[arg(long, default_value = "pc")]
        kind: EncodingKind,
        #[arg(long, default_value = "min-pull")]
        level: LevelMode,
        /// Substitute x for <x=1> and ¬x for <x=0> (boolean domains only).
        #[arg(long)]
        booleanize: bool,
        /// DIMACS output; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Statistics JSON; defaults to <out>.stats.json when --out is given.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Sweep a DIMACS formula for a propagation-strength property.
    Verify {
        input: PathBuf,
        #[arg(long)]
        property: Property,
        /// Defaults to `inputs` for (domain) consistency and `all` otherwise.
        #[arg(long)]
        scope: Option<Scope>,
        /// Conjoin exactly-one over the values of each domain variable
        /// (taken from the `c map dom` comments).
        #[arg(long)]
        direct_encoding: bool,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Report JSON; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the models of a DNNF (by brute force) or of a DIMACS formula.
    Models {
        input: PathBuf,
        /// Project CNF models onto the domain variables.
        #[arg(long)]
        inputs_only: bool,
        #[arg(long, default_value_t = 1 << 16)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit one of the built-in example inputs.
    Fixture {
        /// fig1, fig2-embed, amk-counterexample, eo-seq-counterexample,
        /// random-smooth or mdd-expand.
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Nesting depth for random-smooth.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Layer width for mdd-expand.
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every stage and write all artifacts into a directory.
    RunAll {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "min-pull")]
        level: LevelMode,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_USAGE),
            };
        }
    };
    let result = match cli.command {
        Command::Validate { input } => commands::validate(&input),
        Command::Smooth { input, out } => commands::smooth(&input, out.as_deref()),
        Command::Cover { input, level, out } => commands::cover(&input, level, out.as_deref()),
        Command::Compile {
            input,
            kind,
            level,
            booleanize,
            out,
            stats,
        } => commands::compile(&input, kind, level, booleanize, out.as_deref(), stats.as_deref()),
        Command::Verify {
            input,
            property,
            scope,
            direct_encoding,
            sweep,
            out,
        } => commands::verify(&input, property, scope, direct_encoding, &sweep, out.as_deref()),
        Command::Models {
            input,
            inputs_only,
            cap,
            out,
        } => commands::models(&input, inputs_only, cap, out.as_deref()),
        Command::Fixture {
            name,
            seed,
            n,
            d,
            depth,
            width,
            out,
        } => commands::fixture(&name, seed, n, d, depth, width, out.as_deref()),
        Command::RunAll {
            input,
            out,
            level,
            sweep,
        } => commands::run_all(&input, &out, level, &sweep),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

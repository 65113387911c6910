use clap::{Parser, Subcommand};
use cli_io::{commands, load_config, CliError, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Isospectral renormalization-group flows for the QED and Nelson fiber
/// Hamiltonians.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// TOML run configuration; defaults apply to absent keys.
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config and the environment).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the flow and write the trace.
    Flow,
    /// Renormalized mass from three flows around |p|.
    Mass,
    /// Renormalized mass over the configured sigma0 and p lists.
    SigmaStudy,
    /// Randomized dense Feshbach identity suite.
    CheckFeshbach {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Soft-photon sum rules before and after one step.
    CheckSumrules,
    /// Scalar symmetry, reflection relation and the negative control.
    CheckSymmetry,
    /// Kernel recursion against the dense truncated-Fock oracle.
    OracleCompare {
        /// Additional mode counts for the refinement series.
        #[arg(long, default_value_t = 4)]
        refine: usize,
    },
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => load_config(p)?,
        None => RunConfig::default(),
    };
    cfg.output.forced_dir = cli.out;
    match cli.command {
        Command::Flow => commands::flow(&cfg),
        Command::Mass => commands::mass(&cfg),
        Command::SigmaStudy => commands::sigma_study(&cfg),
        Command::CheckFeshbach { dim, trials } => commands::check_feshbach(&cfg, dim, trials),
        Command::CheckSumrules => commands::check_sumrules(&cfg),
        Command::CheckSymmetry => commands::check_symmetry(&cfg),
        Command::OracleCompare { refine } => commands::oracle_compare(&cfg, refine),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            for l in &out.lines {
                println!("{l}");
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

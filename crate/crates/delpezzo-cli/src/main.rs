use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use delpezzo_cli::commands::{self, CensusArgs, Outcome};
use delpezzo_cli::{exit, CliResult, RunConfig};

#[derive(Parser)]
#[command(
    name = "delpezzo",
    version,
    about = "Exceptional toric systems on weak del Pezzo surfaces"
)]
struct Cli {
    /// More diagnostics on standard error.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog surfaces of a degree.
    Surfaces {
        #[arg(long)]
        degree: i32,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check a toric system given as JSON {degree, terms, surface?}.
    Check {
        file: PathBuf,
        #[arg(long)]
        surface: Option<String>,
    },
    /// Decide effectivity of a divisor given as JSON {degree, surface, divisor}.
    Effcheck { file: PathBuf },
    /// Counterexample census over a Weyl orbit.
    Census {
        #[arg(long)]
        degree: Option<i32>,
        /// Repeatable; defaults to every degree-2 diagram type with enough disjoint roots.
        #[arg(long = "surface")]
        surfaces: Vec<String>,
        /// Preset name (IIb-deg2, deg2-1..7, deg1-1..8), inline JSON or a JSON file.
        #[arg(long, default_value = "IIb-deg2")]
        sequence: String,
        #[arg(long, default_value = "both", value_parser = ["strong", "exceptional", "both"])]
        mode: String,
        #[arg(long)]
        workers: Option<usize>,
        /// CSV output; representatives go to a sibling .representatives.json file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Resumable run for degree 1.
        #[arg(long)]
        long_run: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Stop after this many shards (the checkpoint keeps the rest).
        #[arg(long)]
        max_shards: Option<usize>,
        #[arg(long)]
        shard_depth: Option<usize>,
    },
    /// Recompute a published table or claim: a suite name or "all".
    Reproduce {
        suite: String,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn path_str(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

fn dispatch(cli: Cli) -> CliResult<Outcome> {
    let mut cfg = RunConfig {
        verbosity: cli.verbose,
        ..RunConfig::default()
    };
    match cli.command {
        Command::Surfaces { degree, name, json } => {
            commands::surfaces(degree, name.as_deref(), json)
        }
        Command::Check { file, surface } => commands::check(&file, surface.as_deref()),
        Command::Effcheck { file } => commands::effcheck(&file),
        Command::Census {
            degree,
            surfaces,
            sequence,
            mode,
            workers,
            out,
            long_run,
            checkpoint,
            max_shards,
            shard_depth,
        } => {
            cfg.command = "census".into();
            cfg.degree = degree;
            cfg.surfaces = surfaces.clone();
            cfg.sequence = Some(sequence.clone());
            cfg.mode = Some(mode.clone());
            cfg.workers = workers;
            cfg.out = path_str(&out);
            let args = CensusArgs {
                degree,
                surfaces,
                sequence,
                mode,
                workers,
                out,
                long_run,
                checkpoint,
                max_shards,
                shard_depth,
            };
            commands::census(&args, &cfg)
        }
        Command::Reproduce {
            suite,
            workers,
            out,
        } => {
            cfg.command = "reproduce".into();
            cfg.input = Some(suite.clone());
            cfg.workers = workers;
            cfg.out = path_str(&out);
            commands::reproduce(&suite, workers, out.as_deref(), &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verbose = cli.verbose;
    match dispatch(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if verbose > 0 {
                eprintln!("exit code {}", f.code);
            }
            ExitCode::from(if f.code == exit::OK {
                exit::INTERNAL
            } else {
                f.code
            })
        }
    }
}

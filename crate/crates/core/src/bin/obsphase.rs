use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use obsphase::scenario::{run_scenario, sweep, RunOptions, Scenario, ScenarioError, SweepRange};

#[derive(Parser)]
#[command(name = "obsphase", version, about = "Run geometric-phase scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Scenario file (JSON).
    scenario: PathBuf,
    /// Override the number of propagator steps.
    #[arg(long)]
    steps: Option<usize>,
    /// Directory for written artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cyclicity tolerance on the eigenvector overlap deficit.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its report and curves.
    Run(Common),
    /// Evaluate the scenario over a range of one parameter and emit a CSV table.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Parameter to vary, e.g. `phi` or `w`.
        #[arg(long)]
        param: String,
        /// `lo:hi:count`, endpoints included.
        #[arg(long, allow_hyphen_values = true)]
        range: SweepRange,
    },
}

fn options(c: &Common) -> RunOptions {
    RunOptions {
        steps: c.steps,
        tol: c.tol,
        out_dir: c.out.clone(),
    }
}

fn execute(cli: Cli) -> Result<(), ScenarioError> {
    match cli.command {
        Command::Run(c) => {
            let scenario = Scenario::load(&c.scenario)?;
            let outcome = run_scenario(&scenario, &options(&c))?;
            for path in outcome.written {
                println!("{}", path.display());
            }
        }
        Command::Sweep {
            common,
            param,
            range,
        } => {
            let scenario = Scenario::load(&common.scenario)?;
            let (csv, _) = sweep(&scenario, &param, range, &options(&common))?;
            match &common.out {
                Some(dir) => {
                    let path = dir.join(format!("{}_sweep_{param}.csv", scenario.name));
                    std::fs::create_dir_all(dir)
                        .and_then(|_| std::fs::write(&path, csv))
                        .map_err(|e| ScenarioError::Io {
                            path: path.display().to_string(),
                            message: e.to_string(),
                        })?;
                    println!("{}", path.display());
                }
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

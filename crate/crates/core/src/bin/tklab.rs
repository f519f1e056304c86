use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tklab::cli::{
    self, json::to_canonical_string, Inputs, Overrides, Report, Scenario, ScenarioKind,
};

#[derive(Parser)]
#[command(
    name = "tklab",
    version,
    about = "Toeplitz kernel and model space verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Shared {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Relative singular value threshold for exact-engine rank decisions.
    #[arg(long)]
    tol_rank: Option<f64>,
    /// Largest principal angle accepted by oracle comparisons.
    #[arg(long)]
    tol_angle: Option<f64>,
    /// Oracle truncation size N.
    #[arg(long)]
    trunc: Option<usize>,
    /// Suite name for verify scenarios.
    #[arg(long)]
    suite: Option<String>,
    /// Re-run a single trial index.
    #[arg(long)]
    trial: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Shared {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            trials: self.trials,
            tol_rank: self.tol_rank,
            tol_angle: self.tol_angle,
            trunc: self.trunc,
            suite: self.suite.clone(),
            trial: self.trial,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        shared: Shared,
    },
    /// Run a randomized verification suite.
    Verify {
        name: Option<String>,
        #[command(flatten)]
        shared: Shared,
    },
    /// Print the available suites.
    ListSuites,
}

const DEFAULT_TRIALS: usize = 100;

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), String> {
    let text = report.to_canonical_json();
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdout: {e}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match cli.command {
        Command::ListSuites => {
            let value = serde_json::to_value(cli::list_suites()).expect("suite table serializes");
            print!("{}", to_canonical_string(&value));
            return ExitCode::SUCCESS;
        }
        Command::Run { scenario, shared } => (
            cli::run_scenario(&scenario, &shared.overrides()),
            shared.out,
        ),
        Command::Verify { name, shared } => {
            let mut overrides = shared.overrides();
            overrides.suite = name.or(overrides.suite);
            let mut scenario = Scenario {
                kind: ScenarioKind::Verify,
                inputs: Inputs::default(),
                seed: 0,
                trials: DEFAULT_TRIALS,
                tolerances: None,
            };
            scenario.apply(&overrides);
            (cli::run_prepared(scenario), shared.out)
        }
    };
    match result {
        Ok(report) => {
            if let Err(e) = emit(&report, out.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

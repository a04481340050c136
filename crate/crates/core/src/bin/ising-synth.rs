use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ising_synth::harness::{
    compare_runs, convention_sweep, exit_code, load_report, reference_cnot_circuit,
    resume_experiment, run_experiment, ExperimentConfig, Overrides,
};
use ising_synth::render::parse_circuit;
use ising_synth::report::{Algorithm, RunReport};
use ising_synth::SynthError;

#[derive(Parser)]
#[command(name = "ising-synth", version, about = "Evolve Ising-gate circuits for a target unitary")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Start a run and write its artifacts to the output directory.
    Run(RunArgs),
    /// Score a two-wire circuit against CNOT under every convention.
    SweepConventions {
        /// Circuit text; defaults to the reference three-gate circuit.
        #[arg(long)]
        circuit: Option<String>,
        /// Also write the table as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate two or more run reports on the same target.
    Compare {
        #[arg(required = true, num_args = 2..)]
        reports: Vec<PathBuf>,
        /// Also write the comparison as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Continue a run from the checkpoint in its output directory.
    Resume {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        max_generations: Option<u64>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_algo)]
    algo: Option<Algorithm>,
    /// Built-in target name or path to a target file.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    max_generations: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    match s.to_ascii_lowercase().as_str() {
        "qeqea" => Ok(Algorithm::Qeqea),
        "ga" => Ok(Algorithm::Ga),
        other => Err(format!("unknown algorithm `{other}` (expected qeqea or ga)")),
    }
}

fn finish(report: &RunReport, dir: &std::path::Path) -> i32 {
    print!(
        "{}",
        std::fs::read_to_string(dir.join("summary.txt")).unwrap_or_default()
    );
    exit_code(report)
}

fn dispatch(cli: Cli) -> Result<i32, SynthError> {
    match cli.command {
        Command::Run(a) => {
            let base = match &a.config {
                Some(p) => ExperimentConfig::load(p)?,
                None => ExperimentConfig::default(),
            };
            let cfg = base.apply(&Overrides {
                seed: a.seed,
                algo: a.algo,
                target: a.target,
                max_generations: a.max_generations,
                out: a.out,
            })?;
            let report = run_experiment(&cfg)?;
            Ok(finish(&report, &cfg.out))
        }
        Command::SweepConventions { circuit, out } => {
            let gates = match circuit {
                Some(text) => parse_circuit(&text, 2)?,
                None => reference_cnot_circuit(),
            };
            let table = convention_sweep(&gates)?;
            print!("{}", table.to_text());
            if let Some(path) = out {
                let json = serde_json::to_string_pretty(&table).expect("table serializes");
                std::fs::write(&path, json).map_err(|e| SynthError::Io { path, source: e })?;
            }
            Ok(0)
        }
        Command::Compare { reports, out } => {
            let loaded = reports.iter().map(|p| load_report(p)).collect::<Result<Vec<_>, _>>()?;
            let cmp = compare_runs(&loaded)?;
            print!("{}", cmp.to_text());
            if let Some(path) = out {
                std::fs::write(&path, cmp.to_json()).map_err(|e| SynthError::Io { path, source: e })?;
            }
            Ok(0)
        }
        Command::Resume { out, max_generations } => {
            let report = resume_experiment(&out, max_generations)?;
            Ok(finish(&report, &out))
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

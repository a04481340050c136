//! Experiment orchestration around the two engines.

pub mod compare;
pub mod config;
pub mod experiment;
pub mod sweep;

pub use compare::{compare_runs, load_report, Comparison, ComparisonRow};
pub use config::{ExperimentConfig, Overrides};
pub use experiment::{
    exit_code, read_checkpoint, read_log, resume_experiment, run_experiment, EngineState,
    ExperimentCheckpoint,
};
pub use sweep::{convention_sweep, reference_cnot_circuit, ConventionChoice, SweepRow, SweepTable};

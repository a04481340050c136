//! Synthesize CNOT with the quantum-encoded evolutionary algorithm.
//!
//! ```text
//! cargo run --release --example cnot_qeqea -- [seed] [length] [max_generations] [population]
//! ```
//!
//! Three Ising gates cannot express CNOT (the best reachable fitness is
//! about 0.459), so the default length is 5.

use ising_synth::engine::{run_qeqea_named, PopulationConfig};
use ising_synth::fitness::{matrix_error_report, target_matrix};
use ising_synth::GateSet;

fn arg<T: std::str::FromStr>(k: usize, default: T) -> T {
    std::env::args().nth(k).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ising_synth::Result<()> {
    let seed: u64 = arg(1, 1);
    let len: usize = arg(2, 5);
    let target = target_matrix("CNOT", 2)?;

    let mut cfg = PopulationConfig::new(2, len, arg(4, 10));
    cfg.max_generations = arg(3, 50_000);
    let report = run_qeqea_named(&cfg, &target.matrix, &target.name, seed)?;

    for r in report.records.iter().step_by((report.records.len() / 10).max(1)) {
        println!("gen {:>6}  best {:.6}  mean {:.6}", r.generation, r.best_fitness, r.mean_fitness);
    }
    println!("stop:     {} after {} generations", report.stop_reason.as_str(), report.generations);
    println!("fitness:  {:.6}", report.final_fitness);
    println!("circuit:  {}", report.best_circuit_text);

    let u = GateSet::new(2)?.circuit_unitary(&report.best_circuit)?;
    let err = matrix_error_report(&u, &target.matrix)?;
    println!("error:    max {:.5}  mean {:.5}", err.max_abs_error, err.mean_abs_error);
    Ok(())
}

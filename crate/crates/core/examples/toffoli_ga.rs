//! Evolve a Toffoli approximation with the classical GA baseline.
//!
//! ```text
//! cargo run --release --example toffoli_ga -- [seed] [generations] [length]
//! ```

use ising_synth::fitness::{matrix_error_report, target_matrix};
use ising_synth::ga::{run_ga_named, GaConfig};
use ising_synth::GateSet;

fn main() -> ising_synth::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let seed = args.next().flatten().unwrap_or(1);
    let generations = args.next().flatten().unwrap_or(5_000);
    let length = args.next().flatten().unwrap_or(16) as usize;

    let target = target_matrix("Toffoli", 3)?;
    let mut cfg = GaConfig::new(3, length);
    cfg.max_generations = generations;
    let report = run_ga_named(&cfg, &target.matrix, &target.name, seed)?;

    let milestones = [0.5, 0.6, 0.7, 0.8, 0.9, 0.95];
    for m in milestones {
        match report.generation_reaching(m) {
            Some(g) => println!("fitness {m:.2} first reached at generation {g}"),
            None => println!("fitness {m:.2} not reached"),
        }
    }
    println!("final fitness {:.4} after {} generations", report.final_fitness, report.generations);
    println!("{}", report.best_circuit_text);

    let u = GateSet::new(3)?.circuit_unitary(&report.best_circuit)?;
    let err = matrix_error_report(&u, &target.matrix)?;
    println!("entrywise error: max {:.4}, mean {:.4}", err.max_abs_error, err.mean_abs_error);
    Ok(())
}

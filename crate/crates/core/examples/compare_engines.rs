//! Run both engines on the same target and print a comparison table.
//!
//! ```text
//! cargo run --release --example compare_engines -- [target] [length] [generations] [seed]
//! ```

use ising_synth::engine::{run_qeqea_named, PopulationConfig};
use ising_synth::fitness::target_matrix;
use ising_synth::ga::{run_ga_named, GaConfig};
use ising_synth::harness::compare_runs;

fn main() -> ising_synth::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let target_name = args.first().map(String::as_str).unwrap_or("CNOT");
    let len: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let generations: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5_000);
    let seed: u64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1);

    let wires = match target_name.to_ascii_lowercase().as_str() {
        "cnot" => 2,
        "cccnot" => 4,
        _ => 3,
    };
    let target = target_matrix(target_name, wires)?;

    let mut q = PopulationConfig::new(wires, len, 10);
    q.max_generations = generations;
    let mut g = GaConfig::new(wires, len);
    g.max_generations = generations;

    let reports = vec![
        run_qeqea_named(&q, &target.matrix, &target.name, seed)?,
        run_ga_named(&g, &target.matrix, &target.name, seed)?,
    ];
    for r in &reports {
        println!("{:<6} {}", r.algorithm, r.best_circuit_text);
    }
    println!();
    print!("{}", compare_runs(&reports)?.to_text());
    Ok(())
}

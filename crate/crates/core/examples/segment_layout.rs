//! How a three-wire population of two individuals, length four, is laid out
//! in memory, and what one generation of segments decodes to.

use ising_synth::engine::{construct_segments, init_population, sample_circuit_for, GenerationKey, PopulationConfig};
use ising_synth::render::render_circuit;
use ising_synth::GateSet;

fn main() -> ising_synth::Result<()> {
    let cfg = PopulationConfig::new(3, 4, 2);
    let layout = cfg.layout();
    let pop = init_population(&cfg, 7)?;
    println!(
        "{} slot kinds ({} rotation wires, {} interaction templates)",
        layout.slot_kinds(),
        layout.wires,
        layout.templates
    );
    println!("{} qubits, {} qutrits\n", pop.qubits.len(), pop.qutrits.len());

    println!("flat  kind  individual  position");
    for flat in (0..layout.qubit_count()).step_by(5) {
        let r = layout.decode(flat);
        println!("{flat:>4}  {:>4}  {:>10}  {:>8}", r.slot_kind, r.individual, r.position);
    }

    let gates = GateSet::new(3)?;
    let key = GenerationKey { seed: 7, generation: 0 };
    let bank = construct_segments(&pop, &gates, 1, key, false);
    println!("\nsampled circuits for generation 0:");
    for c in 0..cfg.size_of_population {
        let bp = sample_circuit_for(&layout, key, c);
        println!("  slots {:?}", bp.flat_indices());
        println!("  {}", render_circuit(&bp.gates(&bank)));
    }
    Ok(())
}

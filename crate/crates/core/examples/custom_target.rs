//! Load a target unitary from a text file and synthesize it.
//!
//! The file format is a wire count followed by one matrix row per line with
//! entries written `re+imj`. Lines starting with `#` are comments. This
//! example writes a controlled-Z to a temporary file, loads it back and
//! runs the GA on it.

use ising_synth::fitness::load_target_file;
use ising_synth::ga::{run_ga_named, GaConfig};

const CONTROLLED_Z: &str = "\
# controlled-Z on two wires
2
1+0j 0+0j 0+0j 0+0j
0+0j 1+0j 0+0j 0+0j
0+0j 0+0j 1+0j 0+0j
0+0j 0+0j 0+0j -1+0j
";

fn main() -> ising_synth::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("cz.txt");
    std::fs::write(&path, CONTROLLED_Z).expect("write target");

    let target = load_target_file(&path)?;
    println!("loaded `{}` on {} wires", target.name, target.wires);

    let mut cfg = GaConfig::new(target.wires, 3);
    cfg.max_generations = 5_000;
    let report = run_ga_named(&cfg, &target.matrix, &target.name, 3)?;
    println!(
        "{}: fitness {:.6} after {} generations",
        report.stop_reason.as_str(),
        report.final_fitness,
        report.generations
    );
    println!("{}", report.best_circuit_text);
    Ok(())
}

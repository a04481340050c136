//! Score the reference three-gate CNOT circuit under every matrix convention.
//!
//! No reading of the circuit reaches fitness 1. Pass a different two-wire
//! circuit in rendered form to sweep that instead:
//!
//! ```text
//! cargo run --example convention_sweep -- "R1y(θ=1.570796)J12(θ=4.712389)R1x(θ=4.712389)"
//! ```

use ising_synth::harness::{convention_sweep, reference_cnot_circuit};
use ising_synth::render::parse_circuit;

fn main() -> ising_synth::Result<()> {
    let gates = match std::env::args().nth(1) {
        Some(text) => parse_circuit(&text, 2)?,
        None => reference_cnot_circuit(),
    };
    let table = convention_sweep(&gates)?;
    print!("{}", table.to_text());
    Ok(())
}

//! Evolutionary synthesis of quantum circuits built from Ising-model gates.
//!
//! Two search engines share one gate model:
//!
//! * [`engine`]: a quantum-encoded evolutionary algorithm that stores gate
//!   angles in qubit parameters and rotation axes in qutrit states, samples
//!   circuits from that population and adapts mutation strength per segment;
//! * [`ga`]: a classical genetic algorithm over whole-circuit genomes.
//!
//! [`harness`] wraps both engines with configuration files, run directories,
//! checkpoints and report comparison. See `examples/` for runnable tours.

pub mod circuit;
pub mod encoding;
pub mod engine;
pub mod error;
pub mod fitness;
pub mod ga;
pub mod gates;
pub mod harness;
pub mod linalg;
pub mod render;
pub mod report;
pub mod rng;

pub use circuit::{Gate, GateSet};
pub use error::{Result, SynthError};
pub use linalg::{Complex, ComplexMatrix};

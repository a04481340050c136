use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::population::{Layout, PopulationState, SegmentRef};
use crate::circuit::{Gate, GateSet};
use crate::encoding::{estimate_axis, read_angle};
use crate::error::{Result, SynthError};
use crate::fitness::fitness_value;
use crate::linalg::ComplexMatrix;
use crate::rng::{stream, Purpose};

/// A decoded segment and its full-width unitary.
#[derive(Clone, Debug)]
pub struct Segment {
    pub gate: Gate,
    pub unitary: ComplexMatrix,
}

/// All segments decoded from the population for one generation.
#[derive(Clone, Debug)]
pub struct SegmentBank {
    layout: Layout,
    segments: Vec<Segment>,
}

impl SegmentBank {
    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn get(&self, flat_index: usize) -> &Segment {
        &self.segments[flat_index]
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter()
    }
}

/// Where the measurement streams for a generation come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationKey {
    pub seed: u64,
    pub generation: u64,
}

/// Decode one slot: measure the qutrit for the axis (rotations) and copy
/// the qubit angle; interactions reuse the precomputed template.
pub fn decode_slot(
    pop: &PopulationState,
    gates: &GateSet,
    flat_index: usize,
    n_meas: usize,
    key: GenerationKey,
) -> Gate {
    let layout = &pop.layout;
    let slot = layout.decode(flat_index);
    let theta = read_angle(&pop.qubits[flat_index]);
    if layout.is_rotation_kind(slot.slot_kind) {
        let mut rng = stream(key.seed, key.generation, Purpose::Measure, flat_index as u64);
        let qutrit = pop.qutrit(flat_index).expect("rotation slot has a qutrit");
        Gate::Rotation {
            wire: slot.slot_kind + 1,
            axis: estimate_axis(qutrit, n_meas, &mut rng),
            theta,
        }
    } else {
        let template = &gates.templates()[slot.slot_kind - layout.wires];
        Gate::Interaction {
            pair: template.pair(),
            theta,
        }
    }
}

pub fn construct_segments(
    pop: &PopulationState,
    gates: &GateSet,
    n_meas: usize,
    key: GenerationKey,
    parallel: bool,
) -> SegmentBank {
    let build = |flat: usize| {
        let gate = decode_slot(pop, gates, flat, n_meas, key);
        let unitary = gates.unitary(&gate).expect("decoded gates are in range");
        Segment { gate, unitary }
    };
    let n = pop.layout.qubit_count();
    let segments = if parallel {
        (0..n).into_par_iter().map(build).collect()
    } else {
        (0..n).map(build).collect()
    };
    SegmentBank {
        layout: pop.layout,
        segments,
    }
}

/// Ordered segment references, one per circuit position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitBlueprint {
    pub refs: Vec<SegmentRef>,
}

impl CircuitBlueprint {
    pub fn flat_indices(&self) -> Vec<usize> {
        self.refs.iter().map(|r| r.flat_index).collect()
    }

    pub fn gates(&self, bank: &SegmentBank) -> Vec<Gate> {
        self.refs.iter().map(|r| bank.get(r.flat_index).gate).collect()
    }
}

/// Draw an individual and a slot kind for every position.
pub fn sample_circuit<R: Rng + ?Sized>(layout: &Layout, rng: &mut R) -> CircuitBlueprint {
    let refs = (0..layout.length)
        .map(|position| {
            let individual = rng.random_range(0..layout.individuals);
            let slot_kind = rng.random_range(0..layout.slot_kinds());
            layout.segment_ref(slot_kind, individual, position)
        })
        .collect();
    CircuitBlueprint { refs }
}

/// The `index`-th circuit of a generation, from its own stream.
pub fn sample_circuit_for(layout: &Layout, key: GenerationKey, index: usize) -> CircuitBlueprint {
    let mut rng = stream(key.seed, key.generation, Purpose::Sample, index as u64);
    sample_circuit(layout, &mut rng)
}

pub fn blueprint_unitary(bp: &CircuitBlueprint, bank: &SegmentBank, gates: &GateSet) -> ComplexMatrix {
    gates.compose(bp.refs.iter().map(|r| &bank.get(r.flat_index).unitary))
}

pub fn evaluate_circuit(
    bp: &CircuitBlueprint,
    bank: &SegmentBank,
    gates: &GateSet,
    target: &ComplexMatrix,
) -> Result<f64> {
    if target.dim() != gates.dim() {
        return Err(SynthError::Dimension {
            expected: gates.dim(),
            found: target.dim(),
        });
    }
    fitness_value(&blueprint_unitary(bp, bank, gates), target)
}

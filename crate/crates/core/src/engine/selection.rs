//! Position-dependent segment fitness and adaptive mutation.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::population::{PopulationConfig, PopulationState};
use super::segments::CircuitBlueprint;
use crate::encoding::{mutate_angle, mutate_qutrit, QubitParam, QutritState};

/// Best circuit fitness each `(flat index, position)` pair has taken part in.
/// Missing entries read as 0.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<TableEntry>", from = "Vec<TableEntry>")]
pub struct SegmentFitnessTable {
    entries: BTreeMap<(usize, usize), f64>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TableEntry {
    pub flat_index: usize,
    pub position: usize,
    pub fitness: f64,
}

impl From<SegmentFitnessTable> for Vec<TableEntry> {
    fn from(t: SegmentFitnessTable) -> Self {
        t.entries
            .into_iter()
            .map(|((flat_index, position), fitness)| TableEntry {
                flat_index,
                position,
                fitness,
            })
            .collect()
    }
}

impl From<Vec<TableEntry>> for SegmentFitnessTable {
    fn from(v: Vec<TableEntry>) -> Self {
        SegmentFitnessTable {
            entries: v
                .into_iter()
                .map(|e| ((e.flat_index, e.position), e.fitness))
                .collect(),
        }
    }
}

impl SegmentFitnessTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, flat_index: usize, position: usize) -> f64 {
        self.entries.get(&(flat_index, position)).copied().unwrap_or(0.0)
    }

    /// Max over all positions recorded for a slot.
    pub fn slot_fitness(&self, flat_index: usize) -> f64 {
        self.entries
            .range((flat_index, 0)..(flat_index + 1, 0))
            .map(|(_, &f)| f)
            .fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Raise every entry the circuit touched to at least `fitness`.
    /// Returns the flat indices whose entry strictly improved.
    pub fn record(&mut self, bp: &CircuitBlueprint, fitness: f64) -> Vec<usize> {
        let mut improved = Vec::new();
        for r in &bp.refs {
            let entry = self.entries.entry((r.flat_index, r.position)).or_insert(0.0);
            if fitness > *entry {
                *entry = fitness;
                improved.push(r.flat_index);
            }
        }
        improved
    }
}

pub fn update_segment_fitness(
    mut table: SegmentFitnessTable,
    bp: &CircuitBlueprint,
    fitness: f64,
) -> SegmentFitnessTable {
    table.record(bp, fitness);
    table
}

/// Pre-mutation state of one slot, restored if the mutation does not pay off.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlotSnapshot {
    pub flat_index: usize,
    pub qubit: QubitParam,
    pub qutrit: Option<QutritState>,
}

impl SlotSnapshot {
    pub fn restore(&self, pop: &mut PopulationState) {
        pop.qubits[self.flat_index] = self.qubit;
        if let Some(q) = self.qutrit {
            pop.qutrits[self.flat_index] = q;
        }
    }
}

/// Mutate slots independently with `probability_of_mutation`.
///
/// A fair coin picks qubit (angle) or qutrit (axis) mutation; interaction
/// slots have no qutrit and always mutate their angle. The step is scaled by
/// `1 - slot fitness`. Returns a snapshot for every mutated slot.
pub fn mutate_population<R: Rng + ?Sized>(
    pop: &mut PopulationState,
    table: &SegmentFitnessTable,
    cfg: &PopulationConfig,
    rng: &mut R,
) -> Vec<SlotSnapshot> {
    let mut snapshots = Vec::new();
    if cfg.probability_of_mutation <= 0.0 {
        return snapshots;
    }
    let layout = pop.layout;
    for flat in 0..layout.qubit_count() {
        if !rng.random_bool(cfg.probability_of_mutation) {
            continue;
        }
        let is_rotation = layout.is_rotation_kind(layout.decode(flat).slot_kind);
        snapshots.push(SlotSnapshot {
            flat_index: flat,
            qubit: pop.qubits[flat],
            qutrit: is_rotation.then(|| pop.qutrits[flat]),
        });
        let fitness = table.slot_fitness(flat);
        let mutate_qubit = rng.random_bool(0.5);
        if mutate_qubit || !is_rotation {
            pop.qubits[flat] = mutate_angle(&pop.qubits[flat], fitness, cfg.mutation_range, rng);
        } else {
            pop.qutrits[flat] = mutate_qutrit(&pop.qutrits[flat], fitness, rng);
        }
    }
    snapshots
}

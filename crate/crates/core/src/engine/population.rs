use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::encoding::{QubitParam, QutritState};
use crate::error::{Result, SynthError};
use crate::gates::template_count;
use crate::rng::{stream, Purpose};

/// Parameters of a QEQEA run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopulationConfig {
    /// Circuit length in segments.
    pub size_of_individual: usize,
    /// Individuals per slot kind, and circuits sampled per generation.
    pub size_of_population: usize,
    pub number_of_wires: usize,
    pub probability_of_mutation: f64,
    /// Largest angle step of a qubit mutation.
    pub mutation_range: f64,
    /// Qutrit measurements per segment construction.
    pub n_meas: usize,
    pub max_generations: u64,
    pub target_fitness: f64,
    /// Construct segments and evaluate circuits on the rayon pool.
    pub parallel: bool,
    /// Upper bound on the bytes used by one generation's segment bank.
    pub memory_cap_bytes: u64,
}

pub const DEFAULT_MAX_GENERATIONS: u64 = 10_000_000;
pub const DEFAULT_MEMORY_CAP: u64 = 1 << 30;

impl PopulationConfig {
    pub fn new(number_of_wires: usize, size_of_individual: usize, size_of_population: usize) -> Self {
        PopulationConfig {
            size_of_individual,
            size_of_population,
            number_of_wires,
            probability_of_mutation: 0.3,
            mutation_range: FRAC_PI_4,
            n_meas: 1,
            max_generations: DEFAULT_MAX_GENERATIONS,
            target_fitness: 0.999,
            parallel: false,
            memory_cap_bytes: DEFAULT_MEMORY_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.number_of_wires < 2 {
            return Err(SynthError::range("number_of_wires", "must be at least 2"));
        }
        if self.size_of_individual == 0 {
            return Err(SynthError::range("size_of_individual", "must be positive"));
        }
        if self.size_of_population == 0 {
            return Err(SynthError::range("size_of_population", "must be positive"));
        }
        if !(0.0..=1.0).contains(&self.probability_of_mutation) {
            return Err(SynthError::range(
                "probability_of_mutation",
                format!("{} is outside [0, 1]", self.probability_of_mutation),
            ));
        }
        if !(self.mutation_range > 0.0 && self.mutation_range.is_finite()) {
            return Err(SynthError::range("mutation_range", "must be a positive angle"));
        }
        if self.n_meas == 0 {
            return Err(SynthError::range("n_meas", "must be at least 1"));
        }
        if self.max_generations == 0 {
            return Err(SynthError::range("max_generations", "must be positive"));
        }
        if !(self.target_fitness > 0.0 && self.target_fitness <= 1.0) {
            return Err(SynthError::range(
                "target_fitness",
                format!("{} is outside (0, 1]", self.target_fitness),
            ));
        }
        self.layout().check_memory(self.memory_cap_bytes)
    }

    pub fn layout(&self) -> Layout {
        Layout {
            wires: self.number_of_wires,
            templates: template_count(self.number_of_wires),
            individuals: self.size_of_population,
            length: self.size_of_individual,
        }
    }
}

/// Mapping between `(slot kind, individual, position)` and flat indices.
///
/// Slot kinds `0..wires` are rotations on wire `kind + 1`; kinds
/// `wires..wires + templates` are interactions using template
/// `kind - wires`. Each kind owns a contiguous region of
/// `individuals · length` slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub wires: usize,
    pub templates: usize,
    pub individuals: usize,
    pub length: usize,
}

/// Address of one segment in the population.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegmentRef {
    pub slot_kind: usize,
    pub individual: usize,
    pub position: usize,
    pub flat_index: usize,
}

impl Layout {
    pub fn slot_kinds(&self) -> usize {
        self.wires + self.templates
    }

    pub fn region_size(&self) -> usize {
        self.individuals * self.length
    }

    /// Qubit count: `(templates + wires) · individuals · length`.
    pub fn qubit_count(&self) -> usize {
        self.slot_kinds() * self.region_size()
    }

    /// Qutrit count: `wires · individuals · length`.
    pub fn qutrit_count(&self) -> usize {
        self.wires * self.region_size()
    }

    pub fn is_rotation_kind(&self, kind: usize) -> bool {
        kind < self.wires
    }

    pub fn flat_index(&self, slot_kind: usize, individual: usize, position: usize) -> usize {
        slot_kind * self.length * self.individuals + individual * self.length + position
    }

    pub fn segment_ref(&self, slot_kind: usize, individual: usize, position: usize) -> SegmentRef {
        SegmentRef {
            slot_kind,
            individual,
            position,
            flat_index: self.flat_index(slot_kind, individual, position),
        }
    }

    pub fn decode(&self, flat_index: usize) -> SegmentRef {
        let region = self.region_size();
        let slot_kind = flat_index / region;
        let within = flat_index % region;
        SegmentRef {
            slot_kind,
            individual: within / self.length,
            position: within % self.length,
            flat_index,
        }
    }

    fn check_memory(&self, cap: u64) -> Result<()> {
        let too_big = || {
            SynthError::config(format!(
                "segment bank for {} wires and {} slots exceeds the memory cap of {cap} bytes",
                self.wires,
                self.qubit_count()
            ))
        };
        if self.wires >= 16 {
            return Err(too_big());
        }
        let dim = 1u64 << self.wires;
        let bytes = (self.qubit_count() as u64)
            .checked_mul(dim * dim)
            .and_then(|v| v.checked_mul(16))
            .ok_or_else(too_big)?;
        if bytes > cap {
            return Err(too_big());
        }
        Ok(())
    }
}

/// The evolved genome: one qubit per slot, one qutrit per rotation slot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopulationState {
    pub layout: Layout,
    pub qubits: Vec<QubitParam>,
    pub qutrits: Vec<QutritState>,
}

impl PopulationState {
    /// Qutrit of a slot, if it has one. Rotation-region slots share their
    /// flat index with their qutrit.
    pub fn qutrit(&self, flat_index: usize) -> Option<&QutritState> {
        self.qutrits.get(flat_index)
    }
}

pub fn init_population(cfg: &PopulationConfig, seed: u64) -> Result<PopulationState> {
    cfg.validate()?;
    let layout = cfg.layout();
    let mut rng = stream(seed, 0, Purpose::Init, 0);
    let qubits = (0..layout.qubit_count())
        .map(|_| QubitParam::random(&mut rng))
        .collect();
    let qutrits = (0..layout.qutrit_count())
        .map(|_| QutritState::random(&mut rng))
        .collect();
    Ok(PopulationState {
        layout,
        qubits,
        qutrits,
    })
}

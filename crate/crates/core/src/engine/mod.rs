//! The quantum-encoded evolutionary algorithm.
//!
//! One generation:
//!
//! 1. decode every slot of the qubit/qutrit population into a segment,
//! 2. sample `size_of_population` circuits by drawing, for each position, an
//!    individual and a slot kind,
//! 3. score each circuit against the target,
//! 4. raise the position-indexed fitness of every segment a circuit used,
//! 5. undo last generation's mutations that did not raise any entry,
//! 6. mutate, scaling each step by `1 - segment fitness`.
//!
//! There is no crossover. Circuits are built from a single shared genome.

mod population;
mod segments;
mod selection;

pub use population::{
    init_population, Layout, PopulationConfig, PopulationState, SegmentRef, DEFAULT_MAX_GENERATIONS,
    DEFAULT_MEMORY_CAP,
};
pub use segments::{
    blueprint_unitary, construct_segments, decode_slot, evaluate_circuit, sample_circuit,
    sample_circuit_for, CircuitBlueprint, GenerationKey, Segment, SegmentBank,
};
pub use selection::{
    mutate_population, update_segment_fitness, SegmentFitnessTable, SlotSnapshot, TableEntry,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::GateSet;
use crate::error::{Result, SynthError};
use crate::linalg::ComplexMatrix;
use crate::report::{
    build_report, drive, Algorithm, BestCircuit, CircuitSample, Evolver, GenerationStats,
    ReportMeta, RunReport, StopRule,
};
use crate::rng::{stream, Purpose};

/// Serializable engine state; enough to continue a run bit-for-bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QeqeaCheckpoint {
    pub config: PopulationConfig,
    pub seed: u64,
    pub generation: u64,
    pub population: PopulationState,
    pub table: SegmentFitnessTable,
    pub pending: Vec<SlotSnapshot>,
    pub best: Option<BestCircuit>,
}

pub struct QeqeaEngine {
    cfg: PopulationConfig,
    gates: GateSet,
    target: ComplexMatrix,
    seed: u64,
    generation: u64,
    population: PopulationState,
    table: SegmentFitnessTable,
    pending: Vec<SlotSnapshot>,
    best: Option<BestCircuit>,
    verbose: bool,
}

impl QeqeaEngine {
    pub fn new(cfg: PopulationConfig, target: &ComplexMatrix, seed: u64) -> Result<Self> {
        let population = init_population(&cfg, seed)?;
        Self::assemble(
            QeqeaCheckpoint {
                config: cfg,
                seed,
                generation: 0,
                population,
                table: SegmentFitnessTable::new(),
                pending: Vec::new(),
                best: None,
            },
            target,
        )
    }

    pub fn from_checkpoint(cp: QeqeaCheckpoint, target: &ComplexMatrix) -> Result<Self> {
        cp.config.validate()?;
        if cp.population.layout != cp.config.layout()
            || cp.population.qubits.len() != cp.config.layout().qubit_count()
            || cp.population.qutrits.len() != cp.config.layout().qutrit_count()
        {
            return Err(SynthError::config("checkpoint population does not match its config"));
        }
        Self::assemble(cp, target)
    }

    fn assemble(cp: QeqeaCheckpoint, target: &ComplexMatrix) -> Result<Self> {
        let gates = GateSet::new(cp.config.number_of_wires)?;
        if target.dim() != gates.dim() {
            return Err(SynthError::Dimension {
                expected: gates.dim(),
                found: target.dim(),
            });
        }
        Ok(QeqeaEngine {
            cfg: cp.config,
            gates,
            target: target.clone(),
            seed: cp.seed,
            generation: cp.generation,
            population: cp.population,
            table: cp.table,
            pending: cp.pending,
            best: cp.best,
            verbose: false,
        })
    }

    /// Record every sampled circuit in the generation stats.
    pub fn set_verbose(&mut self, verbose: bool) {
        self.verbose = verbose;
    }

    pub fn config(&self) -> &PopulationConfig {
        &self.cfg
    }

    pub fn population(&self) -> &PopulationState {
        &self.population
    }

    pub fn fitness_table(&self) -> &SegmentFitnessTable {
        &self.table
    }

    pub fn checkpoint(&self) -> QeqeaCheckpoint {
        QeqeaCheckpoint {
            config: self.cfg.clone(),
            seed: self.seed,
            generation: self.generation,
            population: self.population.clone(),
            table: self.table.clone(),
            pending: self.pending.clone(),
            best: self.best.clone(),
        }
    }

    fn key(&self) -> GenerationKey {
        GenerationKey {
            seed: self.seed,
            generation: self.generation,
        }
    }
}

impl Evolver for QeqeaEngine {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Qeqea
    }

    fn generation(&self) -> u64 {
        self.generation
    }

    fn best(&self) -> Option<&BestCircuit> {
        self.best.as_ref()
    }

    fn step(&mut self) -> Result<GenerationStats> {
        let key = self.key();
        let layout = self.population.layout;
        let parallel = self.cfg.parallel;
        let bank = construct_segments(&self.population, &self.gates, self.cfg.n_meas, key, parallel);

        let bank_ref = &bank;
        let gates = &self.gates;
        let target = &self.target;
        let score = move |c: usize| -> Result<(CircuitBlueprint, f64)> {
            let bp = sample_circuit_for(&layout, key, c);
            let f = evaluate_circuit(&bp, bank_ref, gates, target)?;
            Ok((bp, f))
        };
        let scored: Vec<(CircuitBlueprint, f64)> = if parallel {
            (0..self.cfg.size_of_population)
                .into_par_iter()
                .map(score)
                .collect::<Result<_>>()?
        } else {
            (0..self.cfg.size_of_population)
                .map(score)
                .collect::<Result<_>>()?
        };

        let mut improved = vec![false; layout.qubit_count()];
        for (bp, f) in &scored {
            for flat in self.table.record(bp, *f) {
                improved[flat] = true;
            }
        }
        // Elitism: last generation's mutations survive only if a circuit
        // using the slot set a new record for it.
        for snap in std::mem::take(&mut self.pending).iter().rev() {
            if !improved[snap.flat_index] {
                snap.restore(&mut self.population);
            }
        }

        let mut gen_best: Option<&(CircuitBlueprint, f64)> = None;
        for entry in &scored {
            if gen_best.is_none_or(|b| entry.1 > b.1) {
                gen_best = Some(entry);
            }
        }
        if let Some((bp, f)) = gen_best {
            if self.best.as_ref().is_none_or(|b| *f > b.fitness) {
                self.best = Some(BestCircuit {
                    fitness: *f,
                    generation: self.generation,
                    gates: bp.gates(&bank),
                });
            }
        }

        let mean = scored.iter().map(|(_, f)| f).sum::<f64>() / scored.len() as f64;
        let best_fitness = self.best.as_ref().map(|b| b.fitness).unwrap_or(0.0);
        let circuits = self.verbose.then(|| {
            scored
                .iter()
                .map(|(bp, f)| CircuitSample {
                    segments: bp.flat_indices(),
                    fitness: *f,
                })
                .collect()
        });

        drop(bank);
        if best_fitness < self.cfg.target_fitness {
            let mut rng = stream(self.seed, self.generation, Purpose::Mutate, 0);
            self.pending = mutate_population(&mut self.population, &self.table, &self.cfg, &mut rng);
        }

        let stats = GenerationStats {
            generation: self.generation,
            best_fitness,
            mean_fitness: mean,
            circuits,
        };
        self.generation += 1;
        Ok(stats)
    }
}

/// Run QEQEA from scratch until the target or the generation limit.
pub fn run_qeqea(cfg: &PopulationConfig, target: &ComplexMatrix, seed: u64) -> Result<RunReport> {
    run_qeqea_named(cfg, target, "custom", seed)
}

pub fn run_qeqea_named(
    cfg: &PopulationConfig,
    target: &ComplexMatrix,
    target_name: &str,
    seed: u64,
) -> Result<RunReport> {
    let mut engine = QeqeaEngine::new(cfg.clone(), target, seed)?;
    let rule = StopRule {
        max_generations: cfg.max_generations,
        target_fitness: cfg.target_fitness,
    };
    let (records, stop) = drive(&mut engine, rule, 0, |_, _| Ok(()))?;
    let meta = ReportMeta {
        target: target_name.to_string(),
        number_of_wires: cfg.number_of_wires,
        seed,
        config: serde_json::to_value(cfg).expect("config serializes"),
    };
    Ok(build_report(&engine, meta, records, stop))
}

//! Run reports and the generation loop shared by both engines.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::circuit::Gate;
use crate::error::Result;
use crate::render::render_circuit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Qeqea,
    Ga,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Qeqea => "qeqea",
            Algorithm::Ga => "ga",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    TargetReached,
    GenerationLimit,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::TargetReached => "target-reached",
            StopReason::GenerationLimit => "generation-limit",
        }
    }
}

/// One sampled circuit, recorded only in verbose logs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitSample {
    pub segments: Vec<usize>,
    pub fitness: f64,
}

/// One line of the generation log.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenerationRecord {
    pub generation: u64,
    /// Best fitness seen so far (monotone).
    pub best_fitness: f64,
    /// Mean fitness of the circuits evaluated this generation.
    pub mean_fitness: f64,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuits: Option<Vec<CircuitSample>>,
}

impl GenerationRecord {
    /// The record with wall-clock time removed, for determinism checks.
    pub fn timeless(&self) -> GenerationRecord {
        GenerationRecord {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// Best circuit found so far.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestCircuit {
    pub fitness: f64,
    pub generation: u64,
    pub gates: Vec<Gate>,
}

/// What one call to [`Evolver::step`] produced.
#[derive(Clone, Debug, PartialEq)]
pub struct GenerationStats {
    pub generation: u64,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub circuits: Option<Vec<CircuitSample>>,
}

/// A resumable generational search.
pub trait Evolver {
    fn algorithm(&self) -> Algorithm;
    /// Number of generations already completed.
    fn generation(&self) -> u64;
    fn step(&mut self) -> Result<GenerationStats>;
    fn best(&self) -> Option<&BestCircuit>;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub target: String,
    pub number_of_wires: usize,
    pub seed: u64,
    pub config: serde_json::Value,
    pub records: Vec<GenerationRecord>,
    pub best_circuit: Vec<Gate>,
    pub best_circuit_text: String,
    pub final_fitness: f64,
    pub generations: u64,
    pub stop_reason: StopReason,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn best_fitness_trace(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.best_fitness).collect()
    }

    /// First generation whose best fitness reached `threshold`.
    pub fn generation_reaching(&self, threshold: f64) -> Option<u64> {
        self.records
            .iter()
            .find(|r| r.best_fitness >= threshold)
            .map(|r| r.generation)
    }
}

/// Limits for [`drive`].
#[derive(Clone, Copy, Debug)]
pub struct StopRule {
    pub max_generations: u64,
    pub target_fitness: f64,
}

/// Step `evolver` until the target is reached or the generation limit is hit.
/// `on_record` sees every record as it is produced.
pub fn drive<E, F>(
    evolver: &mut E,
    rule: StopRule,
    elapsed_offset_ms: u64,
    mut on_record: F,
) -> Result<(Vec<GenerationRecord>, StopReason)>
where
    E: Evolver + ?Sized,
    F: FnMut(&GenerationRecord, &E) -> Result<()>,
{
    let start = Instant::now();
    let mut records = Vec::new();
    if evolver.best().is_some_and(|b| b.fitness >= rule.target_fitness) {
        return Ok((records, StopReason::TargetReached));
    }
    while evolver.generation() < rule.max_generations {
        let stats = evolver.step()?;
        let record = GenerationRecord {
            generation: stats.generation,
            best_fitness: stats.best_fitness,
            mean_fitness: stats.mean_fitness,
            elapsed_ms: elapsed_offset_ms + start.elapsed().as_millis() as u64,
            circuits: stats.circuits,
        };
        on_record(&record, evolver)?;
        records.push(record);
        if stats.best_fitness >= rule.target_fitness {
            return Ok((records, StopReason::TargetReached));
        }
    }
    Ok((records, StopReason::GenerationLimit))
}

pub(crate) struct ReportMeta {
    pub target: String,
    pub number_of_wires: usize,
    pub seed: u64,
    pub config: serde_json::Value,
}

pub(crate) fn build_report<E: Evolver + ?Sized>(
    evolver: &E,
    meta: ReportMeta,
    records: Vec<GenerationRecord>,
    stop_reason: StopReason,
) -> RunReport {
    let best = evolver.best();
    let best_circuit = best.map(|b| b.gates.clone()).unwrap_or_default();
    RunReport {
        algorithm: evolver.algorithm(),
        target: meta.target,
        number_of_wires: meta.number_of_wires,
        seed: meta.seed,
        config: meta.config,
        best_circuit_text: render_circuit(&best_circuit),
        best_circuit,
        final_fitness: best.map(|b| b.fitness).unwrap_or(0.0),
        generations: evolver.generation(),
        stop_reason,
        elapsed_ms: records.last().map(|r| r.elapsed_ms).unwrap_or(0),
        records,
    }
}

//! Classical genetic-algorithm baseline.
//!
//! Genomes are whole circuits (one gate per segment). Each generation keeps
//! the single best genome, picks parents by stochastic universal sampling,
//! recombines them with two-point crossover and perturbs gate parameters.

use std::f64::consts::{FRAC_PI_8, PI};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Gate, GateSet};
use crate::encoding::wrap_angle;
use crate::engine::DEFAULT_MAX_GENERATIONS;
use crate::error::{Result, SynthError};
use crate::fitness::fitness_value;
use crate::gates::{template_count, Axis};
use crate::linalg::ComplexMatrix;
use crate::report::{
    build_report, drive, Algorithm, BestCircuit, Evolver, GenerationStats, ReportMeta, RunReport,
    StopRule,
};
use crate::rng::{stream, Purpose};

pub type GateGene = Gate;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitGenome {
    pub genes: Vec<GateGene>,
}

impl CircuitGenome {
    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn random<R: Rng + ?Sized>(wires: usize, length: usize, rng: &mut R) -> Self {
        CircuitGenome {
            genes: (0..length)
                .map(|_| random_structure(wires, rng.random_range(0.0..2.0 * PI), rng))
                .collect(),
        }
    }
}

/// A gene with uniformly drawn kind, wire (or pair) and axis.
pub fn random_structure<R: Rng + ?Sized>(wires: usize, theta: f64, rng: &mut R) -> GateGene {
    let kind = rng.random_range(0..wires + template_count(wires));
    if kind < wires {
        Gate::Rotation {
            wire: kind + 1,
            axis: Axis::ALL[rng.random_range(0..3)],
            theta,
        }
    } else {
        let t = kind - wires;
        let pair = crate::gates::enumerate_templates(wires).expect("wires >= 2")[t].pair();
        Gate::Interaction { pair, theta }
    }
}

pub fn decode_genome(g: &CircuitGenome, gates: &GateSet) -> Result<ComplexMatrix> {
    gates.circuit_unitary(&g.genes)
}

/// Swap the slice `[p, q)` between two parents.
pub fn crossover_at(
    a: &CircuitGenome,
    b: &CircuitGenome,
    p: usize,
    q: usize,
) -> (CircuitGenome, CircuitGenome) {
    let mut x = a.clone();
    let mut y = b.clone();
    x.genes[p..q].swap_with_slice(&mut y.genes[p..q]);
    (x, y)
}

/// Cut points `0 <= p < q <= len` drawn uniformly over all such pairs.
pub fn two_point_crossover<R: Rng + ?Sized>(
    a: &CircuitGenome,
    b: &CircuitGenome,
    rng: &mut R,
) -> (CircuitGenome, CircuitGenome) {
    let len = a.len();
    if len < 2 || b.len() != len {
        return (a.clone(), b.clone());
    }
    let p = rng.random_range(0..=len);
    let mut q = rng.random_range(0..len);
    if q >= p {
        q += 1;
    }
    let (p, q) = if p < q { (p, q) } else { (q, p) };
    crossover_at(a, b, p, q)
}

/// Stochastic universal sampling: `count` equally spaced pointers over the
/// cumulative fitness wheel, one random offset. Falls back to uniform picks
/// when every fitness is zero.
pub fn sus_select<R: Rng + ?Sized>(fitnesses: &[f64], count: usize, rng: &mut R) -> Vec<usize> {
    assert!(!fitnesses.is_empty(), "cannot select from an empty population");
    let total: f64 = fitnesses.iter().map(|f| f.max(0.0)).sum();
    if count == 0 {
        return Vec::new();
    }
    if total <= 0.0 || !total.is_finite() {
        return (0..count).map(|_| rng.random_range(0..fitnesses.len())).collect();
    }
    let spacing = total / count as f64;
    let offset = rng.random::<f64>() * spacing;
    sus_with_offset(fitnesses, count, offset)
}

pub fn sus_with_offset(fitnesses: &[f64], count: usize, offset: f64) -> Vec<usize> {
    let total: f64 = fitnesses.iter().map(|f| f.max(0.0)).sum();
    let spacing = total / count as f64;
    let mut picks = Vec::with_capacity(count);
    let mut idx = 0;
    let mut cumulative = fitnesses[0].max(0.0);
    for k in 0..count {
        let pointer = offset + k as f64 * spacing;
        while cumulative <= pointer && idx + 1 < fitnesses.len() {
            idx += 1;
            cumulative += fitnesses[idx].max(0.0);
        }
        picks.push(idx);
    }
    picks
}

/// Genome-level mutation rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MutationRates {
    pub rate: f64,
    pub range: f64,
    pub structural: f64,
}

/// Each gene mutates with probability `rate`. A mutation event redraws the
/// gate structure with probability `structural` (keeping the angle),
/// otherwise shifts the angle uniformly within `±range`.
pub fn ga_mutate<R: Rng + ?Sized>(
    g: &CircuitGenome,
    rates: MutationRates,
    wires: usize,
    rng: &mut R,
) -> CircuitGenome {
    let mut out = g.clone();
    if rates.rate <= 0.0 {
        return out;
    }
    for gene in &mut out.genes {
        if !rng.random_bool(rates.rate.min(1.0)) {
            continue;
        }
        if rates.structural > 0.0 && rng.random_bool(rates.structural.min(1.0)) {
            *gene = random_structure(wires, gene.theta(), rng);
        } else if rates.range > 0.0 {
            let delta = rng.random_range(-rates.range..=rates.range);
            *gene = gene.with_theta(wrap_angle(gene.theta() + delta));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub number_of_wires: usize,
    pub size_of_individual: usize,
    pub population: usize,
    pub mutation_rate: f64,
    pub mutation_range: f64,
    pub structural_probability: f64,
    pub max_generations: u64,
    pub target_fitness: f64,
    pub parallel: bool,
}

impl GaConfig {
    pub fn new(number_of_wires: usize, size_of_individual: usize) -> Self {
        GaConfig {
            number_of_wires,
            size_of_individual,
            population: 50,
            mutation_rate: 0.1,
            mutation_range: FRAC_PI_8,
            structural_probability: 0.1,
            max_generations: DEFAULT_MAX_GENERATIONS,
            target_fitness: 0.999,
            parallel: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.number_of_wires < 2 || self.number_of_wires > 12 {
            return Err(SynthError::range("number_of_wires", "must be within 2..=12"));
        }
        if self.size_of_individual == 0 {
            return Err(SynthError::range("size_of_individual", "must be positive"));
        }
        if self.population < 2 {
            return Err(SynthError::range("ga_population", "must be at least 2"));
        }
        for (field, v) in [
            ("ga_mutation_rate", self.mutation_rate),
            ("ga_structural_probability", self.structural_probability),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(SynthError::range(field, format!("{v} is outside [0, 1]")));
            }
        }
        if !(self.mutation_range >= 0.0 && self.mutation_range.is_finite()) {
            return Err(SynthError::range("ga_mutation_range", "must be a non-negative angle"));
        }
        if self.max_generations == 0 {
            return Err(SynthError::range("max_generations", "must be positive"));
        }
        if !(self.target_fitness > 0.0 && self.target_fitness <= 1.0) {
            return Err(SynthError::range("target_fitness", "must lie in (0, 1]"));
        }
        Ok(())
    }

    fn rates(&self) -> MutationRates {
        MutationRates {
            rate: self.mutation_rate,
            range: self.mutation_range,
            structural: self.structural_probability,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaCheckpoint {
    pub config: GaConfig,
    pub seed: u64,
    pub generation: u64,
    pub population: Vec<CircuitGenome>,
    pub best: Option<BestCircuit>,
}

pub struct GaEngine {
    cfg: GaConfig,
    gates: GateSet,
    target: ComplexMatrix,
    seed: u64,
    generation: u64,
    population: Vec<CircuitGenome>,
    best: Option<BestCircuit>,
}

impl GaEngine {
    pub fn new(cfg: GaConfig, target: &ComplexMatrix, seed: u64) -> Result<Self> {
        cfg.validate()?;
        let mut rng = stream(seed, 0, Purpose::Init, 0);
        let population = (0..cfg.population)
            .map(|_| CircuitGenome::random(cfg.number_of_wires, cfg.size_of_individual, &mut rng))
            .collect();
        Self::from_checkpoint(
            GaCheckpoint {
                config: cfg,
                seed,
                generation: 0,
                population,
                best: None,
            },
            target,
        )
    }

    pub fn from_checkpoint(cp: GaCheckpoint, target: &ComplexMatrix) -> Result<Self> {
        cp.config.validate()?;
        let gates = GateSet::new(cp.config.number_of_wires)?;
        if target.dim() != gates.dim() {
            return Err(SynthError::Dimension {
                expected: gates.dim(),
                found: target.dim(),
            });
        }
        for g in &cp.population {
            if g.len() != cp.config.size_of_individual {
                return Err(SynthError::config("checkpoint genome has the wrong length"));
            }
            for gene in &g.genes {
                gene.validate(cp.config.number_of_wires)?;
            }
        }
        Ok(GaEngine {
            cfg: cp.config,
            gates,
            target: target.clone(),
            seed: cp.seed,
            generation: cp.generation,
            population: cp.population,
            best: cp.best,
        })
    }

    pub fn checkpoint(&self) -> GaCheckpoint {
        GaCheckpoint {
            config: self.cfg.clone(),
            seed: self.seed,
            generation: self.generation,
            population: self.population.clone(),
            best: self.best.clone(),
        }
    }

    pub fn population(&self) -> &[CircuitGenome] {
        &self.population
    }

    fn evaluate(&self) -> Result<Vec<f64>> {
        let score = |g: &CircuitGenome| -> Result<f64> {
            fitness_value(&decode_genome(g, &self.gates)?, &self.target)
        };
        if self.cfg.parallel {
            self.population.par_iter().map(score).collect()
        } else {
            self.population.iter().map(score).collect()
        }
    }
}

impl Evolver for GaEngine {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Ga
    }

    fn generation(&self) -> u64 {
        self.generation
    }

    fn best(&self) -> Option<&BestCircuit> {
        self.best.as_ref()
    }

    fn step(&mut self) -> Result<GenerationStats> {
        let fitness = self.evaluate()?;
        let mut elite = 0;
        for (i, &f) in fitness.iter().enumerate() {
            if f > fitness[elite] {
                elite = i;
            }
        }
        if self.best.as_ref().is_none_or(|b| fitness[elite] > b.fitness) {
            self.best = Some(BestCircuit {
                fitness: fitness[elite],
                generation: self.generation,
                gates: self.population[elite].genes.clone(),
            });
        }
        let best_fitness = self.best.as_ref().map(|b| b.fitness).unwrap_or(0.0);
        let mean = fitness.iter().sum::<f64>() / fitness.len() as f64;

        if best_fitness < self.cfg.target_fitness {
            let mut rng = stream(self.seed, self.generation, Purpose::Breed, 0);
            let n = self.cfg.population;
            let mut next = Vec::with_capacity(n);
            // The elite survives unchanged; when the generation's elite is
            // worse than the best ever seen, the best-ever circuit is reinserted.
            let best_genome = CircuitGenome {
                genes: self.best.as_ref().expect("set above").gates.clone(),
            };
            next.push(best_genome);
            let mut parents = sus_select(&fitness, n - 1 + (n - 1) % 2, &mut rng);
            parents.shuffle(&mut rng);
            for pair in parents.chunks(2) {
                let (a, b) = (&self.population[pair[0]], &self.population[pair[pair.len() - 1]]);
                let (x, y) = two_point_crossover(a, b, &mut rng);
                for child in [x, y] {
                    if next.len() < n {
                        next.push(ga_mutate(&child, self.cfg.rates(), self.cfg.number_of_wires, &mut rng));
                    }
                }
            }
            self.population = next;
        }

        let stats = GenerationStats {
            generation: self.generation,
            best_fitness,
            mean_fitness: mean,
            circuits: None,
        };
        self.generation += 1;
        Ok(stats)
    }
}

pub fn run_ga(cfg: &GaConfig, target: &ComplexMatrix, seed: u64) -> Result<RunReport> {
    run_ga_named(cfg, target, "custom", seed)
}

pub fn run_ga_named(cfg: &GaConfig, target: &ComplexMatrix, target_name: &str, seed: u64) -> Result<RunReport> {
    let mut engine = GaEngine::new(cfg.clone(), target, seed)?;
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

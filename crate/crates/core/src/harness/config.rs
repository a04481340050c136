//! Experiment configuration files.
//!
//! Configs are TOML with one flat table. Every key is optional; missing keys
//! take the defaults of [`ExperimentConfig::default`]. Keys may be written in
//! snake_case or camelCase, and `n`, `len` and `pop` are accepted as short
//! forms of the three size fields. Unknown keys are rejected.
//!
//! ```toml
//! target = "Toffoli"
//! algo = "qeqea"
//! n = 3
//! len = 16
//! seed = 7
//! out = "runs/toffoli"
//! ```

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{PopulationConfig, DEFAULT_MAX_GENERATIONS, DEFAULT_MEMORY_CAP};
use crate::error::{Result, SynthError};
use crate::fitness::{load_target_file, target_matrix, NamedTarget, TargetSpec};
use crate::ga::GaConfig;
use crate::report::Algorithm;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algo: Algorithm,
    /// Named target (CNOT, Toffoli, Peres, CCCNOT, identity). Ignored when
    /// `target_file` is set.
    pub target: String,
    #[serde(alias = "targetFile", skip_serializing_if = "Option::is_none")]
    pub target_file: Option<PathBuf>,
    /// Register width; inferred from the target when absent.
    #[serde(alias = "n", alias = "numberOfWires", skip_serializing_if = "Option::is_none")]
    pub number_of_wires: Option<usize>,
    #[serde(alias = "len", alias = "sizeOfIndividual")]
    pub size_of_individual: usize,
    #[serde(alias = "pop", alias = "sizeOfPopulation")]
    pub size_of_population: usize,
    #[serde(alias = "probabilityOfMutation")]
    pub probability_of_mutation: f64,
    #[serde(alias = "mutationRange")]
    pub mutation_range: f64,
    #[serde(alias = "nMeas")]
    pub n_meas: usize,
    #[serde(alias = "maxGenerations")]
    pub max_generations: u64,
    #[serde(alias = "targetFitness")]
    pub target_fitness: f64,
    pub parallel: bool,
    /// Log every sampled circuit (QEQEA only).
    pub verbose: bool,
    #[serde(alias = "memoryCapBytes")]
    pub memory_cap_bytes: u64,
    #[serde(alias = "gaPopulation")]
    pub ga_population: usize,
    #[serde(alias = "gaMutationRate")]
    pub ga_mutation_rate: f64,
    #[serde(alias = "gaMutationRange")]
    pub ga_mutation_range: f64,
    #[serde(alias = "gaStructuralProbability")]
    pub ga_structural_probability: f64,
    pub seed: u64,
    pub out: PathBuf,
    /// Write a checkpoint every this many generations (0 disables periodic
    /// checkpoints; one is still written when the run ends).
    #[serde(alias = "checkpointEvery")]
    pub checkpoint_every: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algo: Algorithm::Qeqea,
            target: "CNOT".to_string(),
            target_file: None,
            number_of_wires: None,
            size_of_individual: 6,
            size_of_population: 10,
            probability_of_mutation: 0.3,
            mutation_range: FRAC_PI_4,
            n_meas: 1,
            max_generations: DEFAULT_MAX_GENERATIONS,
            target_fitness: 0.999,
            parallel: false,
            verbose: false,
            memory_cap_bytes: DEFAULT_MEMORY_CAP,
            ga_population: 50,
            ga_mutation_rate: 0.1,
            ga_mutation_range: FRAC_PI_8,
            ga_structural_probability: 0.1,
            seed: 0,
            out: PathBuf::from("ising-run"),
            checkpoint_every: 1000,
        }
    }
}

/// Command-line values that replace whatever the config file says.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub algo: Option<Algorithm>,
    pub target: Option<String>,
    pub max_generations: Option<u64>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
                .unwrap_or(0);
            SynthError::Parse {
                line,
                message: e.message().to_string(),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| SynthError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Apply overrides, then re-validate.
    pub fn apply(mut self, o: &Overrides) -> Result<Self> {
        if let Some(seed) = o.seed {
            self.seed = seed;
        }
        if let Some(algo) = o.algo {
            self.algo = algo;
        }
        if let Some(target) = &o.target {
            if Path::new(target).is_file() && NamedTarget::parse(target).is_none() {
                self.target_file = Some(PathBuf::from(target));
            } else {
                self.target = target.clone();
                self.target_file = None;
            }
        }
        if let Some(g) = o.max_generations {
            self.max_generations = g;
        }
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
        self.validate()?;
        Ok(self)
    }

    /// Range checks that do not need the target resolved.
    pub fn validate(&self) -> Result<()> {
        if self.target_file.is_none() && NamedTarget::parse(&self.target).is_none() {
            return Err(SynthError::range(
                "target",
                format!("unknown target `{}` (expected CNOT, Toffoli, Peres, CCCNOT or identity)", self.target),
            ));
        }
        if let Some(n) = self.number_of_wires {
            if !(1..=15).contains(&n) {
                return Err(SynthError::range("number_of_wires", format!("{n} is outside 1..=15")));
            }
        }
        if self.size_of_individual == 0 {
            return Err(SynthError::range("size_of_individual", "must be positive"));
        }
        if self.size_of_population == 0 {
            return Err(SynthError::range("size_of_population", "must be positive"));
        }
        for (field, v) in [
            ("probability_of_mutation", self.probability_of_mutation),
            ("ga_mutation_rate", self.ga_mutation_rate),
            ("ga_structural_probability", self.ga_structural_probability),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(SynthError::range(field, format!("{v} is outside [0, 1]")));
            }
        }
        for (field, v) in [("mutation_range", self.mutation_range), ("ga_mutation_range", self.ga_mutation_range)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(SynthError::range(field, format!("{v} is not a non-negative angle")));
            }
        }
        if self.n_meas == 0 {
            return Err(SynthError::range("n_meas", "must be at least 1"));
        }
        if self.max_generations == 0 {
            return Err(SynthError::range("max_generations", "must be positive"));
        }
        if !(self.target_fitness > 0.0 && self.target_fitness <= 1.0) {
            return Err(SynthError::range("target_fitness", format!("{} is outside (0, 1]", self.target_fitness)));
        }
        if self.ga_population < 2 {
            return Err(SynthError::range("ga_population", "must be at least 2"));
        }
        Ok(())
    }

    pub fn resolve_target(&self) -> Result<TargetSpec> {
        let spec = match &self.target_file {
            Some(path) => load_target_file(path)?,
            None => {
                let named = NamedTarget::parse(&self.target)
                    .ok_or_else(|| SynthError::range("target", format!("unknown target `{}`", self.target)))?;
                let wires = self.number_of_wires.or(named.natural_wires()).ok_or_else(|| {
                    SynthError::range("number_of_wires", format!("required for target `{}`", self.target))
                })?;
                target_matrix(&self.target, wires)?
            }
        };
        if let Some(n) = self.number_of_wires {
            if n != spec.wires {
                return Err(SynthError::range(
                    "number_of_wires",
                    format!("{n} does not match the {}-wire target `{}`", spec.wires, spec.name),
                ));
            }
        }
        Ok(spec)
    }

    pub fn target_label(&self) -> String {
        match &self.target_file {
            Some(p) => p.display().to_string(),
            None => NamedTarget::parse(&self.target)
                .map(|t| t.canonical_name().to_string())
                .unwrap_or_else(|| self.target.clone()),
        }
    }

    pub fn population_config(&self, wires: usize) -> PopulationConfig {
        PopulationConfig {
            size_of_individual: self.size_of_individual,
            size_of_population: self.size_of_population,
            number_of_wires: wires,
            probability_of_mutation: self.probability_of_mutation,
            mutation_range: self.mutation_range,
            n_meas: self.n_meas,
            max_generations: self.max_generations,
            target_fitness: self.target_fitness,
            parallel: self.parallel,
            memory_cap_bytes: self.memory_cap_bytes,
        }
    }

    pub fn ga_config(&self, wires: usize) -> GaConfig {
        GaConfig {
            number_of_wires: wires,
            size_of_individual: self.size_of_individual,
            population: self.ga_population,
            mutation_rate: self.ga_mutation_rate,
            mutation_range: self.ga_mutation_range,
            structural_probability: self.ga_structural_probability,
            max_generations: self.max_generations,
            target_fitness: self.target_fitness,
            parallel: self.parallel,
        }
    }
}

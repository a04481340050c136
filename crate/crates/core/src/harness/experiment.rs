//! Run directories: logs, reports, checkpoints and resume.
//!
//! A run directory holds
//!
//! * `config.toml`: the resolved configuration,
//! * `generations.jsonl`: one JSON record per generation,
//! * `checkpoint.json`: the latest engine state (replaced atomically),
//! * `report.json` and `summary.txt` once the run stops.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::circuit::GateSet;
use crate::engine::{QeqeaCheckpoint, QeqeaEngine};
use crate::error::{Result, SynthError};
use crate::fitness::{matrix_error_report, TargetSpec};
use crate::ga::{GaCheckpoint, GaEngine};
use crate::report::{
    build_report, drive, Algorithm, Evolver, GenerationRecord, ReportMeta, RunReport, StopReason,
    StopRule,
};

pub const CONFIG_FILE: &str = "config.toml";
pub const LOG_FILE: &str = "generations.jsonl";
pub const CHECKPOINT_FILE: &str = "checkpoint.json";
pub const REPORT_FILE: &str = "report.json";
pub const SUMMARY_FILE: &str = "summary.txt";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineState {
    Qeqea(QeqeaCheckpoint),
    Ga(GaCheckpoint),
}

impl EngineState {
    pub fn generation(&self) -> u64 {
        match self {
            EngineState::Qeqea(cp) => cp.generation,
            EngineState::Ga(cp) => cp.generation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentCheckpoint {
    pub config: ExperimentConfig,
    /// Wall-clock time already spent, carried into resumed records.
    pub elapsed_ms: u64,
    pub state: EngineState,
}

/// Process exit code for a finished run.
pub fn exit_code(report: &RunReport) -> i32 {
    match report.stop_reason {
        StopReason::TargetReached => 0,
        StopReason::GenerationLimit => 1,
    }
}

/// Start a fresh run in `cfg.out`, replacing any previous contents.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunReport> {
    cfg.validate()?;
    let spec = cfg.resolve_target()?;
    let dir = cfg.out.clone();
    fs::create_dir_all(&dir).map_err(|e| SynthError::io(&dir, e))?;
    write_atomic(&dir.join(CONFIG_FILE), cfg.to_toml_string().as_bytes())?;
    let log = create_log(&dir, &[])?;
    match cfg.algo {
        Algorithm::Qeqea => {
            let mut engine = QeqeaEngine::new(cfg.population_config(spec.wires), &spec.matrix, cfg.seed)?;
            engine.set_verbose(cfg.verbose);
            execute(&mut engine, cfg, &spec, log, Vec::new(), 0, |e| EngineState::Qeqea(e.checkpoint()))
        }
        Algorithm::Ga => {
            let mut engine = GaEngine::new(cfg.ga_config(spec.wires), &spec.matrix, cfg.seed)?;
            execute(&mut engine, cfg, &spec, log, Vec::new(), 0, |e| EngineState::Ga(e.checkpoint()))
        }
    }
}

pub fn read_checkpoint(dir: &Path) -> Result<ExperimentCheckpoint> {
    let path = dir.join(CHECKPOINT_FILE);
    let text = fs::read_to_string(&path).map_err(|e| SynthError::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| SynthError::Serialization {
        path,
        message: e.to_string(),
    })
}

/// Continue the run stored in `dir` from its checkpoint. Log records past the
/// checkpoint are dropped and regenerated. `max_generations` may raise or
/// lower the original limit.
pub fn resume_experiment(dir: &Path, max_generations: Option<u64>) -> Result<RunReport> {
    let cp = read_checkpoint(dir)?;
    let mut cfg = cp.config.clone();
    cfg.out = dir.to_path_buf();
    if let Some(g) = max_generations {
        cfg.max_generations = g;
    }
    cfg.validate()?;
    let spec = cfg.resolve_target()?;
    let resume_at = cp.state.generation();
    let prior: Vec<GenerationRecord> = read_log(&dir.join(LOG_FILE))?
        .into_iter()
        .filter(|r| r.generation < resume_at)
        .collect();
    if prior.len() as u64 != resume_at {
        return Err(SynthError::config(format!(
            "log holds {} records before generation {resume_at}",
            prior.len()
        )));
    }
    write_atomic(&dir.join(CONFIG_FILE), cfg.to_toml_string().as_bytes())?;
    let log = create_log(dir, &prior)?;
    match cp.state {
        EngineState::Qeqea(state) => {
            let mut state = state;
            state.config.max_generations = cfg.max_generations;
            let mut engine = QeqeaEngine::from_checkpoint(state, &spec.matrix)?;
            engine.set_verbose(cfg.verbose);
            execute(&mut engine, &cfg, &spec, log, prior, cp.elapsed_ms, |e| EngineState::Qeqea(e.checkpoint()))
        }
        EngineState::Ga(state) => {
            let mut state = state;
            state.config.max_generations = cfg.max_generations;
            let mut engine = GaEngine::from_checkpoint(state, &spec.matrix)?;
            execute(&mut engine, &cfg, &spec, log, prior, cp.elapsed_ms, |e| EngineState::Ga(e.checkpoint()))
        }
    }
}

struct LogWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl LogWriter {
    fn append(&mut self, rec: &GenerationRecord) -> Result<()> {
        let line = serde_json::to_string(rec).expect("record serializes");
        writeln!(self.out, "{line}").map_err(|e| SynthError::io(&self.path, e))
    }

    fn flush(&mut self) -> Result<()> {
        self.out.flush().map_err(|e| SynthError::io(&self.path, e))
    }
}

fn create_log(dir: &Path, prior: &[GenerationRecord]) -> Result<LogWriter> {
    let path = dir.join(LOG_FILE);
    let file = OpenOptions::new()
        .write(true)
        .create(true)
        .truncate(true)
        .open(&path)
        .map_err(|e| SynthError::io(&path, e))?;
    let mut log = LogWriter { path, out: BufWriter::new(file) };
    for r in prior {
        log.append(r)?;
    }
    log.flush()?;
    Ok(log)
}

pub fn read_log(path: &Path) -> Result<Vec<GenerationRecord>> {
    let file = File::open(path).map_err(|e| SynthError::io(path, e))?;
    let mut out = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| SynthError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| SynthError::Serialization {
            path: path.to_path_buf(),
            message: format!("line {}: {e}", k + 1),
        })?);
    }
    Ok(out)
}

/// Write to a sibling temp file, then rename over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = File::create(&tmp).map_err(|e| SynthError::io(&tmp, e))?;
        f.write_all(bytes).map_err(|e| SynthError::io(&tmp, e))?;
        f.sync_all().map_err(|e| SynthError::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| SynthError::io(path, e))
}

fn save_checkpoint(dir: &Path, cfg: &ExperimentConfig, elapsed_ms: u64, state: EngineState) -> Result<()> {
    let cp = ExperimentCheckpoint {
        config: cfg.clone(),
        elapsed_ms,
        state,
    };
    write_atomic(&dir.join(CHECKPOINT_FILE), serde_json::to_string(&cp).expect("checkpoint serializes").as_bytes())
}

fn execute<E, F>(
    engine: &mut E,
    cfg: &ExperimentConfig,
    spec: &TargetSpec,
    mut log: LogWriter,
    prior: Vec<GenerationRecord>,
    elapsed_offset_ms: u64,
    snapshot: F,
) -> Result<RunReport>
where
    E: Evolver,
    F: Fn(&E) -> EngineState,
{
    let dir = cfg.out.clone();
    let rule = StopRule {
        max_generations: cfg.max_generations,
        target_fitness: cfg.target_fitness,
    };
    let every = cfg.checkpoint_every;
    let mut last_elapsed = elapsed_offset_ms;
    let (records, stop) = drive(engine, rule, elapsed_offset_ms, |rec, e| {
        log.append(rec)?;
        last_elapsed = rec.elapsed_ms;
        if every > 0 && e.generation() % every == 0 {
            log.flush()?;
            save_checkpoint(&dir, cfg, rec.elapsed_ms, snapshot(e))?;
        }
        Ok(())
    })?;
    log.flush()?;
    save_checkpoint(&dir, cfg, last_elapsed, snapshot(engine))?;

    let mut all = prior;
    all.extend(records);
    let meta = ReportMeta {
        target: cfg.target_label(),
        number_of_wires: spec.wires,
        seed: cfg.seed,
        config: serde_json::to_value(cfg).expect("config serializes"),
    };
    let report = build_report(engine, meta, all, stop);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_atomic(&dir.join(REPORT_FILE), json.as_bytes())?;
    write_atomic(&dir.join(SUMMARY_FILE), summary(&report, spec)?.as_bytes())?;
    Ok(report)
}

pub fn summary(report: &RunReport, spec: &TargetSpec) -> Result<String> {
    let mut s = String::new();
    s.push_str(&format!("algorithm:     {}\n", report.algorithm));
    s.push_str(&format!("target:        {} ({} wires)\n", report.target, report.number_of_wires));
    s.push_str(&format!("seed:          {}\n", report.seed));
    s.push_str(&format!("stop reason:   {}\n", report.stop_reason.as_str()));
    s.push_str(&format!("generations:   {}\n", report.generations));
    s.push_str(&format!("best fitness:  {:.6}\n", report.final_fitness));
    s.push_str(&format!("elapsed ms:    {}\n", report.elapsed_ms));
    s.push_str(&format!("best circuit:  {}\n", report.best_circuit_text));
    if !report.best_circuit.is_empty() {
        let u = GateSet::new(spec.wires)?.circuit_unitary(&report.best_circuit)?;
        let err = matrix_error_report(&u, &spec.matrix)?;
        s.push_str(&format!(
            "matrix error:  max {:.5}, mean {:.5}\n",
            err.max_abs_error, err.mean_abs_error
        ));
    }
    Ok(s)
}

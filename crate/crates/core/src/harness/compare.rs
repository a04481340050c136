//! Side-by-side comparison of finished runs on one target.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};
use crate::report::{Algorithm, RunReport, StopReason};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComparisonRow {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub accuracy: f64,
    pub generations: u64,
    pub stop_reason: StopReason,
    /// Wall clock, informational only.
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Comparison {
    pub target: String,
    pub rows: Vec<ComparisonRow>,
}

pub fn compare_runs(reports: &[RunReport]) -> Result<Comparison> {
    if reports.len() < 2 {
        return Err(SynthError::Incompatible(format!(
            "need at least two reports, got {}",
            reports.len()
        )));
    }
    let target = &reports[0].target;
    if let Some(other) = reports.iter().find(|r| r.target != *target) {
        return Err(SynthError::Incompatible(format!(
            "reports target different circuits (`{target}` vs `{}`)",
            other.target
        )));
    }
    Ok(Comparison {
        target: target.clone(),
        rows: reports
            .iter()
            .map(|r| ComparisonRow {
                algorithm: r.algorithm,
                seed: r.seed,
                accuracy: r.final_fitness,
                generations: r.generations,
                stop_reason: r.stop_reason,
                elapsed_ms: r.elapsed_ms,
            })
            .collect(),
    })
}

pub fn load_report(path: &Path) -> Result<RunReport> {
    let text = std::fs::read_to_string(path).map_err(|e| SynthError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| SynthError::Serialization {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

impl Comparison {
    pub fn to_text(&self) -> String {
        let mut out = format!("target: {}\n", self.target);
        out.push_str(&format!(
            "{:<10}{:>8}{:>12}{:>14}  {:<18}{:>12}\n",
            "algorithm", "seed", "accuracy", "generations", "stop", "elapsed ms"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<10}{:>8}{:>12.4}{:>14}  {:<18}{:>12}\n",
                r.algorithm.to_string(),
                r.seed,
                r.accuracy,
                r.generations,
                r.stop_reason.as_str(),
                r.elapsed_ms
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(algorithm: Algorithm, target: &str, fitness: f64, generations: u64) -> RunReport {
        RunReport {
            algorithm,
            target: target.into(),
            number_of_wires: 2,
            seed: 1,
            config: serde_json::Value::Null,
            records: Vec::new(),
            best_circuit: Vec::new(),
            best_circuit_text: String::new(),
            final_fitness: fitness,
            generations,
            stop_reason: StopReason::TargetReached,
            elapsed_ms: 5,
        }
    }

    #[test]
    fn two_rows_for_two_engines() {
        let c = compare_runs(&[
            report(Algorithm::Qeqea, "CNOT", 1.0, 400),
            report(Algorithm::Ga, "CNOT", 1.0, 200),
        ])
        .unwrap();
        assert_eq!(c.rows.len(), 2);
        let text = c.to_text();
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("qeqea") && text.contains("ga "));
        let back: Comparison = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn same_report_twice_gives_identical_rows() {
        let r = report(Algorithm::Ga, "Toffoli", 0.9663, 4540);
        let c = compare_runs(&[r.clone(), r]).unwrap();
        assert_eq!(c.rows[0], c.rows[1]);
    }

    #[test]
    fn mismatched_targets_refused() {
        let err = compare_runs(&[
            report(Algorithm::Qeqea, "CNOT", 1.0, 1),
            report(Algorithm::Ga, "Peres", 1.0, 1),
        ])
        .unwrap_err();
        assert!(matches!(err, SynthError::Incompatible(_)));
        assert!(compare_runs(&[report(Algorithm::Ga, "CNOT", 1.0, 1)]).is_err());
    }
}

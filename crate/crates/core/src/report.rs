//! Self-contained run report: everything needed to inspect or re-render a
//! single optimization result. Carries no wall-clock fields, so identical
//! runs serialize to identical bytes.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::entropy::FitnessReport;
use crate::error::{Error, Result};
use crate::ga::{GaConfig, Termination};
use crate::netmodel::Placement;
use crate::scenario::{Point, Scenario};
use crate::seeds::fnv1a64;

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Result of one optimization run, with the scenario embedded inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub algorithm: String,
    pub config_hash: String,
    pub scenario: Scenario,
    /// Router coordinates of the best placement, `[[x, y], ...]`.
    pub placement: Vec<[f64; 2]>,
    pub report: FitnessReport,
    pub generations: usize,
    pub evaluations: u64,
    pub termination: Termination,
    pub ga: GaConfig,
    /// Evaluation budget, for budget-driven algorithms.
    pub budget: Option<u64>,
    pub notes: BTreeMap<String, String>,
}

impl RunReport {
    /// Rebuilds the placement against the embedded scenario, re-validating
    /// length and bounds.
    pub fn placement(&self) -> Result<Placement> {
        let pts = self.placement.iter().map(|c| Point::new(c[0], c[1])).collect();
        Placement::new(pts, &self.scenario)
            .map_err(|e| Error::malformed("placement", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: RunReport =
            serde_json::from_str(text).map_err(|e| Error::malformed("<document>", e.to_string()))?;
        if report.version != REPORT_FORMAT_VERSION {
            return Err(Error::malformed(
                "version",
                format!("unsupported version {}, expected {REPORT_FORMAT_VERSION}", report.version),
            ));
        }
        Ok(report)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Hash identifying a single-run configuration (algorithm + engine config +
/// scenario), embedded in report files.
pub fn run_config_hash(algorithm: &str, ga: &GaConfig, scenario: &Scenario) -> String {
    let canonical = serde_json::to_string(&(algorithm, ga, scenario))
        .expect("config serialization cannot fail");
    format!("{:016x}", fnv1a64(canonical.as_bytes()))
}

/// Router coordinates as `[[x, y], ...]`, the report's placement encoding.
pub fn placement_coords(p: &Placement) -> Vec<[f64; 2]> {
    p.routers().iter().map(|r| [r.x, r.y]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::evaluate;
    use crate::ga::{run_mega, GaConfig};
    use crate::scenario::{generate_scenario, AreaSpec};

    #[test]
    fn report_round_trip_preserves_result() {
        let s = generate_scenario(25, 4, 150.0, AreaSpec::new(900.0, 900.0).unwrap(), 2).unwrap();
        let cfg = GaConfig { population_size: 10, max_iterations: 5, seed: 3, ..GaConfig::default() };
        let (best, trace) = run_mega(&s, &cfg).unwrap();
        let report = RunReport {
            version: REPORT_FORMAT_VERSION,
            algorithm: "mega".into(),
            config_hash: run_config_hash("mega", &cfg, &s),
            scenario: s.clone(),
            placement: placement_coords(&best.placement),
            report: best.report.clone(),
            generations: trace.generations(),
            evaluations: trace.evaluations,
            termination: trace.termination,
            ga: cfg,
            budget: None,
            notes: BTreeMap::new(),
        };
        let restored = RunReport::from_json(&report.to_json()).unwrap();
        assert_eq!(restored.scenario, s);
        let p = restored.placement().unwrap();
        assert_eq!(p, best.placement);
        assert_eq!(evaluate(&s, &p), best.report);
        assert_eq!(report.to_json(), restored.to_json());
    }

    #[test]
    fn malformed_placement_is_rejected() {
        let s = generate_scenario(5, 2, 50.0, AreaSpec::new(100.0, 100.0).unwrap(), 1).unwrap();
        let cfg = GaConfig::default();
        let report = RunReport {
            version: REPORT_FORMAT_VERSION,
            algorithm: "mega".into(),
            config_hash: run_config_hash("mega", &cfg, &s),
            scenario: s,
            placement: vec![[1.0, 1.0]], // wrong length for m = 2
            report: FitnessReport {
                h_cov: 0.0,
                h_con: 0.0,
                fitness: 0.0,
                psi: 0,
                phi: 1,
                coverage_probs: vec![0.0, 0.0],
                connectivity_probs: vec![1.0],
            },
            generations: 0,
            evaluations: 0,
            termination: Termination::IterationsExhausted,
            ga: cfg,
            budget: None,
            notes: BTreeMap::new(),
        };
        assert!(report.placement().is_err());
    }
}

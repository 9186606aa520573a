//! Experiment runner: parameter sweeps with per-trial seeding, raw and
//! aggregated results, and deterministic file serialization.
//!
//! Each (algorithm, sweep value, trial) cell derives its own seed from the
//! base seed, so trials are independent units: execution order and worker
//! count cannot change any output byte. A fresh client field is sampled per
//! trial. Raw CSV rows carry a measured `wall_ms` column; every other output
//! field is a pure function of the config.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baselines::{run_classic_ga, run_random_search};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::ga::{mega_evaluation_budget, run_mega, GaConfig};
use crate::scenario::{generate_scenario, AreaSpec};
use crate::seeds::{derive_seed, fnv1a64};

/// Which parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    VaryClients,
    VaryRouters,
    VaryRadius,
    /// No varied parameter: trials at the fixed point. Rows report x = 0.
    Single,
}

impl SweepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKind::VaryClients => "vary_clients",
            SweepKind::VaryRouters => "vary_routers",
            SweepKind::VaryRadius => "vary_radius",
            SweepKind::Single => "single",
        }
    }
}

/// Optimizers the runner can drive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Mega,
    RandomSearch,
    ClassicGa,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Mega => "mega",
            Algorithm::RandomSearch => "random_search",
            Algorithm::ClassicGa => "classic_ga",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mega" => Ok(Algorithm::Mega),
            "random_search" => Ok(Algorithm::RandomSearch),
            "classic_ga" => Ok(Algorithm::ClassicGa),
            other => Err(Error::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Sweep definition. Defaults: n=100, m=20, CR=200 m over a 2000x2000 m area,
/// 50 trials of the default engine config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub sweep_kind: SweepKind,
    pub sweep_values: Vec<f64>,
    pub clients: usize,
    pub routers: usize,
    pub coverage_radius: f64,
    pub area: AreaSpec,
    pub trials: usize,
    pub ga: GaConfig,
    pub algorithms: Vec<Algorithm>,
    pub base_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            sweep_kind: SweepKind::Single,
            sweep_values: vec![0.0],
            clients: 100,
            routers: 20,
            coverage_radius: 200.0,
            area: AreaSpec { width: 2000.0, height: 2000.0 },
            trials: 50,
            ga: GaConfig::default(),
            algorithms: vec![Algorithm::Mega],
            base_seed: 0,
        }
    }
}

impl ExperimentConfig {
    /// Checks every invariant, reporting all violations at once.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        if self.sweep_values.is_empty() {
            violations.push("sweep_values must be non-empty".to_string());
        }
        for w in self.sweep_values.windows(2) {
            if !(w[1] > w[0]) {
                violations.push(format!(
                    "sweep_values must be strictly increasing, got {} then {}",
                    w[0], w[1]
                ));
                break;
            }
        }
        match self.sweep_kind {
            SweepKind::VaryClients | SweepKind::VaryRouters => {
                for &v in &self.sweep_values {
                    if v < 1.0 || v.fract() != 0.0 {
                        violations.push(format!(
                            "{} values must be positive integers, got {v}",
                            self.sweep_kind.as_str()
                        ));
                        break;
                    }
                }
            }
            SweepKind::VaryRadius => {
                for &v in &self.sweep_values {
                    if !(v > 0.0) {
                        violations.push(format!("radius values must be positive, got {v}"));
                        break;
                    }
                }
            }
            SweepKind::Single => {}
        }
        if self.clients == 0 {
            violations.push("clients must be at least 1".to_string());
        }
        if self.routers == 0 {
            violations.push("routers must be at least 1".to_string());
        }
        if !(self.coverage_radius > 0.0) {
            violations.push(format!("coverage_radius must be positive, got {}", self.coverage_radius));
        }
        if !(self.area.width > 0.0) || !(self.area.height > 0.0) {
            violations.push(format!(
                "area must have positive dimensions, got {} x {}",
                self.area.width, self.area.height
            ));
        }
        if self.trials == 0 {
            violations.push("trials must be at least 1".to_string());
        }
        if self.algorithms.is_empty() {
            violations.push("algorithms must be non-empty".to_string());
        }
        if let Err(e) = self.ga.validate() {
            violations.push(e.to_string());
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(violations.join("; ")))
        }
    }

    /// FNV-1a over the canonical JSON form; embedded in every output file.
    pub fn config_hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serialization cannot fail");
        format!("{:016x}", fnv1a64(canonical.as_bytes()))
    }

    /// The (n, m, CR) triple at a sweep value.
    fn point_params(&self, value: f64) -> (usize, usize, f64) {
        match self.sweep_kind {
            SweepKind::VaryClients => (value as usize, self.routers, self.coverage_radius),
            SweepKind::VaryRouters => (self.clients, value as usize, self.coverage_radius),
            SweepKind::VaryRadius => (self.clients, self.routers, value),
            SweepKind::Single => (self.clients, self.routers, self.coverage_radius),
        }
    }

    /// Per-trial seed: a stable fold of base seed, algorithm tag, sweep value
    /// bits, and trial index.
    pub fn trial_seed(&self, algorithm: Algorithm, value: f64, trial: usize) -> u64 {
        derive_seed(
            self.base_seed,
            &[fnv1a64(algorithm.as_str().as_bytes()), value.to_bits(), trial as u64],
        )
    }
}

/// One trial outcome; a raw CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub sweep_kind: String,
    pub algorithm: String,
    pub x_value: f64,
    pub trial: usize,
    pub seed: u64,
    pub psi: usize,
    pub phi: usize,
    pub h_cov: f64,
    pub h_con: f64,
    pub fitness: f64,
    pub generations: usize,
    pub evaluations: u64,
    /// Measured wall-clock; the one non-reproducible column.
    pub wall_ms: u64,
}

/// Mean and sample standard deviation of the headline metrics at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub sweep_kind: String,
    pub algorithm: String,
    pub x_value: f64,
    pub trials: usize,
    pub psi_mean: f64,
    pub psi_std: f64,
    pub phi_mean: f64,
    pub phi_std: f64,
    pub fitness_mean: f64,
    pub fitness_std: f64,
}

/// Complete sweep output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub artifact_version: String,
    /// Implementation-defined choices a reader needs to interpret the rows.
    pub notes: BTreeMap<String, String>,
    pub raw: Vec<TrialRow>,
    pub aggregate: Vec<AggregateRow>,
}

fn decision_notes() -> BTreeMap<String, String> {
    let mut notes = BTreeMap::new();
    notes.insert("rng".into(), "chacha8".into());
    notes.insert("clients_resampled_per_trial".into(), "true".into());
    notes.insert("nj_counting".into(), "assigned_only".into());
    notes.insert("nearest_tie_break".into(), "lowest_router_index".into());
    notes.insert("hcov_m1_rule".into(), "psi_over_n".into());
    notes.insert("hcov_capped_at_1".into(), "true".into());
    notes.insert("random_search_budget".into(), "matched_to_ga_evaluations".into());
    notes
}

/// Runs one (algorithm, value, trial) cell. Any raw row can be reproduced in
/// isolation from the config and these three coordinates.
pub fn run_single_trial(
    cfg: &ExperimentConfig,
    algorithm: Algorithm,
    value: f64,
    trial: usize,
) -> Result<TrialRow> {
    let (n, m, cr) = cfg.point_params(value);
    let trial_seed = cfg.trial_seed(algorithm, value, trial);
    let scenario_seed = derive_seed(trial_seed, &[0]);
    let run_seed = derive_seed(trial_seed, &[1]);

    let scenario = generate_scenario(n, m, cr, cfg.area, scenario_seed)?;
    let ga = GaConfig { seed: run_seed, ..cfg.ga.clone() };

    let start = Instant::now();
    let (best, trace) = match algorithm {
        Algorithm::Mega => run_mega(&scenario, &ga)?,
        Algorithm::ClassicGa => run_classic_ga(&scenario, &ga)?,
        Algorithm::RandomSearch => {
            run_random_search(&scenario, mega_evaluation_budget(&ga), run_seed)?
        }
    };
    let wall_ms = start.elapsed().as_millis() as u64;

    Ok(TrialRow {
        sweep_kind: cfg.sweep_kind.as_str().to_string(),
        algorithm: algorithm.as_str().to_string(),
        x_value: value,
        trial,
        seed: trial_seed,
        psi: best.report.psi,
        phi: best.report.phi,
        h_cov: best.report.h_cov,
        h_con: best.report.h_con,
        fitness: best.report.fitness,
        generations: trace.generations(),
        evaluations: trace.evaluations,
        wall_ms,
    })
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let k = values.len();
    let mean = values.iter().sum::<f64>() / k as f64;
    if k < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1) as f64;
    (mean, var.sqrt())
}

/// Executes the full sweep; trials fan out across the worker pool.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run_experiment_with_progress(cfg, |_, _, _| {})
}

/// Like [`run_experiment`], invoking `progress(algorithm, value, aggregate)`
/// after each sweep point completes.
pub fn run_experiment_with_progress(
    cfg: &ExperimentConfig,
    mut progress: impl FnMut(Algorithm, f64, &AggregateRow),
) -> Result<ExperimentResult> {
    cfg.validate()?;
    let mut raw = Vec::with_capacity(cfg.algorithms.len() * cfg.sweep_values.len() * cfg.trials);
    let mut aggregate = Vec::new();

    for &algorithm in &cfg.algorithms {
        for &value in &cfg.sweep_values {
            let trials: Vec<usize> = (0..cfg.trials).collect();
            let rows = par_map(&trials, |&trial| run_single_trial(cfg, algorithm, value, trial));
            let mut point_rows = Vec::with_capacity(rows.len());
            for row in rows {
                point_rows.push(row?);
            }

            let psi: Vec<f64> = point_rows.iter().map(|r| r.psi as f64).collect();
            let phi: Vec<f64> = point_rows.iter().map(|r| r.phi as f64).collect();
            let fit: Vec<f64> = point_rows.iter().map(|r| r.fitness).collect();
            let (psi_mean, psi_std) = mean_std(&psi);
            let (phi_mean, phi_std) = mean_std(&phi);
            let (fitness_mean, fitness_std) = mean_std(&fit);
            let agg = AggregateRow {
                sweep_kind: cfg.sweep_kind.as_str().to_string(),
                algorithm: algorithm.as_str().to_string(),
                x_value: value,
                trials: cfg.trials,
                psi_mean,
                psi_std,
                phi_mean,
                phi_std,
                fitness_mean,
                fitness_std,
            };
            progress(algorithm, value, &agg);
            aggregate.push(agg);
            raw.extend(point_rows);
        }
    }

    Ok(ExperimentResult {
        config: cfg.clone(),
        config_hash: cfg.config_hash(),
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        notes: decision_notes(),
        raw,
        aggregate,
    })
}

impl ExperimentResult {
    fn metadata_comment(&self) -> String {
        format!(
            "# config_hash={} base_seed={} artifact_version={}\n",
            self.config_hash, self.config.base_seed, self.artifact_version
        )
    }

    /// Raw per-trial CSV. Columns are fixed; `wall_ms` is measured and
    /// therefore varies between runs, every other byte is reproducible.
    pub fn raw_csv(&self) -> String {
        let mut out = self.metadata_comment();
        out.push_str(
            "sweep_kind,algorithm,x_value,trial,seed,psi,phi,h_cov,h_con,fitness,generations,evaluations,wall_ms\n",
        );
        for r in &self.raw {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.sweep_kind,
                r.algorithm,
                r.x_value,
                r.trial,
                r.seed,
                r.psi,
                r.phi,
                r.h_cov,
                r.h_con,
                r.fitness,
                r.generations,
                r.evaluations,
                r.wall_ms
            ));
        }
        out
    }

    /// Aggregated CSV; fully reproducible bytes.
    pub fn aggregate_csv(&self) -> String {
        let mut out = self.metadata_comment();
        out.push_str(
            "sweep_kind,algorithm,x_value,trials,psi_mean,psi_std,phi_mean,phi_std,fitness_mean,fitness_std\n",
        );
        for r in &self.aggregate {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.sweep_kind,
                r.algorithm,
                r.x_value,
                r.trials,
                r.psi_mean,
                r.psi_std,
                r.phi_mean,
                r.phi_std,
                r.fitness_mean,
                r.fitness_std
            ));
        }
        out
    }

    /// JSON summary: config, hash, notes, aggregates, and raw row count (the
    /// rows themselves live in the raw CSV). Fully reproducible bytes.
    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Summary<'a> {
            version: u32,
            artifact_version: &'a str,
            config_hash: &'a str,
            base_seed: u64,
            notes: &'a BTreeMap<String, String>,
            config: &'a ExperimentConfig,
            raw_rows: usize,
            aggregate: &'a [AggregateRow],
        }
        let mut out = serde_json::to_string_pretty(&Summary {
            version: 1,
            artifact_version: &self.artifact_version,
            config_hash: &self.config_hash,
            base_seed: self.config.base_seed,
            notes: &self.notes,
            config: &self.config,
            raw_rows: self.raw.len(),
            aggregate: &self.aggregate,
        })
        .expect("summary serialization cannot fail");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_cfg() -> ExperimentConfig {
        ExperimentConfig {
            sweep_kind: SweepKind::VaryRouters,
            sweep_values: vec![2.0, 4.0],
            clients: 20,
            routers: 20,
            coverage_radius: 150.0,
            area: AreaSpec { width: 800.0, height: 800.0 },
            trials: 3,
            ga: GaConfig { population_size: 10, max_iterations: 5, ..GaConfig::default() },
            algorithms: vec![Algorithm::Mega, Algorithm::RandomSearch],
            base_seed: 42,
        }
    }

    #[test]
    fn row_count_and_mean_bounds() {
        let cfg = tiny_cfg();
        let result = run_experiment(&cfg).unwrap();
        assert_eq!(result.raw.len(), 2 * 2 * 3);
        assert_eq!(result.aggregate.len(), 2 * 2);
        for agg in &result.aggregate {
            let rows: Vec<&TrialRow> = result
                .raw
                .iter()
                .filter(|r| r.algorithm == agg.algorithm && r.x_value == agg.x_value)
                .collect();
            let min = rows.iter().map(|r| r.fitness).fold(f64::INFINITY, f64::min);
            let max = rows.iter().map(|r| r.fitness).fold(f64::NEG_INFINITY, f64::max);
            assert!(agg.fitness_mean >= min && agg.fitness_mean <= max);
        }
    }

    #[test]
    fn single_trial_single_value_aggregate_equals_raw() {
        let cfg = ExperimentConfig {
            sweep_kind: SweepKind::Single,
            sweep_values: vec![0.0],
            trials: 1,
            clients: 15,
            routers: 3,
            coverage_radius: 120.0,
            area: AreaSpec { width: 500.0, height: 500.0 },
            ga: GaConfig { population_size: 10, max_iterations: 3, ..GaConfig::default() },
            algorithms: vec![Algorithm::Mega],
            base_seed: 7,
        };
        let result = run_experiment(&cfg).unwrap();
        assert_eq!(result.raw.len(), 1);
        assert_eq!(result.aggregate.len(), 1);
        let (raw, agg) = (&result.raw[0], &result.aggregate[0]);
        assert_eq!(agg.psi_mean, raw.psi as f64);
        assert_eq!(agg.phi_mean, raw.phi as f64);
        assert_eq!(agg.fitness_mean, raw.fitness);
        assert_eq!(agg.psi_std, 0.0);
    }

    #[test]
    fn rows_are_reproducible_in_isolation_and_order_free() {
        let cfg = tiny_cfg();
        let result = run_experiment(&cfg).unwrap();
        // Recompute a scattering of rows directly, in permuted order.
        for &(ai, vi, t) in &[(1usize, 1usize, 2usize), (0, 1, 0), (1, 0, 1), (0, 0, 2)] {
            let alg = cfg.algorithms[ai];
            let value = cfg.sweep_values[vi];
            let row = run_single_trial(&cfg, alg, value, t).unwrap();
            let stored = result
                .raw
                .iter()
                .find(|r| {
                    r.algorithm == alg.as_str() && r.x_value == value && r.trial == t
                })
                .unwrap();
            assert_eq!(row.seed, stored.seed);
            assert_eq!(row.psi, stored.psi);
            assert_eq!(row.phi, stored.phi);
            assert_eq!(row.fitness, stored.fitness);
            assert_eq!(row.evaluations, stored.evaluations);
        }
    }

    #[test]
    fn outputs_are_byte_deterministic_apart_from_wall_ms() {
        let cfg = tiny_cfg();
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.aggregate_csv(), b.aggregate_csv());
        assert_eq!(a.summary_json(), b.summary_json());
        let strip = |csv: &str| {
            csv.lines()
                .map(|l| l.rsplit_once(',').map(|(head, _)| head.to_string()).unwrap_or_else(|| l.to_string()))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a.raw_csv()), strip(&b.raw_csv()));
    }

    #[test]
    fn validation_enumerates_all_violations() {
        let cfg = ExperimentConfig {
            sweep_values: vec![],
            trials: 0,
            algorithms: vec![],
            ..ExperimentConfig::default()
        };
        let msg = cfg.validate().unwrap_err().to_string();
        assert!(msg.contains("sweep_values"));
        assert!(msg.contains("trials"));
        assert!(msg.contains("algorithms"));
    }

    #[test]
    fn non_integer_count_values_are_rejected() {
        let cfg = ExperimentConfig {
            sweep_kind: SweepKind::VaryClients,
            sweep_values: vec![10.5, 20.0],
            ..ExperimentConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg2 = ExperimentConfig {
            sweep_kind: SweepKind::VaryRouters,
            sweep_values: vec![10.0, 5.0],
            ..ExperimentConfig::default()
        };
        assert!(cfg2.validate().is_err());
    }

    #[test]
    fn config_hash_tracks_content() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        assert_eq!(a.config_hash(), b.config_hash());
        b.base_seed = 1;
        assert_ne!(a.config_hash(), b.config_hash());
    }
}

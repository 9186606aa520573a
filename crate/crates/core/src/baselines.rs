//! Reference optimizers for sanity comparison, plus the bundled table of
//! published literature results.
//!
//! Neither baseline reimplements a published competitor. Random search is the
//! budget-matched floor; the classic GA swaps the entropy objective for a
//! plain normalized coverage+connectivity average while sharing every other
//! code path with the main engine. The literature table carries values taken
//! from external publications for chart overlay only — they are not produced
//! by this crate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::{evaluate_with, FitnessReport};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::ga::{run_ga, GaConfig, Individual, RunTrace, Termination, TraceRow};
use crate::netmodel::{EvalContext, Placement};
use crate::scenario::Scenario;

/// The two non-MEGA optimizers this crate ships.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    RandomSearch,
    ClassicGa,
}

/// Trace rows for random search snapshot the running best once per this many
/// evaluations, mirroring the default GA population size.
const RANDOM_SEARCH_CHUNK: usize = 50;

/// Classic objective: `(psi/n + phi/(n+m)) / 2`, spanning [0, 1].
pub fn classic_objective(report: &FitnessReport, n: usize, m: usize) -> f64 {
    0.5 * (report.psi as f64 / n as f64 + report.phi as f64 / (n + m) as f64)
}

/// Samples `budget` uniform placements and returns the best by entropy
/// fitness. Pure function of `(s, budget, seed)`.
pub fn run_random_search(
    s: &Scenario,
    evaluation_budget: u64,
    seed: u64,
) -> Result<(Individual, RunTrace)> {
    if evaluation_budget == 0 {
        return Err(Error::InvalidConfig("evaluation budget must be at least 1".into()));
    }
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = EvalContext::new(s);

    let mut best: Option<Individual> = None;
    let mut rows = Vec::new();
    let mut done: u64 = 0;
    while done < evaluation_budget {
        let chunk = RANDOM_SEARCH_CHUNK.min((evaluation_budget - done) as usize);
        // Draws stay in this sequential loop; evaluation fans out.
        let placements: Vec<Placement> = (0..chunk)
            .map(|_| {
                let pts = (0..s.router_count())
                    .map(|_| {
                        let x = rand::Rng::random_range(&mut rng, 0.0..=s.area().width);
                        let y = rand::Rng::random_range(&mut rng, 0.0..=s.area().height);
                        crate::scenario::Point::new(x, y)
                    })
                    .collect();
                Placement::from_points_unchecked(pts)
            })
            .collect();
        let reports = par_map(&placements, |p| evaluate_with(&ctx, p));
        let mut chunk_sum = 0.0;
        for (placement, report) in placements.into_iter().zip(reports) {
            let objective = report.fitness;
            chunk_sum += objective;
            let better = best.as_ref().map_or(true, |b| objective > b.objective);
            if better {
                best = Some(Individual { placement, report, objective });
            }
        }
        done += chunk as u64;
        let b = best.as_ref().expect("chunk is non-empty");
        rows.push(TraceRow {
            generation: rows.len() + 1,
            best_fitness: b.objective,
            mean_fitness: chunk_sum / chunk as f64,
            psi: b.report.psi,
            phi: b.report.phi,
        });
    }

    let trace = RunTrace {
        objective: "random_search".to_string(),
        rows,
        termination: Termination::IterationsExhausted,
        evaluations: evaluation_budget,
        wall: start.elapsed(),
    };
    Ok((best.expect("budget >= 1"), trace))
}

/// The main engine's loop with the classic objective in place of entropies.
/// The returned individuals still carry full entropy reports; only the
/// selection scalar differs.
pub fn run_classic_ga(s: &Scenario, cfg: &GaConfig) -> Result<(Individual, RunTrace)> {
    let n = s.client_count();
    let m = s.router_count();
    run_ga(s, cfg, &move |r: &FitnessReport| classic_objective(r, n, m), "classic_ga")
}

/// One published data point for overlay charts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiteratureRow {
    pub sweep: String,
    pub algorithm: String,
    pub x: f64,
    pub coverage: f64,
    pub connectivity: f64,
    pub fitness: f64,
}

/// Bundled literature values (external publications; not reproduced by this
/// crate). Schema: sweep, algorithm, x, coverage, connectivity, fitness.
pub fn literature_values() -> Vec<LiteratureRow> {
    let raw = include_str!("data/literature.csv");
    raw.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 6, "bad literature row: {line}");
            LiteratureRow {
                sweep: f[0].to_string(),
                algorithm: f[1].to_string(),
                x: f[2].parse().expect("x"),
                coverage: f[3].parse().expect("coverage"),
                connectivity: f[4].parse().expect("connectivity"),
                fitness: f[5].parse().expect("fitness"),
            }
        })
        .collect()
}

/// The bundled table as CSV text, for writing alongside sweep outputs.
pub fn literature_csv() -> &'static str {
    include_str!("data/literature.csv")
}

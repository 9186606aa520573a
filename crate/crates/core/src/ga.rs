//! Genetic engine: seeded initialization, truncation selection, single-point
//! crossover over router arrays, fitness-adaptive mutation, elitist
//! replacement, and run tracing.
//!
//! The generation loop is sequential and owns the RNG; fitness evaluation of
//! a generation runs through [`crate::exec::par_map`] and consumes no random
//! state, so results are bit-identical whatever the worker count.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::entropy::{evaluate_with, FitnessReport};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::netmodel::{EvalContext, Placement};
use crate::scenario::{AreaSpec, Point, Scenario};

/// How mutation perturbs a selected gene.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MutationKind {
    /// Resample the router position uniformly over the whole area. Stays
    /// in-area by construction.
    Resample,
    /// Gaussian step with standard deviation `sigma_fraction` of the larger
    /// area dimension, clamped to the area.
    Gaussian { sigma_fraction: f64 },
}

impl Default for MutationKind {
    fn default() -> Self {
        MutationKind::Resample
    }
}

/// Engine parameters. Defaults: population 50, 1000 iterations, top 20%
/// truncation selection, adaptive mutation in [0.01, 0.10], one elite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_iterations: usize,
    pub parent_fraction: f64,
    pub base_mutation_rate: f64,
    pub min_mutation_rate: f64,
    pub elitism_count: usize,
    pub target_fitness: f64,
    pub mutation: MutationKind,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 50,
            max_iterations: 1000,
            parent_fraction: 0.20,
            base_mutation_rate: 0.10,
            min_mutation_rate: 0.01,
            elitism_count: 1,
            target_fitness: 1.0,
            mutation: MutationKind::default(),
            seed: 0,
        }
    }
}

impl GaConfig {
    /// Checks every config invariant, reporting all violations at once.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        if self.population_size == 0 {
            violations.push("population_size must be at least 1".to_string());
        }
        if !(self.parent_fraction > 0.0 && self.parent_fraction <= 1.0) {
            violations.push(format!(
                "parent_fraction must be in (0, 1], got {}",
                self.parent_fraction
            ));
        }
        if !(0.0..=1.0).contains(&self.base_mutation_rate) {
            violations.push(format!(
                "base_mutation_rate must be in [0, 1], got {}",
                self.base_mutation_rate
            ));
        }
        if !(0.0..=1.0).contains(&self.min_mutation_rate) {
            violations.push(format!(
                "min_mutation_rate must be in [0, 1], got {}",
                self.min_mutation_rate
            ));
        }
        if self.min_mutation_rate > self.base_mutation_rate {
            violations.push(format!(
                "min_mutation_rate ({}) must not exceed base_mutation_rate ({})",
                self.min_mutation_rate, self.base_mutation_rate
            ));
        }
        if self.parent_count() < 2 {
            violations.push(format!(
                "floor(parent_fraction * population_size) must be at least 2, got {}",
                self.parent_count()
            ));
        }
        if self.elitism_count > self.population_size {
            violations.push(format!(
                "elitism_count ({}) must not exceed population_size ({})",
                self.elitism_count, self.population_size
            ));
        }
        if !self.target_fitness.is_finite() {
            violations.push("target_fitness must be finite".to_string());
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(violations.join("; ")))
        }
    }

    /// Number of parents truncation selection keeps.
    pub fn parent_count(&self) -> usize {
        (self.parent_fraction * self.population_size as f64).floor() as usize
    }

    /// Per-gene mutation probability at a given fitness: linear decay from
    /// the base rate at fitness 0 to the floor at fitness 1. Negative fitness
    /// clamps to 0 before use.
    pub fn mutation_rate(&self, fitness: f64) -> f64 {
        let f = fitness.max(0.0);
        (self.base_mutation_rate * (1.0 - f))
            .clamp(self.min_mutation_rate, self.base_mutation_rate)
    }
}

/// Total fitness evaluations a full-length run consumes; the budget to hand
/// to random search for an evaluation-matched comparison.
pub fn mega_evaluation_budget(cfg: &GaConfig) -> u64 {
    let per_gen = (cfg.population_size - cfg.elitism_count.min(cfg.population_size)) as u64;
    cfg.population_size as u64 + cfg.max_iterations as u64 * per_gen
}

/// A placement with its cached evaluation and the scalar the engine ranks by.
#[derive(Clone, Debug)]
pub struct Individual {
    pub placement: Placement,
    pub report: FitnessReport,
    /// Selection scalar: `report.fitness` for the entropy objective, the
    /// normalized coverage+connectivity average for the classic objective.
    pub objective: f64,
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    IterationsExhausted,
    TargetReached,
}

/// One per-generation trace record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub generation: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub psi: usize,
    pub phi: usize,
}

/// Full run record: per-generation rows plus totals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunTrace {
    pub objective: String,
    pub rows: Vec<TraceRow>,
    pub termination: Termination,
    pub evaluations: u64,
    #[serde(skip)]
    pub wall: Duration,
}

impl RunTrace {
    pub fn generations(&self) -> usize {
        self.rows.len()
    }

    /// Per-generation CSV: `generation,best_fitness,mean_fitness,psi,phi`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("generation,best_fitness,mean_fitness,psi,phi\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.generation, row.best_fitness, row.mean_fitness, row.psi, row.phi
            ));
        }
        out
    }
}

pub(crate) type ObjectiveFn = dyn Fn(&FitnessReport) -> f64 + Sync;

/// Entropy objective: the report's own fitness.
pub(crate) fn entropy_objective(r: &FitnessReport) -> f64 {
    r.fitness
}

fn uniform_point(area: &AreaSpec, rng: &mut ChaCha8Rng) -> Point {
    let x = rng.random_range(0.0..=area.width);
    let y = rng.random_range(0.0..=area.height);
    Point::new(x, y)
}

fn random_placement(s: &Scenario, rng: &mut ChaCha8Rng) -> Placement {
    let pts = (0..s.router_count()).map(|_| uniform_point(s.area(), rng)).collect();
    Placement::from_points_unchecked(pts)
}

fn evaluate_batch(
    ctx: &EvalContext<'_>,
    placements: Vec<Placement>,
    objective: &ObjectiveFn,
) -> Vec<Individual> {
    let reports = par_map(&placements, |p| evaluate_with(ctx, p));
    placements
        .into_iter()
        .zip(reports)
        .map(|(placement, report)| {
            let objective = objective(&report);
            Individual { placement, report, objective }
        })
        .collect()
}

/// Draws and evaluates the initial population: `population_size` placements
/// of `m` routers each, i.i.d. uniform over the area. Pure function of
/// `(s, cfg)`.
pub fn initialize(s: &Scenario, cfg: &GaConfig) -> Result<Vec<Individual>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ctx = EvalContext::new(s);
    Ok(initialize_with(s, cfg, &ctx, &entropy_objective, &mut rng))
}

fn initialize_with(
    s: &Scenario,
    cfg: &GaConfig,
    ctx: &EvalContext<'_>,
    objective: &ObjectiveFn,
    rng: &mut ChaCha8Rng,
) -> Vec<Individual> {
    let placements: Vec<Placement> =
        (0..cfg.population_size).map(|_| random_placement(s, rng)).collect();
    evaluate_batch(ctx, placements, objective)
}

/// Indices of the population sorted for selection: descending objective,
/// ties to the lower index.
fn ranked_indices(pop: &[Individual]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pop.len()).collect();
    idx.sort_by(|&a, &b| {
        pop[b].objective.total_cmp(&pop[a].objective).then_with(|| a.cmp(&b))
    });
    idx
}

/// Truncation selection: the top `floor(parent_fraction * |pop|)` individuals
/// by fitness, sorted descending, ties broken by lower population index.
pub fn select_parents<'a>(pop: &'a [Individual], cfg: &GaConfig) -> Vec<&'a Individual> {
    let k = (cfg.parent_fraction * pop.len() as f64).floor() as usize;
    ranked_indices(pop).into_iter().take(k).map(|i| &pop[i]).collect()
}

/// Single-point crossover: cut uniformly inside the chromosome, swap tails.
/// Placements of length 1 are returned as copies.
pub fn crossover(
    a: &Placement,
    b: &Placement,
    rng: &mut ChaCha8Rng,
) -> Result<(Placement, Placement)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    let m = a.len();
    if m < 2 {
        return Ok((a.clone(), b.clone()));
    }
    let k = rng.random_range(1..m);
    let mut c1 = Vec::with_capacity(m);
    let mut c2 = Vec::with_capacity(m);
    c1.extend_from_slice(&a.routers()[..k]);
    c1.extend_from_slice(&b.routers()[k..]);
    c2.extend_from_slice(&b.routers()[..k]);
    c2.extend_from_slice(&a.routers()[k..]);
    Ok((Placement::from_points_unchecked(c1), Placement::from_points_unchecked(c2)))
}

/// Mutates each gene independently with probability `cfg.mutation_rate(fitness)`.
/// The result always lies inside `area`.
pub fn mutate(
    p: &Placement,
    fitness: f64,
    cfg: &GaConfig,
    area: &AreaSpec,
    rng: &mut ChaCha8Rng,
) -> Placement {
    let rate = cfg.mutation_rate(fitness);
    let pts = p
        .routers()
        .iter()
        .map(|r| {
            if rng.random_range(0.0..1.0) < rate {
                match cfg.mutation {
                    MutationKind::Resample => uniform_point(area, rng),
                    MutationKind::Gaussian { sigma_fraction } => {
                        let sigma = sigma_fraction * area.width.max(area.height);
                        let normal = Normal::new(0.0, sigma).expect("finite sigma");
                        let x = (r.x + normal.sample(rng)).clamp(0.0, area.width);
                        let y = (r.y + normal.sample(rng)).clamp(0.0, area.height);
                        Point::new(x, y)
                    }
                }
            } else {
                *r
            }
        })
        .collect();
    Placement::from_points_unchecked(pts)
}

/// Runs the full engine with the entropy objective.
pub fn run_mega(s: &Scenario, cfg: &GaConfig) -> Result<(Individual, RunTrace)> {
    run_ga(s, cfg, &entropy_objective, "mega")
}

/// Shared loop for any objective; the classic-GA baseline reuses it with a
/// different scalar.
pub(crate) fn run_ga(
    s: &Scenario,
    cfg: &GaConfig,
    objective: &ObjectiveFn,
    label: &str,
) -> Result<(Individual, RunTrace)> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ctx = EvalContext::new(s);

    let mut pop = initialize_with(s, cfg, &ctx, objective, &mut rng);
    let mut evaluations = cfg.population_size as u64;
    let mut best = pop[ranked_indices(&pop)[0]].clone();

    let mut rows = Vec::new();
    let mut termination = Termination::IterationsExhausted;

    if best.objective >= cfg.target_fitness {
        termination = Termination::TargetReached;
    } else {
        for generation in 1..=cfg.max_iterations {
            let parents = select_parents(&pop, cfg);
            let elite_count = cfg.elitism_count.min(cfg.population_size);
            let offspring_target = cfg.population_size - elite_count;

            // Random draws happen only here, in the sequential loop. Offspring
            // mutation rates use the mean of the two parents' objectives, the
            // only fitness available before evaluation.
            let mut offspring: Vec<Placement> = Vec::with_capacity(offspring_target);
            while offspring.len() < offspring_target {
                let pa = parents[rng.random_range(0..parents.len())];
                let pb = parents[rng.random_range(0..parents.len())];
                let (c1, c2) = crossover(&pa.placement, &pb.placement, &mut rng)?;
                let parent_fitness = 0.5 * (pa.objective + pb.objective);
                offspring.push(mutate(&c1, parent_fitness, cfg, s.area(), &mut rng));
                if offspring.len() < offspring_target {
                    offspring.push(mutate(&c2, parent_fitness, cfg, s.area(), &mut rng));
                }
            }

            let elites: Vec<Individual> =
                ranked_indices(&pop).into_iter().take(elite_count).map(|i| pop[i].clone()).collect();
            evaluations += offspring.len() as u64;
            let mut next = elites;
            next.extend(evaluate_batch(&ctx, offspring, objective));
            pop = next;

            let order = ranked_indices(&pop);
            let gen_best = &pop[order[0]];
            if gen_best.objective > best.objective {
                best = gen_best.clone();
            }
            let mean = pop.iter().map(|i| i.objective).sum::<f64>() / pop.len() as f64;
            rows.push(TraceRow {
                generation,
                best_fitness: gen_best.objective,
                mean_fitness: mean,
                psi: gen_best.report.psi,
                phi: gen_best.report.phi,
            });

            if gen_best.objective >= cfg.target_fitness {
                termination = Termination::TargetReached;
                break;
            }
        }
    }

    let trace = RunTrace {
        objective: label.to_string(),
        rows,
        termination,
        evaluations,
        wall: start.elapsed(),
    };
    Ok((best, trace))
}

//! Maximum-entropy genetic algorithm for mesh router placement.
//!
//! Solves the static continuous placement problem: put `m` routers in a
//! rectangular area so that fixed clients are covered evenly (each client
//! associates with its nearest router within the coverage radius) and the
//! routers form one connected network (links within twice the radius). The
//! objective is `H_cov - H_con`: normalized Shannon entropy of the per-router
//! client distribution minus normalized entropy of the sub-network sizes,
//! maximal at 1 for even full coverage by a single connected component.
//!
//! The crate provides the geometric network model, the entropy objective,
//! the genetic engine, two comparison baselines, a reproducible sweep
//! runner, and SVG rendering. Fitness evaluation and sweep trials fan out
//! over rayon when the `parallel` feature (default) is enabled; results are
//! bit-identical with or without it, since random draws happen only in
//! sequential driver loops.

pub mod baselines;
pub mod entropy;
pub mod error;
pub mod exec;
pub mod ga;
pub mod netmodel;
pub mod render;
pub mod report;
pub mod scenario;
pub mod seeds;
pub mod sweep;

pub use baselines::{
    classic_objective, literature_csv, literature_values, run_classic_ga, run_random_search,
    BaselineKind, LiteratureRow,
};
pub use entropy::{connectivity_entropy, coverage_entropy, evaluate, evaluate_with, FitnessReport};
pub use error::{Error, Result};
pub use ga::{
    crossover, initialize, mega_evaluation_budget, mutate, run_mega, select_parents, GaConfig,
    Individual, MutationKind, RunTrace, Termination, TraceRow,
};
pub use netmodel::{
    compute_coverage, connectivity, decompose, edge_list, Component, ComponentDecomposition,
    CoverageAssignment, EvalContext, Placement,
};
pub use render::render_svg;
pub use report::{placement_coords, run_config_hash, RunReport, REPORT_FORMAT_VERSION};
pub use scenario::{
    generate_scenario, load_scenario, save_scenario, scenario_from_str, scenario_to_string,
    AreaSpec, Point, Scenario, SCENARIO_FORMAT_VERSION,
};
pub use sweep::{
    run_experiment, run_experiment_with_progress, run_single_trial, AggregateRow, Algorithm,
    ExperimentConfig, ExperimentResult, SweepKind, TrialRow,
};

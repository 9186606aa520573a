//! Entropy-based fitness: coverage entropy, connectivity entropy, and their
//! difference as the scalar objective.
//!
//! Coverage entropy rewards spreading assigned clients evenly across routers:
//! with `P_i = n_i / n` (assigned clients over total clients),
//!
//! ```text
//! H_cov = -( sum_i P_i · ln P_i ) / ln m        for m >= 2
//! H_cov = P_1                                  for m = 1 (ln 1 = 0; see below)
//! ```
//!
//! Connectivity entropy penalizes fragmentation: with `P_j = |G_j| / (n + m)`
//! over the `G_n` sub-networks,
//!
//! ```text
//! H_con = 0                                    for G_n = 1
//! H_con = -( sum_j P_j · ln P_j ) / ln G_n      for G_n > 1
//! ```
//!
//! Fitness is `H_cov - H_con`, maximal at 1 for full, perfectly even coverage
//! by a single connected sub-network. Conventions baked in here:
//!
//! - `0 · ln 0 = 0` everywhere.
//! - `n_j` counts clients *assigned* to router `j` (nearest covering router),
//!   not every client inside its disk, so the `P_i` form a sub-distribution.
//! - For `m = 1` the normalizer `ln m` vanishes; `H_cov` falls back to
//!   `psi / n`, preserving "more coverage, higher fitness".
//! - `H_cov` is capped at 1. The cap is provably inactive for `m = 1` and
//!   `m >= 3`; only `m = 2` with a large, evenly split partial coverage can
//!   push the raw ratio above 1 (e.g. two disjoint routers each covering
//!   36.8% of clients give 1.0615), and the capped value keeps the documented
//!   `[0, 1]` range.
//! - `H_con` has no upper cap; `sum P_j < 1` under partial coverage can push
//!   it past 1 in fragmented layouts.

use serde::{Deserialize, Serialize};

use crate::netmodel::{
    compute_coverage, connectivity, decompose, ComponentDecomposition, CoverageAssignment,
    EvalContext, Placement,
};
use crate::scenario::Scenario;

/// Fitness breakdown for one placement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitnessReport {
    pub h_cov: f64,
    pub h_con: f64,
    /// `h_cov - h_con`, the optimization objective.
    pub fitness: f64,
    /// Covered client count.
    pub psi: usize,
    /// Largest sub-network size (routers + covered clients).
    pub phi: usize,
    /// `P_i = n_i / n` per router, zeros included.
    pub coverage_probs: Vec<f64>,
    /// `P_j = |G_j| / (n + m)` per sub-network.
    pub connectivity_probs: Vec<f64>,
}

fn entropy_sum(probs: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &p in probs {
        if p > 0.0 {
            acc += p * p.ln();
        }
    }
    acc
}

/// Coverage entropy from per-router assigned-client counts.
pub fn coverage_entropy(cov: &CoverageAssignment, n: usize, m: usize) -> f64 {
    debug_assert_eq!(cov.counts.len(), m);
    debug_assert_eq!(cov.assigned.len(), n);
    let probs: Vec<f64> = cov.counts.iter().map(|&c| c as f64 / n as f64).collect();
    coverage_entropy_from_probs(&probs, m)
}

fn coverage_entropy_from_probs(probs: &[f64], m: usize) -> f64 {
    if m == 1 {
        return probs[0];
    }
    let sum = entropy_sum(probs);
    if sum == 0.0 {
        return 0.0;
    }
    (-sum / (m as f64).ln()).min(1.0)
}

/// Connectivity entropy from a sub-network decomposition.
pub fn connectivity_entropy(dec: &ComponentDecomposition, n: usize, m: usize) -> f64 {
    let g_n = dec.component_count();
    if g_n <= 1 {
        return 0.0;
    }
    let total = (n + m) as f64;
    let probs: Vec<f64> = dec.component_sizes.iter().map(|&s| s as f64 / total).collect();
    -entropy_sum(&probs) / (g_n as f64).ln()
}

/// Full evaluation: coverage, decomposition, both entropies, fitness.
pub fn evaluate(s: &Scenario, p: &Placement) -> FitnessReport {
    let cov = compute_coverage(s, p);
    let dec = decompose(s, p, &cov);
    build_report(s, &cov, &dec)
}

/// Evaluation against a reusable context; identical output to [`evaluate`].
pub fn evaluate_with(ctx: &EvalContext<'_>, p: &Placement) -> FitnessReport {
    let cov = ctx.coverage(p);
    let dec = ctx.decompose(p, &cov);
    build_report(ctx.scenario(), &cov, &dec)
}

fn build_report(
    s: &Scenario,
    cov: &CoverageAssignment,
    dec: &ComponentDecomposition,
) -> FitnessReport {
    let n = s.client_count();
    let m = s.router_count();
    let coverage_probs: Vec<f64> = cov.counts.iter().map(|&c| c as f64 / n as f64).collect();
    let total = (n + m) as f64;
    let connectivity_probs: Vec<f64> =
        dec.component_sizes.iter().map(|&sz| sz as f64 / total).collect();

    let h_cov = coverage_entropy_from_probs(&coverage_probs, m);
    let h_con = connectivity_entropy(dec, n, m);
    FitnessReport {
        h_cov,
        h_con,
        fitness: h_cov - h_con,
        psi: cov.psi,
        phi: connectivity(dec),
        coverage_probs,
        connectivity_probs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::Placement;
    use crate::scenario::{AreaSpec, Point, Scenario};

    fn cov_from_counts(counts: Vec<usize>, n: usize) -> CoverageAssignment {
        // Synthesizes an assignment consistent with the given counts.
        let mut assigned = Vec::with_capacity(n);
        for (j, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                assigned.push(Some(j));
            }
        }
        let psi = assigned.len();
        assigned.resize(n, None);
        CoverageAssignment { assigned, counts, psi }
    }

    fn dec_from_sizes(sizes: Vec<usize>) -> ComponentDecomposition {
        // Only sizes matter to the entropy; membership lists are synthetic.
        let components = sizes
            .iter()
            .map(|&s| crate::netmodel::Component { routers: vec![0; s.min(1)], clients: vec![0; s.saturating_sub(1)] })
            .collect();
        ComponentDecomposition { components, component_sizes: sizes }
    }

    #[test]
    fn equal_triple_split_is_unit_entropy() {
        // 3 routers, 9 clients, each P_i = 1/3.
        let cov = cov_from_counts(vec![3, 3, 3], 9);
        let h = coverage_entropy(&cov, 9, 3);
        assert!((h - 1.0).abs() <= 1e-12, "H_cov = {h}");
    }

    #[test]
    fn concentration_gives_zero_entropy() {
        // One router covers all clients, the rest none: 1*ln(1) = 0.
        let cov = cov_from_counts(vec![10, 0, 0, 0], 10);
        assert_eq!(coverage_entropy(&cov, 10, 4), 0.0);
    }

    #[test]
    fn two_router_even_full_split() {
        let cov = cov_from_counts(vec![5, 5], 10);
        let h = coverage_entropy(&cov, 10, 2);
        // -(2 * 0.5 * ln 0.5) / ln 2 = 1.
        assert!((h - 1.0).abs() <= 1e-12, "H_cov = {h}");
    }

    #[test]
    fn zero_coverage_is_zero_entropy() {
        let cov = cov_from_counts(vec![0, 0, 0], 6);
        assert_eq!(coverage_entropy(&cov, 6, 3), 0.0);
        let cov1 = cov_from_counts(vec![0], 6);
        assert_eq!(coverage_entropy(&cov1, 6, 1), 0.0);
    }

    #[test]
    fn single_router_uses_coverage_fraction() {
        let cov = cov_from_counts(vec![3], 4);
        assert_eq!(coverage_entropy(&cov, 4, 1), 0.75);
    }

    #[test]
    fn two_router_partial_even_split_is_capped() {
        // Raw Eq.-4 ratio exceeds 1 near P = (1/e, 1/e); the cap keeps the
        // documented range.
        let cov = cov_from_counts(vec![368, 368], 1000);
        let h = coverage_entropy(&cov, 1000, 2);
        assert_eq!(h, 1.0);
    }

    #[test]
    fn single_component_entropy_is_exactly_zero() {
        let dec = dec_from_sizes(vec![17]);
        assert_eq!(connectivity_entropy(&dec, 12, 5), 0.0);
    }

    #[test]
    fn two_even_components() {
        // m=2, n=2, components of size 2 each: P = (0.5, 0.5), G_n = 2.
        let dec = dec_from_sizes(vec![2, 2]);
        let h = connectivity_entropy(&dec, 2, 2);
        assert!((h - 1.0).abs() <= 1e-12, "H_con = {h}");
    }

    #[test]
    fn skewed_three_components_match_hand_evaluation() {
        // m=3, n=7, sizes (8,1,1): P = (0.8, 0.1, 0.1), G_n = 3.
        let dec = dec_from_sizes(vec![8, 1, 1]);
        let h = connectivity_entropy(&dec, 7, 3);
        let expected = -(0.8_f64 * 0.8_f64.ln() + 2.0 * (0.1_f64 * 0.1_f64.ln())) / 3.0_f64.ln();
        assert!((h - expected).abs() <= 1e-9, "H_con = {h}, expected {expected}");
        assert!((h - 0.5816).abs() < 5e-4);
    }

    /// Ideal layout: three routers chained within 2*CR, each covering a
    /// disjoint triple. H_cov = 1, H_con = 0, fitness = 1.
    #[test]
    fn ideal_layout_reaches_unit_fitness() {
        let centers = [(600.0, 1000.0), (1000.0, 1000.0), (1400.0, 1000.0)];
        let mut clients = Vec::new();
        for &(cx, cy) in &centers {
            clients.push(Point::new(cx - 100.0, cy));
            clients.push(Point::new(cx + 100.0, cy));
            clients.push(Point::new(cx, cy + 100.0));
        }
        let s = Scenario::new(AreaSpec::new(2000.0, 2000.0).unwrap(), clients, 3, 200.0, 0).unwrap();
        let p = Placement::new(centers.iter().map(|&(x, y)| Point::new(x, y)).collect(), &s).unwrap();
        let report = evaluate(&s, &p);
        assert!((report.h_cov - 1.0).abs() <= 1e-12);
        assert_eq!(report.h_con, 0.0);
        assert!((report.fitness - 1.0).abs() <= 1e-12);
        assert_eq!(report.psi, 9);
        assert_eq!(report.phi, 12);
    }

    #[test]
    fn degenerate_floor_fitness_is_nonpositive() {
        // All clients uncovered, routers isolated: H_cov = 0, fitness = -H_con.
        let clients = vec![Point::new(500.0, 500.0)];
        let s = Scenario::new(AreaSpec::new(1000.0, 1000.0).unwrap(), clients, 2, 10.0, 0).unwrap();
        let p = Placement::new(vec![Point::new(0.0, 0.0), Point::new(1000.0, 1000.0)], &s).unwrap();
        let report = evaluate(&s, &p);
        assert_eq!(report.h_cov, 0.0);
        assert_eq!(report.psi, 0);
        assert!(report.h_con > 0.0);
        assert_eq!(report.fitness, -report.h_con);
    }

    #[test]
    fn evaluate_with_context_matches_one_shot() {
        let s = crate::scenario::generate_scenario(
            60,
            7,
            150.0,
            AreaSpec::new(1200.0, 800.0).unwrap(),
            9,
        )
        .unwrap();
        let ctx = EvalContext::new(&s);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4);
        for _ in 0..20 {
            let pts = (0..7)
                .map(|_| {
                    Point::new(
                        rand::Rng::random_range(&mut rng, 0.0..=1200.0),
                        rand::Rng::random_range(&mut rng, 0.0..=800.0),
                    )
                })
                .collect();
            let p = Placement::new(pts, &s).unwrap();
            assert_eq!(evaluate(&s, &p), evaluate_with(&ctx, &p));
        }
    }
}

//! Geometric network induced by a placement: disk coverage, sub-network
//! decomposition, and the connectivity metric.
//!
//! The model is purely geometric. A client is covered when some router lies
//! within the coverage radius (closed disk, compared as squared distances);
//! each covered client is assigned to its nearest covering router, ties going
//! to the lowest router index. Routers link when within twice the coverage
//! radius. A sub-network is a connected component of the router graph plus
//! the clients assigned to its routers; uncovered clients belong to nothing.
//!
//! Coverage uses a uniform spatial grid over the (fixed) client field for
//! neighbor pruning. Pruning only skips pairs that cannot satisfy the disk
//! predicate, so results are exactly those of the naive all-pairs scan.

use crate::error::{Error, Result};
use crate::scenario::{Point, Scenario};

/// One candidate solution: the ordered list of `m` router positions.
#[derive(Clone, Debug, PartialEq)]
pub struct Placement {
    routers: Vec<Point>,
}

impl Placement {
    /// Validates length against the scenario's router count and bounds
    /// against its area.
    pub fn new(routers: Vec<Point>, s: &Scenario) -> Result<Self> {
        if routers.len() != s.router_count() {
            return Err(Error::LengthMismatch { left: routers.len(), right: s.router_count() });
        }
        for r in &routers {
            if !r.x.is_finite() || !r.y.is_finite() || !s.area().contains(r) {
                return Err(Error::OutOfArea {
                    x: r.x,
                    y: r.y,
                    width: s.area().width,
                    height: s.area().height,
                });
            }
        }
        Ok(Placement { routers })
    }

    /// Construction for internal callers that guarantee validity (GA
    /// operators resample inside the area by construction).
    pub(crate) fn from_points_unchecked(routers: Vec<Point>) -> Self {
        Placement { routers }
    }

    pub fn routers(&self) -> &[Point] {
        &self.routers
    }

    pub fn len(&self) -> usize {
        self.routers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routers.is_empty()
    }
}

/// Per-client router assignment and per-router assigned-client counts.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverageAssignment {
    /// `assigned[i]` is the router index client `i` is assigned to, or None
    /// when no router covers it.
    pub assigned: Vec<Option<usize>>,
    /// `counts[j]` is `n_j`, the number of clients assigned to router `j`.
    pub counts: Vec<usize>,
    /// Number of covered clients.
    pub psi: usize,
}

/// One sub-network: a maximal set of mutually reachable routers together
/// with the clients assigned to them.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub routers: Vec<usize>,
    pub clients: Vec<usize>,
}

impl Component {
    /// Routers plus attached covered clients.
    pub fn size(&self) -> usize {
        self.routers.len() + self.clients.len()
    }
}

/// Partition of routers and covered clients into sub-networks, ordered by
/// each component's smallest router index.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
    pub component_sizes: Vec<usize>,
}

impl ComponentDecomposition {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Size of the largest sub-network (routers + covered clients).
pub fn connectivity(dec: &ComponentDecomposition) -> usize {
    dec.component_sizes.iter().copied().max().unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Spatial grid over the client field
// ---------------------------------------------------------------------------

/// Uniform bucket grid over fixed points. Cell size adapts to the query
/// radius and point density; queries walk every cell overlapping the disk's
/// bounding square, so no qualifying point is ever skipped.
struct PointGrid {
    cell: f64,
    cols: usize,
    rows: usize,
    cells: Vec<Vec<u32>>,
}

impl PointGrid {
    fn build(points: &[Point], width: f64, height: f64, radius: f64) -> Self {
        // Aim for O(1) points per cell without letting tiny radii explode the
        // cell count; any cell size yields exact results.
        let density_cell = (width * height / points.len().max(1) as f64).sqrt();
        let cell = radius.max(density_cell).max(f64::MIN_POSITIVE);
        let cols = (width / cell).ceil().max(1.0) as usize;
        let rows = (height / cell).ceil().max(1.0) as usize;
        let mut cells = vec![Vec::new(); cols * rows];
        for (i, p) in points.iter().enumerate() {
            let (cx, cy) = Self::cell_of(p, cell, cols, rows);
            cells[cy * cols + cx].push(i as u32);
        }
        PointGrid { cell, cols, rows, cells }
    }

    fn cell_of(p: &Point, cell: f64, cols: usize, rows: usize) -> (usize, usize) {
        let cx = ((p.x / cell) as usize).min(cols - 1);
        let cy = ((p.y / cell) as usize).min(rows - 1);
        (cx, cy)
    }

    /// Visits indices of every stored point whose cell overlaps the square
    /// of half-width `radius` around `center` (a superset of the disk).
    fn for_candidates(&self, center: &Point, radius: f64, mut visit: impl FnMut(u32)) {
        let x0 = (((center.x - radius) / self.cell).floor().max(0.0) as usize).min(self.cols - 1);
        let x1 = (((center.x + radius) / self.cell).floor().max(0.0) as usize).min(self.cols - 1);
        let y0 = (((center.y - radius) / self.cell).floor().max(0.0) as usize).min(self.rows - 1);
        let y1 = (((center.y + radius) / self.cell).floor().max(0.0) as usize).min(self.rows - 1);
        for cy in y0..=y1 {
            for cx in x0..=x1 {
                for &i in &self.cells[cy * self.cols + cx] {
                    visit(i);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation context
// ---------------------------------------------------------------------------

/// Precomputed per-scenario state for repeated placement evaluation.
///
/// Immutable and `Sync`; a GA generation can evaluate its whole population
/// against one context in parallel.
pub struct EvalContext<'a> {
    scenario: &'a Scenario,
    client_grid: PointGrid,
    cr2: f64,
}

impl<'a> EvalContext<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        let area = scenario.area();
        let cr = scenario.coverage_radius();
        let client_grid = PointGrid::build(scenario.clients(), area.width, area.height, cr);
        EvalContext { scenario, client_grid, cr2: cr * cr }
    }

    pub fn scenario(&self) -> &Scenario {
        self.scenario
    }

    /// Assigns every client to its nearest covering router (ties to the
    /// lowest router index). Equals the naive all-pairs scan exactly.
    pub fn coverage(&self, p: &Placement) -> CoverageAssignment {
        debug_assert_eq!(p.len(), self.scenario.router_count());
        let clients = self.scenario.clients();
        let n = clients.len();
        let cr = self.scenario.coverage_radius();

        let mut best_d2 = vec![f64::INFINITY; n];
        let mut assigned: Vec<Option<usize>> = vec![None; n];
        // Ascending router index with a strict `<` guarantees the lowest
        // index wins exact distance ties.
        for (j, r) in p.routers().iter().enumerate() {
            self.client_grid.for_candidates(r, cr, |ci| {
                let ci = ci as usize;
                let d2 = clients[ci].dist2(r);
                if d2 <= self.cr2 && d2 < best_d2[ci] {
                    best_d2[ci] = d2;
                    assigned[ci] = Some(j);
                }
            });
        }

        let mut counts = vec![0usize; p.len()];
        let mut psi = 0usize;
        for a in &assigned {
            if let Some(j) = *a {
                counts[j] += 1;
                psi += 1;
            }
        }
        CoverageAssignment { assigned, counts, psi }
    }

    pub fn decompose(&self, p: &Placement, cov: &CoverageAssignment) -> ComponentDecomposition {
        decompose_impl(self.scenario, p, cov)
    }
}

/// One-shot coverage computation; builds a context internally.
pub fn compute_coverage(s: &Scenario, p: &Placement) -> CoverageAssignment {
    EvalContext::new(s).coverage(p)
}

/// Partitions routers (linked within 2·CR) and their assigned clients into
/// sub-networks.
pub fn decompose(s: &Scenario, p: &Placement, cov: &CoverageAssignment) -> ComponentDecomposition {
    decompose_impl(s, p, cov)
}

fn decompose_impl(s: &Scenario, p: &Placement, cov: &CoverageAssignment) -> ComponentDecomposition {
    let m = p.len();
    let link = 2.0 * s.coverage_radius();
    let link2 = link * link;
    let routers = p.routers();

    let mut uf = UnionFind::new(m);
    if m > 128 {
        // Grid prune for large router sets; same predicate, same unions.
        let area = s.area();
        let grid = PointGrid::build(routers, area.width, area.height, link);
        for (i, r) in routers.iter().enumerate() {
            grid.for_candidates(r, link, |j| {
                let j = j as usize;
                if j > i && routers[i].dist2(&routers[j]) <= link2 {
                    uf.union(i, j);
                }
            });
        }
    } else {
        for i in 0..m {
            for j in (i + 1)..m {
                if routers[i].dist2(&routers[j]) <= link2 {
                    uf.union(i, j);
                }
            }
        }
    }

    // Components keyed by root, then canonicalized by smallest router index.
    let mut slot_of_root = vec![usize::MAX; m];
    let mut components: Vec<Component> = Vec::new();
    for i in 0..m {
        let root = uf.find(i);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = components.len();
            components.push(Component { routers: Vec::new(), clients: Vec::new() });
        }
        components[slot_of_root[root]].routers.push(i);
    }
    for (ci, a) in cov.assigned.iter().enumerate() {
        if let Some(j) = *a {
            let slot = slot_of_root[uf.find(j)];
            components[slot].clients.push(ci);
        }
    }
    // Router indices are pushed in ascending order, so components are already
    // ordered by their smallest router index.
    let component_sizes = components.iter().map(Component::size).collect();
    ComponentDecomposition { components, component_sizes }
}

/// Debug dump of a decomposition's link structure: one `router i -- router j`
/// line per router link and one `client c -> router j` line per assignment.
pub fn edge_list(s: &Scenario, p: &Placement, cov: &CoverageAssignment) -> String {
    let link = 2.0 * s.coverage_radius();
    let link2 = link * link;
    let routers = p.routers();
    let mut out = String::new();
    for i in 0..routers.len() {
        for j in (i + 1)..routers.len() {
            if routers[i].dist2(&routers[j]) <= link2 {
                out.push_str(&format!("router {i} -- router {j}\n"));
            }
        }
    }
    for (c, a) in cov.assigned.iter().enumerate() {
        if let Some(j) = *a {
            out.push_str(&format!("client {c} -> router {j}\n"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Union-find
// ---------------------------------------------------------------------------

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]]; // path halving
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

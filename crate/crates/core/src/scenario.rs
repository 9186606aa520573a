//! Problem instances: the deployment area, the fixed client field, the router
//! budget, and the coverage radius.
//!
//! A `Scenario` is immutable once built and safe to share across worker
//! threads. All randomness flows through a named generator (ChaCha8) seeded
//! from a `u64`, so identical inputs reproduce bit-identical client fields on
//! any platform.
//!
//! # File format
//!
//! Scenarios serialize to pretty-printed JSON with an explicit version field:
//!
//! ```json
//! {
//!   "version": 1,
//!   "width": 2000.0,
//!   "height": 2000.0,
//!   "router_count": 20,
//!   "coverage_radius": 200.0,
//!   "seed": 42,
//!   "clients": [[x, y], ...]
//! }
//! ```
//!
//! Coordinates are written with the shortest decimal that round-trips, so
//! `load(save(s)) == s` holds exactly.

use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version tag written into scenario files.
pub const SCENARIO_FORMAT_VERSION: u32 = 1;

/// A 2-D point in meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Squared Euclidean distance. Disk membership tests compare this against
    /// a squared radius, avoiding the sqrt rounding step entirely.
    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// Rectangular deployment area, `[0, width] x [0, height]` meters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaSpec {
    pub width: f64,
    pub height: f64,
}

impl AreaSpec {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidDimension(format!("area width must be positive, got {width}")));
        }
        if !(height > 0.0) || !height.is_finite() {
            return Err(Error::InvalidDimension(format!("area height must be positive, got {height}")));
        }
        Ok(AreaSpec { width, height })
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= 0.0 && p.x <= self.width && p.y >= 0.0 && p.y <= self.height
    }
}

/// An immutable problem instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    area: AreaSpec,
    clients: Vec<Point>,
    router_count: usize,
    coverage_radius: f64,
    seed: u64,
}

impl Scenario {
    /// Builds a scenario, checking every type invariant. `seed` records how
    /// the client field was produced (or 0 for hand-built instances).
    pub fn new(
        area: AreaSpec,
        clients: Vec<Point>,
        router_count: usize,
        coverage_radius: f64,
        seed: u64,
    ) -> Result<Self> {
        if clients.is_empty() {
            return Err(Error::InvalidDimension("client count must be at least 1".into()));
        }
        if router_count == 0 {
            return Err(Error::InvalidDimension("router count must be at least 1".into()));
        }
        if !(coverage_radius > 0.0) || !coverage_radius.is_finite() {
            return Err(Error::InvalidDimension(format!(
                "coverage radius must be positive, got {coverage_radius}"
            )));
        }
        for c in &clients {
            if !c.x.is_finite() || !c.y.is_finite() || !area.contains(c) {
                return Err(Error::OutOfArea {
                    x: c.x,
                    y: c.y,
                    width: area.width,
                    height: area.height,
                });
            }
        }
        Ok(Scenario { area, clients, router_count, coverage_radius, seed })
    }

    pub fn area(&self) -> &AreaSpec {
        &self.area
    }

    pub fn clients(&self) -> &[Point] {
        &self.clients
    }

    /// Number of clients, `n`.
    pub fn client_count(&self) -> usize {
        self.clients.len()
    }

    /// Number of routers a placement must contain, `m`.
    pub fn router_count(&self) -> usize {
        self.router_count
    }

    /// Coverage radius in meters. Routers link within twice this distance.
    pub fn coverage_radius(&self) -> f64 {
        self.coverage_radius
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Generates a scenario with `n` clients drawn i.i.d. uniformly over `area`.
///
/// Pure function of its arguments: the same `(n, m, cr, area, seed)` yields a
/// bit-identical client list.
pub fn generate_scenario(n: usize, m: usize, cr: f64, area: AreaSpec, seed: u64) -> Result<Scenario> {
    if n == 0 {
        return Err(Error::InvalidDimension("client count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clients: Vec<Point> = (0..n)
        .map(|_| {
            let x = rng.random_range(0.0..=area.width);
            let y = rng.random_range(0.0..=area.height);
            Point::new(x, y)
        })
        .collect();
    Scenario::new(area, clients, m, cr, seed)
}

/// On-disk representation; flat field layout with a version tag.
#[derive(Serialize, Deserialize)]
struct ScenarioFile {
    version: u32,
    width: f64,
    height: f64,
    router_count: usize,
    coverage_radius: f64,
    seed: u64,
    clients: Vec<[f64; 2]>,
}

impl ScenarioFile {
    fn from_scenario(s: &Scenario) -> Self {
        ScenarioFile {
            version: SCENARIO_FORMAT_VERSION,
            width: s.area.width,
            height: s.area.height,
            router_count: s.router_count,
            coverage_radius: s.coverage_radius,
            seed: s.seed,
            clients: s.clients.iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    fn into_scenario(self) -> Result<Scenario> {
        if self.version != SCENARIO_FORMAT_VERSION {
            return Err(Error::malformed(
                "version",
                format!("unsupported version {}, expected {SCENARIO_FORMAT_VERSION}", self.version),
            ));
        }
        let area = AreaSpec::new(self.width, self.height)
            .map_err(|e| Error::malformed("width/height", e.to_string()))?;
        if self.router_count == 0 {
            return Err(Error::malformed("router_count", "must be at least 1"));
        }
        if !(self.coverage_radius > 0.0) || !self.coverage_radius.is_finite() {
            return Err(Error::malformed("coverage_radius", "must be positive"));
        }
        if self.clients.is_empty() {
            return Err(Error::malformed("clients", "must be non-empty"));
        }
        for (i, c) in self.clients.iter().enumerate() {
            let p = Point::new(c[0], c[1]);
            if !p.x.is_finite() || !p.y.is_finite() || !area.contains(&p) {
                return Err(Error::malformed(
                    format!("clients[{i}]"),
                    format!("point ({}, {}) outside area {} x {}", p.x, p.y, area.width, area.height),
                ));
            }
        }
        Scenario::new(
            area,
            self.clients.into_iter().map(|c| Point::new(c[0], c[1])).collect(),
            self.router_count,
            self.coverage_radius,
            self.seed,
        )
    }
}

// Scenario serde goes through the flat file layout, so embedded scenarios
// (e.g. inside run reports) match the standalone file format and are
// re-validated on the way in.
impl Serialize for Scenario {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ScenarioFile::from_scenario(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Scenario {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let file = ScenarioFile::deserialize(de)?;
        file.into_scenario().map_err(serde::de::Error::custom)
    }
}

/// Serializes a scenario to its JSON text form.
pub fn scenario_to_string(s: &Scenario) -> String {
    let mut out = serde_json::to_string_pretty(&ScenarioFile::from_scenario(s))
        .expect("scenario serialization cannot fail");
    out.push('\n');
    out
}

/// Parses a scenario from JSON text, checking every field invariant.
pub fn scenario_from_str(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text)
        .map_err(|e| Error::malformed("<document>", e.to_string()))?;
    file.into_scenario()
}

pub fn save_scenario(s: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, scenario_to_string(s))?;
    Ok(())
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    scenario_from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn area(w: f64, h: f64) -> AreaSpec {
        AreaSpec::new(w, h).unwrap()
    }

    #[test]
    fn default_instance_has_n_clients_in_bounds() {
        let s = generate_scenario(100, 20, 200.0, area(2000.0, 2000.0), 42).unwrap();
        assert_eq!(s.client_count(), 100);
        assert_eq!(s.router_count(), 20);
        assert!(s.clients().iter().all(|p| s.area().contains(p)));
    }

    #[test]
    fn minimal_instance() {
        let s = generate_scenario(1, 1, 50.0, area(1.0, 1.0), 0).unwrap();
        assert_eq!(s.client_count(), 1);
        let p = s.clients()[0];
        assert!((0.0..=1.0).contains(&p.x) && (0.0..=1.0).contains(&p.y));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_scenario(64, 4, 100.0, area(500.0, 300.0), 7).unwrap();
        let b = generate_scenario(64, 4, 100.0, area(500.0, 300.0), 7).unwrap();
        assert_eq!(scenario_to_string(&a), scenario_to_string(&b));
        let c = generate_scenario(64, 4, 100.0, area(500.0, 300.0), 8).unwrap();
        assert_ne!(a.clients(), c.clients());
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(generate_scenario(0, 5, 100.0, area(10.0, 10.0), 1).is_err());
        assert!(generate_scenario(5, 0, 100.0, area(10.0, 10.0), 1).is_err());
        assert!(generate_scenario(5, 5, 0.0, area(10.0, 10.0), 1).is_err());
        assert!(generate_scenario(5, 5, -3.0, area(10.0, 10.0), 1).is_err());
        assert!(AreaSpec::new(0.0, 10.0).is_err());
        assert!(AreaSpec::new(10.0, f64::NAN).is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let s = generate_scenario(50, 5, 100.0, area(2000.0, 2000.0), 1).unwrap();
        let restored = scenario_from_str(&scenario_to_string(&s)).unwrap();
        assert_eq!(s, restored);
    }

    #[test]
    fn file_round_trip_through_disk() {
        let s = generate_scenario(17, 3, 75.5, area(123.25, 456.5), 99).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.scn");
        save_scenario(&s, &path).unwrap();
        assert_eq!(load_scenario(&path).unwrap(), s);
    }

    #[test]
    fn load_rejects_client_outside_area() {
        let text = r#"{
            "version": 1, "width": 10.0, "height": 10.0,
            "router_count": 2, "coverage_radius": 3.0, "seed": 0,
            "clients": [[1.0, 1.0], [11.0, 5.0]]
        }"#;
        let err = scenario_from_str(text).unwrap_err();
        match err {
            Error::MalformedFile { field, .. } => assert_eq!(field, "clients[1]"),
            other => panic!("expected malformed-file error, got {other:?}"),
        }
    }

    #[test]
    fn load_rejects_truncated_file() {
        let s = generate_scenario(5, 2, 10.0, area(100.0, 100.0), 3).unwrap();
        let text = scenario_to_string(&s);
        let truncated = &text[..text.len() / 2];
        assert!(matches!(scenario_from_str(truncated), Err(Error::MalformedFile { .. })));
    }

    #[test]
    fn load_rejects_wrong_version() {
        let text = r#"{
            "version": 2, "width": 10.0, "height": 10.0,
            "router_count": 1, "coverage_radius": 3.0, "seed": 0,
            "clients": [[1.0, 1.0]]
        }"#;
        match scenario_from_str(text).unwrap_err() {
            Error::MalformedFile { field, .. } => assert_eq!(field, "version"),
            other => panic!("expected malformed-file error, got {other:?}"),
        }
    }

    // Chi-square style sanity band: quadrant shares of a large uniform batch.
    #[test]
    fn uniformity_quadrant_band() {
        let s = generate_scenario(10_000, 1, 0.1, area(1.0, 1.0), 123).unwrap();
        let mut quads = [0usize; 4];
        for p in s.clients() {
            let qx = usize::from(p.x >= 0.5);
            let qy = usize::from(p.y >= 0.5);
            quads[qy * 2 + qx] += 1;
        }
        for &q in &quads {
            assert!((2200..=2800).contains(&q), "quadrant count {q} outside [2200, 2800]");
        }
    }
}

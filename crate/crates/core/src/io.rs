//! Result directories: population series, PGM frames, geometry JSON, the
//! run manifest, and comparison of a finished run against an oracle.
//!
//! Layout of one result directory:
//!
//! ```text
//! manifest.json      seed, resolved scenario, status
//! population.csv     step,population
//! trail/frame_0000100.pgm
//! occupancy/frame_0000100.pgm
//! particles.json     occupied cells at the end
//! blob.pgm           solid blob derived from the final occupancy
//! hull.json  mst.json  metrics.json
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{
    alpha_shape_reference, convex_hull, euclidean_mst, extract_concave_hull, hausdorff,
    shape_metrics, Point, PointSet, Polygon, Raster,
};
use crate::lattice::encode_pgm;
use crate::population::World;
use crate::scenario::{run_scenario_observed, Scenario, ScenarioResult};

pub fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_file(path)?).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: format!("{}: {e}", path.display()),
    })
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

/// `step,population` with one row per entry, starting at step 0.
pub fn population_csv(series: &[usize]) -> String {
    let mut out = String::from("step,population\n");
    for (step, n) in series.iter().enumerate() {
        writeln!(out, "{step},{n}").unwrap();
    }
    out
}

pub fn frame_name(step: u64) -> String {
    format!("frame_{step:07}.pgm")
}

/// Raster as P5, top row (largest `y`) first.
pub fn raster_pgm(r: &Raster) -> Vec<u8> {
    let mut px = Vec::with_capacity(r.width * r.height);
    for y in (0..r.height).rev() {
        for x in 0..r.width {
            px.push(if r.get(x as i64, y as i64) { 255 } else { 0 });
        }
    }
    encode_pgm(r.width, r.height, &px)
}

/// Writes trail and occupancy frames every `every` steps (step 0 included).
pub struct FrameWriter {
    dir: PathBuf,
    every: u64,
    gain: f64,
    error: Option<Error>,
}

impl FrameWriter {
    pub fn new(dir: &Path, every: u64, gain: f64) -> Self {
        Self {
            dir: dir.to_path_buf(),
            every: every.max(1),
            gain,
            error: None,
        }
    }

    pub fn observe(&mut self, world: &World) {
        if self.error.is_some() || world.step_count() % self.every != 0 {
            return;
        }
        let name = frame_name(world.step_count());
        let r = write_file(&self.dir.join("trail").join(&name), world.trail().to_pgm(self.gain))
            .and_then(|_| write_file(&self.dir.join("occupancy").join(&name), world.occupancy().to_pgm()));
        if let Err(e) = r {
            self.error = Some(e);
        }
    }

    /// First write failure, if any.
    pub fn finish(self) -> Result<()> {
        self.error.map_or(Ok(()), Err)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub scenario: Value,
    pub seed: u64,
    pub steps_requested: u64,
    pub steps_run: u64,
    #[serde(default)]
    pub frames_every: Option<u64>,
    #[serde(default)]
    pub overrides: Vec<(String, String)>,
    #[serde(default)]
    pub converged_at: Option<u64>,
    /// `running`, `complete`, `partial` or `failed`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullRecord {
    pub nodes: Vec<Point>,
    pub node_active: Vec<bool>,
    pub oracle_convex_hull: Option<Vec<Point>>,
    pub cloud_convex_hull: Option<Vec<Point>>,
    pub concave_hull: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concave_hull_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub seed: u64,
    pub steps_run: u64,
    pub converged_at: Option<u64>,
    pub initial_population: usize,
    pub final_population: usize,
    pub area: Option<usize>,
    pub perimeter: Option<usize>,
    pub concavity: Option<f64>,
}

impl MetricsRecord {
    pub fn from_result(r: &ScenarioResult) -> Self {
        Self {
            seed: r.seed,
            steps_run: r.steps_run,
            converged_at: r.converged_at,
            initial_population: r.population[0],
            final_population: *r.population.last().unwrap(),
            area: r.metrics.map(|m| m.area),
            perimeter: r.metrics.map(|m| m.perimeter),
            concavity: r.metrics.map(|m| m.concavity),
        }
    }
}

/// Writes every end-of-run artefact for `r` into `dir`.
pub fn write_result(dir: &Path, r: &ScenarioResult) -> Result<()> {
    write_file(&dir.join("population.csv"), population_csv(&r.population))?;
    write_file(&dir.join("particles.json"), pretty(&r.particles.points))?;
    write_file(&dir.join("blob.pgm"), raster_pgm(&r.blob))?;
    let hull = HullRecord {
        nodes: r.nodes.points.clone(),
        node_active: r.node_active.clone(),
        oracle_convex_hull: r.oracle_hull.as_ref().map(|p| p.vertices.clone()),
        cloud_convex_hull: r.cloud_hull.as_ref().map(|p| p.vertices.clone()),
        concave_hull: r.concave_hull.as_ref().map(|p| p.vertices.clone()),
        concave_hull_error: r.concave_hull_error.clone(),
    };
    write_file(&dir.join("hull.json"), pretty(&hull))?;
    let mst = match &r.mst {
        Some(m) => json!({
            "points": m.points,
            "edges": m.edges,
            "total_length": m.total_length(),
        }),
        None => Value::Null,
    };
    write_file(&dir.join("mst.json"), pretty(&mst))?;
    write_file(&dir.join("metrics.json"), pretty(&MetricsRecord::from_result(r)))
}

/// Runs one scenario into `dir`: manifest first (status `running`), then
/// frames during the run, then the end-of-run artefacts, then the final
/// status.
pub fn run_to_dir(
    s: &Scenario,
    seed: u64,
    dir: &Path,
    overrides: &[(String, String)],
) -> Result<ScenarioResult> {
    let mut manifest = Manifest {
        scenario: s.to_value(),
        seed,
        steps_requested: s.run.steps,
        steps_run: 0,
        frames_every: s.output.frames_every,
        overrides: overrides.to_vec(),
        converged_at: None,
        status: "running".into(),
        error: None,
    };
    let manifest_path = dir.join("manifest.json");
    write_file(&manifest_path, pretty(&manifest))?;

    let mut frames = s
        .output
        .frames_every
        .map(|k| FrameWriter::new(dir, k, s.output.display_gain));
    let outcome = run_scenario_observed(s, seed, &mut |w| {
        if let Some(f) = frames.as_mut() {
            f.observe(w);
        }
    });
    let outcome = outcome.and_then(|r| {
        manifest.steps_run = r.steps_run;
        manifest.converged_at = r.converged_at;
        frames.map_or(Ok(()), FrameWriter::finish)?;
        write_result(dir, &r)?;
        Ok(r)
    });
    match &outcome {
        Ok(_) => manifest.status = "complete".into(),
        Err(e) => {
            manifest.status = if manifest.steps_run > 0 { "partial" } else { "failed" }.into();
            manifest.error = Some(e.to_string());
        }
    }
    write_file(&manifest_path, pretty(&manifest))?;
    outcome
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    read_json(&dir.join("manifest.json"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Convex,
    Mst,
    Alpha,
}

impl std::str::FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(OracleKind::Convex),
            "mst" => Ok(OracleKind::Mst),
            "alpha" => Ok(OracleKind::Alpha),
            other => Err(Error::param("oracle", format!("`{other}` is not convex, mst or alpha"))),
        }
    }
}

/// Emergent shape of a run measured against a classical construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub oracle: OracleKind,
    /// Between emergent and oracle vertex sets.
    pub hausdorff: f64,
    /// Fraction of nodes inside or within `tolerance` of the emergent shape.
    pub node_coverage: f64,
    pub tolerance: f64,
    pub concavity: Option<f64>,
    pub emergent_vertices: Vec<Point>,
    pub oracle_vertices: Vec<Point>,
}

impl CompareReport {
    pub fn summary(&self) -> String {
        format!(
            "oracle {:?}: hausdorff {:.3}, node coverage {:.3} (tolerance {}), concavity {}, {} emergent / {} oracle vertices",
            self.oracle,
            self.hausdorff,
            self.node_coverage,
            self.tolerance,
            self.concavity.map_or("n/a".into(), |c| format!("{c:.4}")),
            self.emergent_vertices.len(),
            self.oracle_vertices.len(),
        )
    }
}

/// Compares particles and blob against nodes.
///
/// * `convex`: cloud convex hull vs. the nodes' convex hull.
/// * `mst`: nodes on the blob periphery vs. all MST vertices; coverage
///   counts nodes inside the blob.
/// * `alpha`: nodes on the blob periphery vs. vertices of the reference
///   alpha-shape at `alpha_radius`.
pub fn compare(
    particles: &PointSet,
    blob: &Raster,
    nodes: &PointSet,
    oracle: OracleKind,
    tolerance: f64,
    alpha_radius: Option<f64>,
) -> Result<CompareReport> {
    let concavity = shape_metrics(blob).ok().map(|m| m.concavity);
    let (emergent, oracle_vertices, coverage) = match oracle {
        OracleKind::Convex => {
            let cloud = convex_hull(particles)?;
            let oracle_hull = convex_hull(nodes)?;
            let covered = nodes
                .points
                .iter()
                .filter(|&&p| cloud.contains(p, 1e-9) || cloud.boundary_distance(p) <= tolerance)
                .count();
            (cloud.vertices, oracle_hull.vertices, covered)
        }
        OracleKind::Mst | OracleKind::Alpha => {
            let hull = extract_concave_hull(blob, nodes, tolerance)?;
            let oracle_vertices = if oracle == OracleKind::Mst {
                euclidean_mst(nodes)?.points
            } else {
                let radius = alpha_radius.unwrap_or_else(|| nodes.diameter());
                let shape = alpha_shape_reference(nodes, radius);
                let mut used: Vec<usize> = shape.edges.iter().flat_map(|&(i, j)| [i, j]).collect();
                used.sort_unstable();
                used.dedup();
                used.into_iter().map(|i| shape.points[i]).collect()
            };
            let covered = nodes.points.iter().filter(|&&p| near_blob(blob, p, tolerance)).count();
            (hull.vertices, oracle_vertices, covered)
        }
    };
    if oracle_vertices.is_empty() {
        return Err(Error::Mismatch("oracle produced no vertices".into()));
    }
    let hausdorff = hausdorff(
        &PointSet {
            points: emergent.clone(),
        },
        &PointSet {
            points: oracle_vertices.clone(),
        },
    )?;
    Ok(CompareReport {
        oracle,
        hausdorff,
        node_coverage: coverage as f64 / nodes.len().max(1) as f64,
        tolerance,
        concavity,
        emergent_vertices: emergent,
        oracle_vertices,
    })
}

fn near_blob(blob: &Raster, p: Point, tolerance: f64) -> bool {
    let r = tolerance.ceil() as i64;
    let (cx, cy) = (p.x.round() as i64, p.y.round() as i64);
    (-r..=r).any(|dy| {
        (-r..=r).any(|dx| {
            ((dx * dx + dy * dy) as f64).sqrt() <= tolerance && blob.get(cx + dx, cy + dy)
        })
    })
}

/// Parses a P5 PGM into a raster (non-zero pixels set).
pub fn parse_pgm_mask(bytes: &[u8]) -> Result<Raster> {
    let bad = |m: &str| Error::Parse {
        line: 1,
        column: 1,
        message: format!("PGM: {m}"),
    };
    let mut fields = Vec::new();
    let mut i = 0;
    while fields.len() < 4 {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if start == i {
            return Err(bad("truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..i]).map_err(|_| bad("header not ASCII"))?);
    }
    if fields[0] != "P5" {
        return Err(bad("not a P5 file"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad header number"));
    let (w, h) = (num(fields[1])?, num(fields[2])?);
    let px = &bytes[i + 1..];
    if px.len() != w * h {
        return Err(bad("pixel count does not match header"));
    }
    let mut r = Raster::new(w, h);
    for (k, &v) in px.iter().enumerate() {
        if v != 0 {
            r.set(k % w, h - 1 - k / w, true);
        }
    }
    Ok(r)
}

/// Loads a result directory and compares it against `oracle`.
pub fn compare_dir(
    dir: &Path,
    oracle: OracleKind,
    tolerance: f64,
    alpha_radius: Option<f64>,
) -> Result<CompareReport> {
    let points: Vec<Point> = read_json(&dir.join("particles.json"))?;
    let hull: HullRecord = read_json(&dir.join("hull.json"))?;
    let blob_path = dir.join("blob.pgm");
    let blob = parse_pgm_mask(&fs::read(&blob_path).map_err(|e| Error::io(&blob_path, e))?)?;
    compare(
        &PointSet { points },
        &blob,
        &PointSet { points: hull.nodes },
        oracle,
        tolerance,
        alpha_radius,
    )
}

/// Polygon vertices as a closed JSON ring, for external plotting.
pub fn polygon_json(p: &Polygon) -> Value {
    let mut v: Vec<Point> = p.vertices.clone();
    if let Some(&first) = v.first() {
        v.push(first);
    }
    json!(v)
}

//! Named experiment presets, the JSON scenario format, and the runner.
//!
//! A scenario file is a JSON object whose model parameters sit at the top
//! level under their symbol names (`p`, `SA`, `RA`, `SO` or
//! `SO_min`/`SO_max`, `Dep_t`, `D_w`, `D_d`, `proj_a`, `proj_r`, `L_w`,
//! `L_d`, `G_f`, `G_w`, `G_min`, `G_max`, `S_f`, `S_w`, `S_min`, `S_max`),
//! next to `layout`, `illumination`, `inoculation`, `run`, `model` and
//! `output` blocks. A `"preset"` key starts from a named preset and applies
//! the remaining keys on top.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::geometry::{
    blob_mask, convex_hull, euclidean_mst, extract_concave_hull, shape_metrics, EdgeList, Point,
    PointSet, Polygon, Raster, ShapeMetrics,
};
use crate::lattice::{Activation, ContactBehaviour, DampingMode, IlluminationMask, Polarity, StimulusNode};
use crate::params::{IlluminationParams, ModelParams, ParamRecord, WindowTest, PARAM_KEYS};
use crate::population::{InoculationPattern, NeighbourCount, World};
use crate::pointsets;
use crate::agent::SensorOffset;

/// Stimulus points: a built-in name or explicit coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSource {
    Named(String),
    Explicit(Vec<Point>),
}

impl PointSource {
    pub fn resolve(&self) -> Result<PointSet> {
        match self {
            PointSource::Named(n) => pointsets::builtin(n),
            PointSource::Explicit(v) => Ok(PointSet::new(v.iter().copied())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeLayout {
    pub points: PointSource,
    pub polarity: Polarity,
    pub activation: Activation,
    pub contact: ContactBehaviour,
    pub contact_radius: f64,
}

/// Illuminated region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum IlluminationLayout {
    /// Every cell farther than `radius` from all nodes is lit.
    OutsideNodes { radius: f64 },
}

/// Inoculation expressed relative to the node layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Inoculation {
    /// Disc around node `node`.
    SingleSite { node: usize, radius: f64 },
    /// Annulus around the node centroid, `margin` cells outside the
    /// farthest node.
    Ring { margin: f64, thickness: f64 },
    RandomEverywhere,
    AtNodes { radius: f64 },
    /// Solid fill of the nodes' convex hull.
    ConvexHullFill,
    /// Band along the nodes' Euclidean MST.
    MstEdges { thickness: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSettings {
    pub steps: u64,
    /// Stop once population and cloud-hull area have settled.
    #[serde(default)]
    pub early_stop: bool,
    /// `(step, G_max)` changes applied before the given step.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gmax_schedule: Vec<(u64, usize)>,
}

/// Modelling conventions not covered by the parameter table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelOptions {
    #[serde(default)]
    pub illumination_damping: DampingMode,
    #[serde(default)]
    pub neighbour_count: NeighbourCount,
    /// Whether growth may spawn onto illuminated cells.
    #[serde(default = "yes")]
    pub spawn_in_light: bool,
}

fn yes() -> bool {
    true
}

impl Default for ModelOptions {
    fn default() -> Self {
        Self {
            illumination_damping: DampingMode::default(),
            neighbour_count: NeighbourCount::default(),
            spawn_in_light: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSettings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frames_every: Option<u64>,
    #[serde(default = "default_gain")]
    pub display_gain: f64,
    /// Closing radius used to turn the particle raster into a solid blob.
    #[serde(default = "default_closing")]
    pub blob_closing: usize,
    #[serde(default = "default_tolerance")]
    pub hull_tolerance: f64,
}

fn default_gain() -> f64 {
    10.0
}

fn default_closing() -> usize {
    2
}

fn default_tolerance() -> f64 {
    3.0
}

impl Default for OutputSettings {
    fn default() -> Self {
        Self {
            frames_every: None,
            display_gain: default_gain(),
            blob_closing: default_closing(),
            hull_tolerance: default_tolerance(),
        }
    }
}

/// `G_max` values swept by one preset, each with its own step budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GmaxSweep {
    pub values: Vec<usize>,
    pub steps: Vec<u64>,
}

/// A complete, validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub width: usize,
    pub height: usize,
    pub params: ModelParams,
    pub layout: NodeLayout,
    pub illumination: Option<IlluminationLayout>,
    pub inoculation: Inoculation,
    pub growth: bool,
    pub shrinkage: bool,
    pub run: RunSettings,
    pub model: ModelOptions,
    pub output: OutputSettings,
    pub sweep: Option<GmaxSweep>,
}

/// Serialised shape of everything except the parameter keys.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioBody {
    name: String,
    width: usize,
    height: usize,
    layout: NodeLayout,
    #[serde(default)]
    illumination: Option<IlluminationLayout>,
    inoculation: Inoculation,
    growth: bool,
    shrinkage: bool,
    run: RunSettings,
    #[serde(default)]
    model: ModelOptions,
    #[serde(default)]
    output: OutputSettings,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<GmaxSweep>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn semantic(e: serde_json::Error) -> Error {
    // serde errors from `from_value` carry no position
    Error::Mismatch(e.to_string())
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.width == 0 || self.height == 0 {
            return Err(Error::param("width", "lattice must be non-empty"));
        }
        if self.growth && self.params.growth.is_none() {
            return Err(Error::Mismatch("growth requested but G_* parameters are absent".into()));
        }
        if self.shrinkage && self.params.shrinkage.is_none() {
            return Err(Error::Mismatch(
                "shrinkage requested but S_* parameters are absent".into(),
            ));
        }
        if self.illumination.is_some() && self.params.illumination.is_none() {
            return Err(Error::Mismatch(
                "illumination layout given but L_w/L_d are absent".into(),
            ));
        }
        match self.layout.polarity {
            Polarity::Attractant if self.params.attractant.is_none() => {
                return Err(Error::Mismatch("attractant nodes need proj_a".into()))
            }
            Polarity::Repellent if self.params.repellent.is_none() => {
                return Err(Error::Mismatch("repellent nodes need proj_r".into()))
            }
            _ => {}
        }
        let nodes = self.layout.points.resolve()?;
        if let Inoculation::SingleSite { node, .. } = self.inoculation {
            if node >= nodes.len() {
                return Err(Error::param("inoculation", format!("no node {node}")));
            }
        }
        if let Some(sw) = &self.sweep {
            if sw.values.len() != sw.steps.len() || sw.values.is_empty() {
                return Err(Error::param("sweep", "values and steps must be non-empty and equal length"));
            }
            if !self.growth {
                return Err(Error::Mismatch("G_max sweep needs growth enabled".into()));
            }
        }
        for &(_, g) in &self.run.gmax_schedule {
            if let Some(gp) = &self.params.growth {
                if g < gp.min {
                    return Err(Error::param("G_max", "scheduled value below G_min"));
                }
            } else {
                return Err(Error::Mismatch("G_max schedule needs growth parameters".into()));
            }
        }
        self.build_nodes(&nodes)?;
        Ok(())
    }

    /// JSON form with parameter keys at the top level.
    pub fn to_value(&self) -> Value {
        let body = ScenarioBody {
            name: self.name.clone(),
            width: self.width,
            height: self.height,
            layout: self.layout.clone(),
            illumination: self.illumination.clone(),
            inoculation: self.inoculation.clone(),
            growth: self.growth,
            shrinkage: self.shrinkage,
            run: self.run.clone(),
            model: self.model.clone(),
            output: self.output.clone(),
            sweep: self.sweep.clone(),
        };
        let mut map = Map::new();
        if let Value::Object(p) = serde_json::to_value(self.params.to_record()).expect("serialisable") {
            map.extend(p);
        }
        if let Value::Object(b) = serde_json::to_value(body).expect("serialisable") {
            map.extend(b);
        }
        Value::Object(map)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("serialisable")
    }

    /// Parses scenario JSON; see the module docs for the layout.
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(parse_err)?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        let Value::Object(mut obj) = value else {
            return Err(Error::Mismatch("scenario must be a JSON object".into()));
        };
        if let Some(preset) = obj.remove("preset") {
            let name = preset
                .as_str()
                .ok_or_else(|| Error::param("preset", "must be a string"))?;
            let Value::Object(mut base) = find_preset(name)?.to_value() else {
                unreachable!()
            };
            for (k, v) in obj {
                base.insert(k, v);
            }
            obj = base;
        }
        let mut params = Map::new();
        for key in PARAM_KEYS {
            if let Some(v) = obj.remove(key) {
                // `"-"` or null marks an unused parameter
                if !(v.is_null() || v.as_str() == Some("-")) {
                    params.insert(key.to_string(), v);
                }
            }
        }
        let record: ParamRecord = serde_json::from_value(Value::Object(params)).map_err(semantic)?;
        let params = ModelParams::try_from(record)?;
        let body: ScenarioBody = match serde_json::from_value(Value::Object(obj)) {
            Ok(b) => b,
            Err(e) => {
                let msg = e.to_string();
                if let Some(key) = msg.strip_prefix("unknown field `").and_then(|r| r.split('`').next()) {
                    return Err(Error::UnknownKey(key.to_string()));
                }
                return Err(semantic(e));
            }
        };
        let s = Scenario {
            name: body.name,
            width: body.width,
            height: body.height,
            params,
            layout: body.layout,
            illumination: body.illumination,
            inoculation: body.inoculation,
            growth: body.growth,
            shrinkage: body.shrinkage,
            run: body.run,
            model: body.model,
            output: body.output,
            sweep: body.sweep,
        };
        s.validate()?;
        Ok(s)
    }

    /// Applies `key=value` parameter overrides. Keys must be parameter
    /// symbols; values are JSON literals.
    pub fn with_overrides(&self, overrides: &[(String, String)]) -> Result<Self> {
        let Value::Object(mut obj) = self.to_value() else { unreachable!() };
        for (k, v) in overrides {
            if !PARAM_KEYS.contains(&k.as_str()) {
                return Err(Error::UnknownKey(k.clone()));
            }
            let value: Value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.clone()));
            if k == "SO" {
                obj.remove("SO_min");
                obj.remove("SO_max");
            } else if k == "SO_min" || k == "SO_max" {
                obj.remove("SO");
            }
            obj.insert(k.clone(), value);
        }
        Self::from_value(Value::Object(obj))
    }

    /// One scenario per swept `G_max` value, or just `self`.
    pub fn expand_sweep(&self) -> Vec<Scenario> {
        let Some(sw) = &self.sweep else {
            return vec![self.clone()];
        };
        sw.values
            .iter()
            .zip(&sw.steps)
            .map(|(&g, &steps)| {
                let mut s = self.clone();
                s.sweep = None;
                s.name = format!("{}-gmax{g}", self.name);
                if let Some(gp) = s.params.growth.as_mut() {
                    gp.max = g;
                }
                s.run.steps = steps;
                s
            })
            .collect()
    }

    pub fn node_points(&self) -> Result<PointSet> {
        self.layout.points.resolve()
    }

    fn build_nodes(&self, points: &PointSet) -> Result<Vec<StimulusNode>> {
        let projection = match self.layout.polarity {
            Polarity::Attractant => self.params.attractant,
            Polarity::Repellent => self.params.repellent,
        }
        .unwrap_or(0.0);
        points
            .points
            .iter()
            .map(|p| {
                StimulusNode::new(
                    p.x.round() as i64,
                    p.y.round() as i64,
                    self.width,
                    self.height,
                    self.layout.polarity,
                    projection,
                    self.layout.activation,
                    self.layout.contact,
                    self.layout.contact_radius,
                )
            })
            .collect()
    }

    fn build_illumination(&self, points: &PointSet) -> Result<Option<IlluminationMask>> {
        let (Some(layout), Some(IlluminationParams { window, damping })) =
            (&self.illumination, self.params.illumination)
        else {
            return Ok(None);
        };
        let IlluminationLayout::OutsideNodes { radius } = *layout;
        let lit = (0..self.height)
            .flat_map(|y| (0..self.width).map(move |x| (x, y)))
            .map(|(x, y)| {
                let c = Point::new(x as f64, y as f64);
                !points.points.iter().any(|p| p.dist(&c) <= radius)
            })
            .collect();
        IlluminationMask::new(
            self.width,
            self.height,
            lit,
            window,
            damping,
            self.model.illumination_damping,
        )
        .map(Some)
    }

    fn pattern(&self, points: &PointSet) -> Result<InoculationPattern> {
        Ok(match &self.inoculation {
            Inoculation::SingleSite { node, radius } => {
                let p = points.points[*node];
                InoculationPattern::SingleSite {
                    x: p.x,
                    y: p.y,
                    radius: *radius,
                }
            }
            Inoculation::Ring { margin, thickness } => {
                let n = points.len() as f64;
                let cx = points.points.iter().map(|p| p.x).sum::<f64>() / n;
                let cy = points.points.iter().map(|p| p.y).sum::<f64>() / n;
                let c = Point::new(cx, cy);
                let reach = points.points.iter().map(|p| p.dist(&c)).fold(0.0, f64::max);
                InoculationPattern::Ring {
                    cx,
                    cy,
                    radius: reach + margin + thickness / 2.0,
                    thickness: *thickness,
                }
            }
            Inoculation::RandomEverywhere => InoculationPattern::RandomEverywhere,
            Inoculation::AtNodes { radius } => InoculationPattern::AtNodes { radius: *radius },
            Inoculation::ConvexHullFill => InoculationPattern::SolidRegion {
                polygon: convex_hull(points)?.vertices,
            },
            Inoculation::MstEdges { thickness } => InoculationPattern::OnEdges {
                segments: euclidean_mst(points)?.segments().collect(),
                thickness: *thickness,
            },
        })
    }

    /// World with nodes, mask and inoculated population, before step 0.
    pub fn build_world(&self, seed: u64) -> Result<World> {
        self.validate()?;
        let points = self.node_points()?;
        let mut params = self.params.clone();
        if !self.growth {
            params.growth = None;
        }
        if !self.shrinkage {
            params.shrinkage = None;
        }
        let mut world = World::new(
            self.width,
            self.height,
            params,
            self.build_nodes(&points)?,
            self.build_illumination(&points)?,
            seed,
        )?
        .with_neighbour_count(self.model.neighbour_count)
        .with_spawn_in_light(self.model.spawn_in_light);
        let pattern = self.pattern(&points)?;
        world.inoculate(&pattern, self.params.population)?;
        Ok(world)
    }
}

/// Everything measured at the end of a run.
#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub name: String,
    pub seed: u64,
    pub steps_run: u64,
    /// Population before step 0 and after every step.
    pub population: Vec<usize>,
    pub converged_at: Option<u64>,
    /// Occupied cells.
    pub particles: PointSet,
    pub occupancy: Raster,
    /// Solid blob derived from the occupancy raster.
    pub blob: Raster,
    pub nodes: PointSet,
    /// Node activity at the end (on-touch nodes that were contacted).
    pub node_active: Vec<bool>,
    pub cloud_hull: Option<Polygon>,
    pub oracle_hull: Option<Polygon>,
    pub mst: Option<EdgeList>,
    pub concave_hull: Option<Polygon>,
    pub concave_hull_error: Option<String>,
    pub metrics: Option<ShapeMetrics>,
}

/// Convex hull of the occupied cells (row extremes suffice).
pub fn cloud_hull(world: &World) -> Option<Polygon> {
    let occ = world.occupancy();
    let mut pts = Vec::new();
    for y in 0..occ.height() {
        let mut lo = None;
        let mut hi = None;
        for x in 0..occ.width() {
            if !occ.is_empty(x, y) {
                lo.get_or_insert(x);
                hi = Some(x);
            }
        }
        if let (Some(lo), Some(hi)) = (lo, hi) {
            pts.push(Point::new(lo as f64, y as f64));
            pts.push(Point::new(hi as f64, y as f64));
        }
    }
    convex_hull(&PointSet::new(pts)).ok()
}

/// Relative change `|b - a| / a` below `tol` (zero baseline needs `b == 0`).
pub fn settled(a: f64, b: f64, tol: f64) -> bool {
    if a == 0.0 {
        b == 0.0
    } else {
        ((b - a) / a).abs() < tol
    }
}

/// Runs a scenario to its step budget (or convergence when early stopping
/// is on), calling `observe` on the world after inoculation and after
/// every step.
pub fn run_scenario_observed(
    s: &Scenario,
    seed: u64,
    observe: &mut dyn FnMut(&World),
) -> Result<ScenarioResult> {
    let mut world = s.build_world(seed)?;
    let mut population = vec![world.population()];
    observe(&world);

    let mut schedule = s.run.gmax_schedule.clone();
    schedule.sort();
    let mut next_change = 0;
    // (step, population, cloud hull area) every 100 steps
    let mut checkpoints: Vec<(u64, usize, f64)> = Vec::new();
    let mut converged_at = None;

    while world.step_count() < s.run.steps {
        while next_change < schedule.len() && schedule[next_change].0 <= world.step_count() {
            world.set_growth_max(schedule[next_change].1)?;
            next_change += 1;
        }
        world.step();
        population.push(world.population());
        observe(&world);

        let t = world.step_count();
        if s.run.early_stop && t % 100 == 0 {
            let area = cloud_hull(&world).map_or(0.0, |h| h.area());
            checkpoints.push((t, world.population(), area));
            if let Some(&(_, p0, a0)) = checkpoints.iter().rev().find(|c| c.0 + 1000 == t) {
                if settled(p0 as f64, world.population() as f64, 0.01) && settled(a0, area, 0.01) {
                    converged_at = Some(t);
                    break;
                }
            }
        }
    }
    Ok(finish(s, seed, &world, population, converged_at))
}

pub fn run_scenario(s: &Scenario, seed: u64) -> Result<ScenarioResult> {
    run_scenario_observed(s, seed, &mut |_| {})
}

fn finish(
    s: &Scenario,
    seed: u64,
    world: &World,
    population: Vec<usize>,
    converged_at: Option<u64>,
) -> ScenarioResult {
    let occ = world.occupancy();
    let occupancy = Raster::from_cells(occ.width(), occ.height(), occ.mask());
    let blob = blob_mask(&occupancy, s.output.blob_closing);
    let nodes = s.node_points().unwrap_or_default();
    let (concave_hull, concave_hull_error) =
        match extract_concave_hull(&blob, &nodes, s.output.hull_tolerance) {
            Ok(p) => (Some(p), None),
            Err(e) => (None, Some(e.to_string())),
        };
    ScenarioResult {
        name: s.name.clone(),
        seed,
        steps_run: world.step_count(),
        population,
        converged_at,
        particles: PointSet {
            points: occupancy.points().collect(),
        },
        metrics: shape_metrics(&blob).ok(),
        blob,
        occupancy,
        node_active: world.nodes().iter().map(|n| n.active).collect(),
        cloud_hull: cloud_hull(world),
        oracle_hull: convex_hull(&nodes).ok(),
        mst: euclidean_mst(&nodes).ok(),
        concave_hull,
        concave_hull_error,
        nodes,
    }
}

// ---------------------------------------------------------------------------
// Presets

fn window(frequency: u64, window: usize, min: usize, max: usize) -> Option<WindowTest> {
    Some(WindowTest {
        frequency,
        window,
        min,
        max,
    })
}

#[allow(clippy::too_many_arguments)]
fn params(
    p: usize,
    sa: f64,
    ra: f64,
    so: SensorOffset,
    dep: f64,
    d_w: usize,
    d_d: f64,
    proj_a: Option<f64>,
    proj_r: Option<f64>,
) -> ModelParams {
    ModelParams {
        population: p,
        sensor_angle: sa,
        rotation_angle: ra,
        sensor_offset: so,
        deposit: dep,
        diffusion_window: d_w,
        diffusion_damping: d_d,
        attractant: proj_a,
        repellent: proj_r,
        illumination: None,
        growth: None,
        shrinkage: None,
    }
}

fn layout(points: &str, polarity: Polarity, activation: Activation, contact: ContactBehaviour) -> NodeLayout {
    NodeLayout {
        points: PointSource::Named(points.to_string()),
        polarity,
        activation,
        contact,
        contact_radius: 3.0,
    }
}

fn run(steps: u64, early_stop: bool) -> RunSettings {
    RunSettings {
        steps,
        early_stop,
        gmax_schedule: Vec::new(),
    }
}

/// Presets count the particle itself in its growth/shrinkage window.
fn preset_model() -> ModelOptions {
    ModelOptions {
        neighbour_count: NeighbourCount::IncludeSelf,
        ..ModelOptions::default()
    }
}

fn h_preset(name: &str, masked: bool) -> Scenario {
    let mut p = params(10, 22.5, 45.0, SensorOffset::Fixed(5.0), 5.0, 5, 0.1, Some(12.75), None);
    p.illumination = Some(IlluminationParams {
        window: 3,
        damping: 0.9,
    });
    p.growth = window(3, 9, 0, 15);
    p.shrinkage = window(3, 5, 0, 24);
    Scenario {
        name: name.into(),
        width: 200,
        height: 200,
        params: p,
        layout: layout("letter-H", Polarity::Attractant, Activation::Always, ContactBehaviour::None),
        illumination: masked.then_some(IlluminationLayout::OutsideNodes { radius: 8.0 }),
        inoculation: Inoculation::SingleSite { node: 0, radius: 3.0 },
        growth: true,
        shrinkage: true,
        run: run(10_000, false),
        model: ModelOptions {
            spawn_in_light: false,
            ..preset_model()
        },
        output: OutputSettings::default(),
        sweep: None,
    }
}

fn band_preset(name: &str, p: ModelParams, polarity: Polarity, activation: Activation) -> Scenario {
    Scenario {
        name: name.into(),
        width: 200,
        height: 200,
        params: p,
        layout: layout("scatter-20", polarity, activation, ContactBehaviour::None),
        illumination: None,
        inoculation: Inoculation::Ring {
            margin: 5.0,
            thickness: 5.0,
        },
        growth: false,
        shrinkage: false,
        run: run(10_000, true),
        model: preset_model(),
        output: OutputSettings::default(),
        sweep: None,
    }
}

fn mst_preset(name: &str, points: &str, size: usize, steps: u64, early_stop: bool) -> Scenario {
    let mut p = params(1000, 90.0, 45.0, SensorOffset::Range(1, 19), 5.0, 3, 0.05, Some(5.0), None);
    p.growth = window(3, 9, 0, 20);
    p.shrinkage = window(10, 9, 0, 80);
    Scenario {
        name: name.into(),
        width: size,
        height: size,
        params: p,
        layout: layout(points, Polarity::Attractant, Activation::Always, ContactBehaviour::None),
        illumination: None,
        inoculation: Inoculation::MstEdges { thickness: 5.0 },
        growth: true,
        shrinkage: true,
        run: run(steps, early_stop),
        model: preset_model(),
        output: OutputSettings::default(),
        sweep: None,
    }
}

/// The ten named presets, one per experiment column.
pub fn preset_catalogue() -> Vec<Scenario> {
    let mut out = vec![h_preset("h-mask", true), h_preset("h-nomask", false)];

    out.push(band_preset(
        "hull-band-attract",
        params(800, 45.0, 45.0, SensorOffset::Fixed(5.0), 15.0, 3, 0.1, Some(127.0), None),
        Polarity::Attractant,
        Activation::OnTouch,
    ));
    out.push(band_preset(
        "hull-band-repel",
        params(1000, 60.0, 60.0, SensorOffset::Fixed(5.0), 15.0, 3, 0.1, None, Some(-127.0)),
        Polarity::Repellent,
        Activation::Always,
    ));

    let mut selforg = band_preset(
        "hull-self-organise",
        params(3000, 45.0, 45.0, SensorOffset::Fixed(9.0), 0.01, 3, 0.07, None, Some(-127.0)),
        Polarity::Repellent,
        Activation::Always,
    );
    selforg.layout.contact = ContactBehaviour::AnnihilateRespawn;
    selforg.inoculation = Inoculation::RandomEverywhere;
    selforg.run = run(20_000, false);
    out.push(selforg);

    let mut p = params(18_000, 60.0, 60.0, SensorOffset::Fixed(7.0), 5.0, 3, 0.05, Some(2.55), None);
    p.growth = window(3, 9, 0, 20);
    p.shrinkage = window(50, 9, 0, 80);
    out.push(Scenario {
        name: "concave-shrink".into(),
        width: 300,
        height: 300,
        params: p,
        layout: layout("letter-C", Polarity::Attractant, Activation::Always, ContactBehaviour::None),
        illumination: None,
        inoculation: Inoculation::ConvexHullFill,
        growth: true,
        shrinkage: true,
        run: run(10_000, true),
        model: preset_model(),
        output: OutputSettings::default(),
        sweep: None,
    });

    let mut p = params(1000, 60.0, 60.0, SensorOffset::Fixed(13.0), 5.0, 3, 0.1, Some(2.55), None);
    p.growth = window(5, 9, 0, 30);
    p.shrinkage = window(50, 9, 0, 80);
    out.push(Scenario {
        name: "alpha-growth".into(),
        width: 200,
        height: 200,
        params: p,
        layout: layout("letter-A", Polarity::Attractant, Activation::Always, ContactBehaviour::None),
        illumination: None,
        inoculation: Inoculation::AtNodes { radius: 3.0 },
        growth: true,
        shrinkage: true,
        run: run(10_000, true),
        model: preset_model(),
        output: OutputSettings::default(),
        sweep: None,
    });

    out.push(mst_preset("concave-mst", "china-cities", 300, 10_000, true));
    out.push(mst_preset("square-mst", "square-4", 200, 5000, false));

    let mut sweep = mst_preset("gmax-sweep", "square-4", 200, 5000, false);
    if let Some(g) = sweep.params.growth.as_mut() {
        g.max = 5;
    }
    sweep.sweep = Some(GmaxSweep {
        values: vec![5, 10, 20, 25, 30],
        steps: vec![5000, 5000, 5000, 5000, 3000],
    });
    out.push(sweep);
    out
}

pub fn find_preset(name: &str) -> Result<Scenario> {
    preset_catalogue()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

//! The model parameter record, keyed by the conventional symbol names
//! (`p`, `SA`, `RA`, `SO`, `Dep_t`, ...). A missing entry disables the
//! corresponding mechanism.

use serde::{Deserialize, Serialize};

use crate::agent::{SensorConfig, SensorOffset};
use crate::error::{Error, Result};

/// Periodic neighbour-count test used for both growth and shrinkage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowTest {
    /// Run the test every `frequency` steps.
    pub frequency: u64,
    /// Odd side length of the counting window.
    pub window: usize,
    pub min: usize,
    pub max: usize,
}

impl WindowTest {
    fn validate(&self, prefix: &str) -> Result<()> {
        if self.frequency < 1 {
            return Err(Error::param(&format!("{prefix}_f"), "frequency must be >= 1"));
        }
        if self.window < 3 || self.window % 2 == 0 {
            return Err(Error::param(&format!("{prefix}_w"), "window must be odd and >= 3"));
        }
        if self.min > self.max {
            return Err(Error::param(
                &format!("{prefix}_min"),
                format!("{prefix}_min must not exceed {prefix}_max"),
            ));
        }
        Ok(())
    }

    #[inline]
    pub fn accepts(&self, count: usize) -> bool {
        (self.min..=self.max).contains(&count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IlluminationParams {
    /// L_w
    pub window: usize,
    /// L_d
    pub damping: f64,
}

/// Full parameter set for one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub population: usize,
    pub sensor_angle: f64,
    pub rotation_angle: f64,
    pub sensor_offset: SensorOffset,
    pub deposit: f64,
    pub diffusion_window: usize,
    pub diffusion_damping: f64,
    pub attractant: Option<f64>,
    pub repellent: Option<f64>,
    pub illumination: Option<IlluminationParams>,
    pub growth: Option<WindowTest>,
    pub shrinkage: Option<WindowTest>,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        self.sensors()?;
        if !(self.deposit.is_finite() && self.deposit >= 0.0) {
            return Err(Error::param("Dep_t", "must be finite and >= 0"));
        }
        if self.diffusion_window < 3 || self.diffusion_window % 2 == 0 {
            return Err(Error::param("D_w", "window must be odd and >= 3"));
        }
        if !(0.0..=1.0).contains(&self.diffusion_damping) {
            return Err(Error::param("D_d", "must lie in [0, 1]"));
        }
        if let Some(a) = self.attractant {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::param("proj_a", "must be finite and > 0"));
            }
        }
        if let Some(r) = self.repellent {
            if !(r.is_finite() && r < 0.0) {
                return Err(Error::param("proj_r", "must be finite and < 0"));
            }
        }
        if let Some(l) = self.illumination {
            if l.window == 0 || l.window % 2 == 0 {
                return Err(Error::param("L_w", "window must be odd and >= 1"));
            }
            if !(0.0..=1.0).contains(&l.damping) {
                return Err(Error::param("L_d", "must lie in [0, 1]"));
            }
        }
        if let Some(g) = &self.growth {
            g.validate("G")?;
        }
        if let Some(s) = &self.shrinkage {
            s.validate("S")?;
        }
        Ok(())
    }

    pub fn sensors(&self) -> Result<SensorConfig> {
        SensorConfig::new(self.sensor_angle, self.rotation_angle, self.sensor_offset)
    }

    pub fn to_record(&self) -> ParamRecord {
        let (so, so_min, so_max) = match self.sensor_offset {
            SensorOffset::Fixed(v) => (Some(v), None, None),
            SensorOffset::Range(lo, hi) => (None, Some(lo), Some(hi)),
        };
        let g = self.growth;
        let s = self.shrinkage;
        ParamRecord {
            p: Some(self.population),
            sa: Some(self.sensor_angle),
            ra: Some(self.rotation_angle),
            so,
            so_min,
            so_max,
            dep_t: Some(self.deposit),
            d_w: Some(self.diffusion_window),
            d_d: Some(self.diffusion_damping),
            proj_a: self.attractant,
            proj_r: self.repellent,
            l_w: self.illumination.map(|l| l.window),
            l_d: self.illumination.map(|l| l.damping),
            g_f: g.map(|t| t.frequency),
            g_w: g.map(|t| t.window),
            g_min: g.map(|t| t.min),
            g_max: g.map(|t| t.max),
            s_f: s.map(|t| t.frequency),
            s_w: s.map(|t| t.window),
            s_min: s.map(|t| t.min),
            s_max: s.map(|t| t.max),
        }
    }
}

/// Flat, serialisable form of [`ModelParams`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(rename = "SA", default, skip_serializing_if = "Option::is_none")]
    pub sa: Option<f64>,
    #[serde(rename = "RA", default, skip_serializing_if = "Option::is_none")]
    pub ra: Option<f64>,
    #[serde(rename = "SO", default, skip_serializing_if = "Option::is_none")]
    pub so: Option<f64>,
    #[serde(rename = "SO_min", default, skip_serializing_if = "Option::is_none")]
    pub so_min: Option<u32>,
    #[serde(rename = "SO_max", default, skip_serializing_if = "Option::is_none")]
    pub so_max: Option<u32>,
    #[serde(rename = "Dep_t", default, skip_serializing_if = "Option::is_none")]
    pub dep_t: Option<f64>,
    #[serde(rename = "D_w", default, skip_serializing_if = "Option::is_none")]
    pub d_w: Option<usize>,
    #[serde(rename = "D_d", default, skip_serializing_if = "Option::is_none")]
    pub d_d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proj_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proj_r: Option<f64>,
    #[serde(rename = "L_w", default, skip_serializing_if = "Option::is_none")]
    pub l_w: Option<usize>,
    #[serde(rename = "L_d", default, skip_serializing_if = "Option::is_none")]
    pub l_d: Option<f64>,
    #[serde(rename = "G_f", default, skip_serializing_if = "Option::is_none")]
    pub g_f: Option<u64>,
    #[serde(rename = "G_w", default, skip_serializing_if = "Option::is_none")]
    pub g_w: Option<usize>,
    #[serde(rename = "G_min", default, skip_serializing_if = "Option::is_none")]
    pub g_min: Option<usize>,
    #[serde(rename = "G_max", default, skip_serializing_if = "Option::is_none")]
    pub g_max: Option<usize>,
    #[serde(rename = "S_f", default, skip_serializing_if = "Option::is_none")]
    pub s_f: Option<u64>,
    #[serde(rename = "S_w", default, skip_serializing_if = "Option::is_none")]
    pub s_w: Option<usize>,
    #[serde(rename = "S_min", default, skip_serializing_if = "Option::is_none")]
    pub s_min: Option<usize>,
    #[serde(rename = "S_max", default, skip_serializing_if = "Option::is_none")]
    pub s_max: Option<usize>,
}

/// The parameter names accepted in configs and `--set` overrides.
pub const PARAM_KEYS: [&str; 21] = [
    "p", "SA", "RA", "SO", "SO_min", "SO_max", "Dep_t", "D_w", "D_d", "proj_a", "proj_r", "L_w",
    "L_d", "G_f", "G_w", "G_min", "G_max", "S_f", "S_w", "S_min", "S_max",
];

fn required<T>(v: Option<T>, key: &str) -> Result<T> {
    v.ok_or_else(|| Error::param(key, "required"))
}

/// All four entries of a window test must be present or all absent.
fn window_test(
    prefix: &str,
    f: Option<u64>,
    w: Option<usize>,
    min: Option<usize>,
    max: Option<usize>,
) -> Result<Option<WindowTest>> {
    match (f, w, min, max) {
        (None, None, None, None) => Ok(None),
        (Some(frequency), Some(window), Some(min), Some(max)) => Ok(Some(WindowTest {
            frequency,
            window,
            min,
            max,
        })),
        _ => Err(Error::param(
            &format!("{prefix}_f"),
            format!("{prefix}_f, {prefix}_w, {prefix}_min and {prefix}_max must be given together"),
        )),
    }
}

impl TryFrom<ParamRecord> for ModelParams {
    type Error = Error;

    fn try_from(r: ParamRecord) -> Result<Self> {
        let sensor_offset = match (r.so, r.so_min, r.so_max) {
            (Some(v), None, None) => SensorOffset::Fixed(v),
            (None, Some(lo), Some(hi)) => SensorOffset::Range(lo, hi),
            (None, None, None) => return Err(Error::param("SO", "required")),
            _ => {
                return Err(Error::param(
                    "SO",
                    "give either SO or both SO_min and SO_max",
                ))
            }
        };
        let illumination = match (r.l_w, r.l_d) {
            (None, None) => None,
            (Some(window), Some(damping)) => Some(IlluminationParams { window, damping }),
            _ => return Err(Error::param("L_w", "L_w and L_d must be given together")),
        };
        let params = ModelParams {
            population: required(r.p, "p")?,
            sensor_angle: required(r.sa, "SA")?,
            rotation_angle: required(r.ra, "RA")?,
            sensor_offset,
            deposit: required(r.dep_t, "Dep_t")?,
            diffusion_window: required(r.d_w, "D_w")?,
            diffusion_damping: required(r.d_d, "D_d")?,
            attractant: r.proj_a,
            repellent: r.proj_r,
            illumination,
            growth: window_test("G", r.g_f, r.g_w, r.g_min, r.g_max)?,
            shrinkage: window_test("S", r.s_f, r.s_w, r.s_min, r.s_max)?,
        };
        params.validate()?;
        Ok(params)
    }
}

//! The diffusive lattice: chemoattractant trail, single-occupancy grid,
//! point stimuli and the illumination mask.
//!
//! Cells are addressed as `(x, y)` with `x` in `0..width` and `y` in
//! `0..height`; storage is row-major with index `y * width + x`. Angles and
//! offsets use a y-up, counter-clockwise-positive convention.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar chemoattractant concentration per lattice cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TrailField {
    width: usize,
    height: usize,
    values: Vec<f64>,
    scratch: Vec<f64>,
}

impl TrailField {
    pub fn new(width: usize, height: usize) -> Self {
        Self::from_values(width, height, vec![0.0; width * height])
    }

    /// Panics if `values.len() != width * height`.
    pub fn from_values(width: usize, height: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), width * height, "trail dimensions mismatch");
        Self {
            width,
            height,
            scratch: vec![0.0; values.len()],
            values,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.values[y * self.width + x] = v;
    }

    #[inline]
    pub fn add(&mut self, x: usize, y: usize, v: f64) {
        self.values[y * self.width + x] += v;
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// One synchronous mean-filter step.
    ///
    /// Each cell becomes the mean of its `window x window` neighbourhood,
    /// scaled by `1 - damping`. Neighbours outside the lattice read as zero
    /// but still count in the divisor, so trail leaks at the edges.
    pub fn diffuse(&mut self, window: usize, damping: f64) {
        debug_assert!(window % 2 == 1 && window >= 1);
        let r = window / 2;
        let (w, h) = (self.width, self.height);
        if w == 0 || h == 0 {
            return;
        }

        // Horizontal window sums into scratch.
        for y in 0..h {
            let row = &self.values[y * w..(y + 1) * w];
            let out = &mut self.scratch[y * w..(y + 1) * w];
            if w > 2 * r {
                let inner = &mut out[r..w - r];
                inner.fill(0.0);
                for k in 0..window {
                    for (o, v) in inner.iter_mut().zip(&row[k..]) {
                        *o += v;
                    }
                }
            }
            for x in (0..r.min(w)).chain(w.saturating_sub(r).max(r.min(w))..w) {
                let lo = x.saturating_sub(r);
                let hi = (x + r).min(w - 1);
                let mut s = 0.0;
                for v in &row[lo..=hi] {
                    s += v;
                }
                out[x] = s;
            }
        }

        // Vertical sums of the horizontal sums back into values.
        let area = (window * window) as f64;
        let keep = 1.0 - damping;
        for y in 0..h {
            let lo = y.saturating_sub(r);
            let hi = (y + r).min(h - 1);
            let out = &mut self.values[y * w..(y + 1) * w];
            out.fill(0.0);
            for yy in lo..=hi {
                let src = &self.scratch[yy * w..(yy + 1) * w];
                for (o, s) in out.iter_mut().zip(src) {
                    *o += s;
                }
            }
            for o in out.iter_mut() {
                *o = *o / area * keep;
            }
        }
    }

    /// Adds each active node's projection value to its cell.
    pub fn project_stimuli(&mut self, nodes: &[StimulusNode]) {
        for node in nodes.iter().filter(|n| n.active) {
            self.add(node.x, node.y, node.projection);
        }
    }

    /// Binary PGM (P5) snapshot: `clamp(round(v * gain), 0, 255)`, top row
    /// (largest `y`) first.
    pub fn to_pgm(&self, gain: f64) -> Vec<u8> {
        let pixels = (0..self.height).rev().flat_map(|y| {
            (0..self.width).map(move |x| (x, y))
        });
        let bytes: Vec<u8> = pixels
            .map(|(x, y)| (self.get(x, y) * gain).round().clamp(0.0, 255.0) as u8)
            .collect();
        encode_pgm(self.width, self.height, &bytes)
    }
}

/// Wraps raw 8-bit pixels (already in file order) in a P5 header.
pub fn encode_pgm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

/// Single-occupancy grid mapping cells to particle slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    cells: Vec<u32>,
    occupied: usize,
}

const EMPTY: u32 = u32::MAX;

impl OccupancyGrid {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            cells: vec![EMPTY; width * height],
            occupied: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn in_bounds(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<u32> {
        match self.cells[y * self.width + x] {
            EMPTY => None,
            id => Some(id),
        }
    }

    #[inline]
    pub fn is_empty(&self, x: usize, y: usize) -> bool {
        self.cells[y * self.width + x] == EMPTY
    }

    /// Returns false (and changes nothing) if the cell is taken.
    pub fn insert(&mut self, x: usize, y: usize, id: u32) -> bool {
        let c = &mut self.cells[y * self.width + x];
        if *c != EMPTY {
            return false;
        }
        *c = id;
        self.occupied += 1;
        true
    }

    pub fn remove(&mut self, x: usize, y: usize) -> Option<u32> {
        let c = &mut self.cells[y * self.width + x];
        if *c == EMPTY {
            return None;
        }
        let id = std::mem::replace(c, EMPTY);
        self.occupied -= 1;
        Some(id)
    }

    /// Overwrites the id stored in an occupied cell.
    pub(crate) fn relabel(&mut self, x: usize, y: usize, id: u32) {
        let c = &mut self.cells[y * self.width + x];
        debug_assert!(*c != EMPTY);
        *c = id;
    }

    pub fn clear(&mut self) {
        self.cells.fill(EMPTY);
        self.occupied = 0;
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied
    }

    /// Number of occupied cells in the `window x window` square centred on
    /// `(x, y)`, the centre included. Out-of-bounds cells count as empty.
    pub fn count_window(&self, x: usize, y: usize, window: usize) -> usize {
        let r = window / 2;
        let x0 = x.saturating_sub(r);
        let x1 = (x + r).min(self.width - 1);
        let y0 = y.saturating_sub(r);
        let y1 = (y + r).min(self.height - 1);
        let mut n = 0;
        for yy in y0..=y1 {
            let row = &self.cells[yy * self.width + x0..=yy * self.width + x1];
            n += row.iter().filter(|&&c| c != EMPTY).count();
        }
        n
    }

    /// Boolean raster of occupied cells, row-major.
    pub fn mask(&self) -> Vec<bool> {
        self.cells.iter().map(|&c| c != EMPTY).collect()
    }

    /// Occupancy snapshot as P5: 255 occupied, 0 empty, top row first.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut px = Vec::with_capacity(self.cells.len());
        for y in (0..self.height).rev() {
            for x in 0..self.width {
                px.push(if self.is_empty(x, y) { 0 } else { 255 });
            }
        }
        encode_pgm(self.width, self.height, &px)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    Attractant,
    Repellent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Activation {
    Always,
    OnTouch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContactBehaviour {
    None,
    AnnihilateRespawn,
}

/// A point source projecting into the trail every step while active.
#[derive(Debug, Clone, PartialEq)]
pub struct StimulusNode {
    pub x: usize,
    pub y: usize,
    pub polarity: Polarity,
    pub projection: f64,
    pub activation: Activation,
    pub active: bool,
    pub contact: ContactBehaviour,
    pub contact_radius: f64,
}

impl StimulusNode {
    /// Validates polarity against the sign of `projection` and the position
    /// against the lattice bounds.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        x: i64,
        y: i64,
        width: usize,
        height: usize,
        polarity: Polarity,
        projection: f64,
        activation: Activation,
        contact: ContactBehaviour,
        contact_radius: f64,
    ) -> Result<Self> {
        if x < 0 || y < 0 || x as usize >= width || y as usize >= height {
            return Err(Error::NodeOutOfBounds {
                x,
                y,
                width,
                height,
            });
        }
        match polarity {
            Polarity::Attractant if projection <= 0.0 => {
                return Err(Error::param("proj_a", "attractant projection must be > 0"))
            }
            Polarity::Repellent if projection >= 0.0 => {
                return Err(Error::param("proj_r", "repellent projection must be < 0"))
            }
            _ => {}
        }
        if !(contact_radius >= 0.0) {
            return Err(Error::param("contact_radius", "must be >= 0"));
        }
        Ok(Self {
            x: x as usize,
            y: y as usize,
            polarity,
            projection,
            activation,
            active: activation == Activation::Always,
            contact,
            contact_radius,
        })
    }

    /// True if the cell `(x, y)` lies within the contact radius.
    #[inline]
    pub fn touches(&self, x: usize, y: usize) -> bool {
        let dx = x as f64 - self.x as f64;
        let dy = y as f64 - self.y as f64;
        dx * dx + dy * dy <= self.contact_radius * self.contact_radius
    }
}

/// How a damped reading is scaled near illuminated cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DampingMode {
    /// Reading multiplied by `1 - L_d`.
    #[default]
    OneMinus,
    /// Reading multiplied by `L_d`.
    Literal,
}

/// Raster of illuminated cells plus the sensing damping applied near them.
#[derive(Debug, Clone, PartialEq)]
pub struct IlluminationMask {
    width: usize,
    height: usize,
    lit: Vec<bool>,
    near_lit: Vec<bool>,
    window: usize,
    damping: f64,
    mode: DampingMode,
}

impl IlluminationMask {
    pub fn new(
        width: usize,
        height: usize,
        lit: Vec<bool>,
        window: usize,
        damping: f64,
        mode: DampingMode,
    ) -> Result<Self> {
        if lit.len() != width * height {
            return Err(Error::param("illumination", "mask dimensions mismatch"));
        }
        if window == 0 || window % 2 == 0 {
            return Err(Error::param("L_w", "window must be odd and >= 1"));
        }
        if !(0.0..=1.0).contains(&damping) {
            return Err(Error::param("L_d", "damping must lie in [0, 1]"));
        }
        let r = (window / 2) as i64;
        let mut near_lit = vec![false; lit.len()];
        for y in 0..height as i64 {
            for x in 0..width as i64 {
                let mut hit = false;
                'win: for yy in (y - r).max(0)..=(y + r).min(height as i64 - 1) {
                    for xx in (x - r).max(0)..=(x + r).min(width as i64 - 1) {
                        if lit[yy as usize * width + xx as usize] {
                            hit = true;
                            break 'win;
                        }
                    }
                }
                near_lit[y as usize * width + x as usize] = hit;
            }
        }
        Ok(Self {
            width,
            height,
            lit,
            near_lit,
            window,
            damping,
            mode,
        })
    }

    pub fn is_lit(&self, x: usize, y: usize) -> bool {
        self.lit[y * self.width + x]
    }

    pub fn lit(&self) -> &[bool] {
        &self.lit
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn damping(&self) -> f64 {
        self.damping
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Multiplier applied to a reading taken at cell `(x, y)`.
    #[inline]
    pub fn factor(&self, x: usize, y: usize) -> f64 {
        if self.near_lit[y * self.width + x] {
            match self.mode {
                DampingMode::OneMinus => 1.0 - self.damping,
                DampingMode::Literal => self.damping,
            }
        } else {
            1.0
        }
    }
}

/// Trail reading at a continuous position: zero outside the lattice, damped
/// near illuminated cells.
#[inline]
pub fn sense_at(field: &TrailField, mask: Option<&IlluminationMask>, x: f64, y: f64) -> f64 {
    if !(x >= 0.0 && y >= 0.0) {
        return 0.0;
    }
    let (cx, cy) = (x as usize, y as usize);
    if cx >= field.width || cy >= field.height {
        return 0.0;
    }
    let v = field.get(cx, cy);
    match mask {
        Some(m) => v * m.factor(cx, cy),
        None => v,
    }
}

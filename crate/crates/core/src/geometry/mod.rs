//! Planar geometry: hull and spanning-tree oracles, α-shape reference,
//! raster boundary extraction and shape metrics.
//!
//! Coordinates are in lattice cell units; a raster cell `(x, y)` is the
//! point `(x, y)`.

mod alpha;
mod hull;
mod metrics;
mod mst;
mod trace;

pub use alpha::alpha_shape_reference;
pub use hull::{convex_hull, polygon_area};
pub use metrics::{blob_mask, fill_holes, hausdorff, raster_hull_fill, shape_metrics, ShapeMetrics};
pub use mst::euclidean_mst;
pub use trace::{components, extract_concave_hull, trace_boundary, Raster};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate hull: {0}")]
    DegenerateHull(&'static str),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("empty input")]
    Empty,
    #[error("blob has {count} 8-connected components (sizes {sizes:?})")]
    Disconnected { count: usize, sizes: Vec<usize> },
    #[error("fewer than 3 nodes lie on the blob boundary ({found} found)")]
    NoPeripheralNodes { found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(&self, o: &Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn dist2(&self, o: &Point) -> f64 {
        let (dx, dy) = (self.x - o.x, self.y - o.y);
        dx * dx + dy * dy
    }
}

/// Twice the signed area of triangle `o a b`; positive when counter-clockwise.
#[inline]
pub fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// A set of distinct points.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
}

impl PointSet {
    /// Removes exact duplicates, keeping first occurrences.
    pub fn new(points: impl IntoIterator<Item = Point>) -> Self {
        let mut out: Vec<Point> = Vec::new();
        for p in points {
            if !out.iter().any(|q| q.x == p.x && q.y == p.y) {
                out.push(p);
            }
        }
        PointSet { points: out }
    }

    pub fn from_xy(xy: &[(f64, f64)]) -> Self {
        Self::new(xy.iter().map(|&(x, y)| Point::new(x, y)))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                d = d.max(a.dist(b));
            }
        }
        d
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let mut d = f64::INFINITY;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                d = d.min(a.dist(b));
            }
        }
        d
    }
}

/// Counter-clockwise simple polygon, closed implicitly.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<Point>,
}

impl Polygon {
    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].dist(&self.vertices[(i + 1) % n]))
            .sum()
    }

    /// Inside or on the boundary (within `eps`).
    pub fn contains(&self, p: Point, eps: f64) -> bool {
        point_in_polygon(&self.vertices, p, eps)
    }

    /// Unordered boundary edges as vertex pairs.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Undirected edges over a point list.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct EdgeList {
    pub points: Vec<Point>,
    /// `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn length(&self, e: (usize, usize)) -> f64 {
        self.points[e.0].dist(&self.points[e.1])
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|&e| self.length(e)).sum()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.edges.iter().map(|&(i, j)| (self.points[i], self.points[j]))
    }
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.dist(&a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.dist(&Point::new(a.x + t * dx, a.y + t * dy))
}

/// Even-odd containment; points within `eps` of an edge count as inside.
pub fn point_in_polygon(vertices: &[Point], p: Point, eps: f64) -> bool {
    let n = vertices.len();
    if n == 0 {
        return false;
    }
    let mut inside = false;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if point_segment_distance(p, a, b) <= eps {
            return true;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

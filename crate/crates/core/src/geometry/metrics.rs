use serde::{Deserialize, Serialize};

use super::hull::hull_of;
use super::trace::{components, Raster};
use super::{point_in_polygon, point_segment_distance, GeometryError, Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeMetrics {
    /// Blob cell count.
    pub area: usize,
    /// Blob cells with at least one empty 4-neighbour (off-lattice counts
    /// as empty).
    pub perimeter: usize,
    /// `1 - area / filled hull area`, in `[0, 1]`.
    pub concavity: f64,
}

pub fn shape_metrics(blob: &Raster) -> Result<ShapeMetrics, GeometryError> {
    let area = blob.count();
    if area == 0 {
        return Err(GeometryError::Empty);
    }
    let mut perimeter = 0;
    for y in 0..blob.height as i64 {
        for x in 0..blob.width as i64 {
            if blob.get(x, y)
                && !(blob.get(x + 1, y) && blob.get(x - 1, y) && blob.get(x, y + 1) && blob.get(x, y - 1))
            {
                perimeter += 1;
            }
        }
    }
    let hull = raster_hull_fill(blob);
    let concavity = (1.0 - area as f64 / hull as f64).clamp(0.0, 1.0);
    Ok(ShapeMetrics {
        area,
        perimeter,
        concavity,
    })
}

/// Number of lattice cells whose coordinates lie inside or on the convex
/// hull of the blob cells.
pub fn raster_hull_fill(blob: &Raster) -> usize {
    // Only cells on a row's extremes can be hull vertices.
    let mut extremes = Vec::new();
    for y in 0..blob.height {
        let row = &blob.cells[y * blob.width..(y + 1) * blob.width];
        if let Some(lo) = row.iter().position(|&c| c) {
            let hi = row.iter().rposition(|&c| c).unwrap();
            extremes.push(Point::new(lo as f64, y as f64));
            if hi != lo {
                extremes.push(Point::new(hi as f64, y as f64));
            }
        }
    }
    if extremes.is_empty() {
        return 0;
    }
    let (xmin, xmax, ymin, ymax) = extremes.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), p| (a.min(p.x), b.max(p.x), c.min(p.y), d.max(p.y)),
    );
    let inside: Box<dyn Fn(Point) -> bool> = match hull_of(&extremes) {
        Ok(h) => Box::new(move |p| point_in_polygon(&h.vertices, p, 1e-9)),
        Err(_) => {
            // collinear or single cell: the hull is a segment
            let a = *extremes
                .iter()
                .min_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)))
                .unwrap();
            let b = *extremes
                .iter()
                .max_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)))
                .unwrap();
            Box::new(move |p| point_segment_distance(p, a, b) <= 1e-9)
        }
    };
    let mut n = 0;
    for y in ymin as usize..=ymax as usize {
        for x in xmin as usize..=xmax as usize {
            if inside(Point::new(x as f64, y as f64)) {
                n += 1;
            }
        }
    }
    n
}

/// Background cells not 4-connected to the lattice border become blob.
pub fn fill_holes(r: &Raster) -> Raster {
    let (w, h) = (r.width, r.height);
    let mut outside = vec![false; w * h];
    let mut stack = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if (x == 0 || y == 0 || x == w - 1 || y == h - 1) && !r.cells[y * w + x] {
                outside[y * w + x] = true;
                stack.push((x, y));
            }
        }
    }
    while let Some((x, y)) = stack.pop() {
        let mut visit = |nx: usize, ny: usize| {
            let i = ny * w + nx;
            if !r.cells[i] && !outside[i] {
                outside[i] = true;
                stack.push((nx, ny));
            }
        };
        if x > 0 {
            visit(x - 1, y);
        }
        if x + 1 < w {
            visit(x + 1, y);
        }
        if y > 0 {
            visit(x, y - 1);
        }
        if y + 1 < h {
            visit(x, y + 1);
        }
    }
    Raster::from_cells(w, h, outside.iter().map(|&o| !o).collect())
}

/// Square-window max (dilate) or min (erode) filter of radius `r`.
fn morph(src: &Raster, r: usize, dilate: bool) -> Raster {
    let (w, h) = (src.width, src.height);
    let r = r as i64;
    // separable: rows then columns; off-lattice reads as background
    let pass = |cells: &[bool], horizontal: bool| -> Vec<bool> {
        let mut out = vec![false; w * h];
        for y in 0..h as i64 {
            for x in 0..w as i64 {
                let mut any = false;
                let mut all = true;
                for k in -r..=r {
                    let (nx, ny) = if horizontal { (x + k, y) } else { (x, y + k) };
                    let v = nx >= 0
                        && ny >= 0
                        && nx < w as i64
                        && ny < h as i64
                        && cells[ny as usize * w + nx as usize];
                    any |= v;
                    all &= v;
                }
                out[y as usize * w + x as usize] = if dilate { any } else { all };
            }
        }
        out
    };
    let rows = pass(&src.cells, true);
    Raster::from_cells(w, h, pass(&rows, false))
}

/// Solid blob from a sparse particle raster: morphological closing with a
/// `(2r+1)²` square, largest 8-connected component, holes filled.
pub fn blob_mask(occupied: &Raster, closing_radius: usize) -> Raster {
    let closed = if closing_radius == 0 {
        occupied.clone()
    } else {
        // erosion treats off-lattice as blob so the closing does not eat
        // into blobs touching the edge
        let dil = morph(occupied, closing_radius, true);
        let inv = Raster::from_cells(dil.width, dil.height, dil.cells.iter().map(|&c| !c).collect());
        let inv_dil = morph(&inv, closing_radius, true);
        Raster::from_cells(dil.width, dil.height, inv_dil.cells.iter().map(|&c| !c).collect())
    };
    let (labels, sizes) = components(&closed);
    let Some((best, _)) = sizes.iter().enumerate().max_by_key(|&(i, &s)| (s, std::cmp::Reverse(i))) else {
        return closed;
    };
    fill_holes(&closed.select(&labels, best + 1))
}

/// Symmetric Hausdorff distance.
pub fn hausdorff(a: &PointSet, b: &PointSet) -> Result<f64, GeometryError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::Empty);
    }
    Ok(directed(&a.points, &b.points).max(directed(&b.points, &a.points)).sqrt())
}

/// Squared directed distance with early exit once a point cannot raise
/// the running maximum.
fn directed(from: &[Point], to: &[Point]) -> f64 {
    let mut cmax: f64 = 0.0;
    for p in from {
        let mut cmin = f64::INFINITY;
        for q in to {
            let d = p.dist2(q);
            if d < cmin {
                cmin = d;
                if cmin < cmax {
                    break;
                }
            }
        }
        cmax = cmax.max(cmin);
    }
    cmax
}

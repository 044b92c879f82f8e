//! Built-in stimulus layouts.
//!
//! All coordinates are lattice cells. `china-cities` is a synthetic
//! 30-point layout with a country-map-like spread; it is not geographic
//! data.

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};

pub const NAMES: [&str; 6] = [
    "letter-H",
    "letter-C",
    "letter-A",
    "square-4",
    "china-cities",
    "scatter-20",
];

pub fn builtin(name: &str) -> Result<PointSet> {
    match name {
        "letter-H" => Ok(letter_h()),
        "letter-C" => Ok(letter_c()),
        "letter-A" => Ok(letter_a()),
        "square-4" => Ok(square_4()),
        "china-cities" => Ok(china_cities()),
        "scatter-20" => Ok(scatter_20()),
        other => Err(Error::UnknownPointSet(other.to_string())),
    }
}

/// Points every `spacing` cells along a segment, both ends included.
fn stroke(a: (f64, f64), b: (f64, f64), spacing: f64) -> Vec<Point> {
    let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
    let n = (len / spacing).round().max(1.0) as usize;
    (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            Point::new((a.0 + t * (b.0 - a.0)).round(), (a.1 + t * (b.1 - a.1)).round())
        })
        .collect()
}

/// Two 120-cell uprights at x = 60 and x = 140 joined by a crossbar at
/// y = 100; one node per 10 cells. Fits a 200x200 lattice.
pub fn letter_h() -> PointSet {
    let mut pts = stroke((60.0, 40.0), (60.0, 160.0), 10.0);
    pts.extend(stroke((140.0, 40.0), (140.0, 160.0), 10.0));
    pts.extend(stroke((70.0, 100.0), (130.0, 100.0), 10.0));
    PointSet::new(pts)
}

/// Thick 'C' on a 300x300 lattice: outer (r = 90) and inner (r = 65) arcs
/// from 50 to 310 degrees around (150, 150), opening to the right.
pub fn letter_c() -> PointSet {
    let arc = |r: f64| {
        let (a0, a1) = (50f64.to_radians(), 310f64.to_radians());
        let n = (r * (a1 - a0) / 10.0).round() as usize;
        (0..=n).map(move |i| {
            let t = a0 + (a1 - a0) * i as f64 / n as f64;
            Point::new((150.0 + r * t.cos()).round(), (150.0 + r * t.sin()).round())
        })
    };
    PointSet::new(arc(90.0).chain(arc(65.0)))
}

/// 'A' on a 200x200 lattice: apex (100, 170), feet at (45, 30) and
/// (155, 30), crossbar at y = 85; nodes about 8 cells apart.
pub fn letter_a() -> PointSet {
    let mut pts: Vec<Point> = Vec::new();
    let strokes = [
        stroke((100.0, 170.0), (45.0, 30.0), 8.0),
        stroke((100.0, 170.0), (155.0, 30.0), 8.0),
        stroke((75.0, 85.0), (125.0, 85.0), 8.0),
    ];
    // the legs crowd each other near the apex
    for p in strokes.into_iter().flatten() {
        if pts.iter().all(|q| q.dist(&p) >= 7.0) {
            pts.push(p);
        }
    }
    PointSet::new(pts)
}

/// Corners of an 80-cell square centred on a 200x200 lattice.
pub fn square_4() -> PointSet {
    PointSet::from_xy(&[(60.0, 60.0), (140.0, 60.0), (140.0, 140.0), (60.0, 140.0)])
}

pub fn china_cities() -> PointSet {
    PointSet::from_xy(&[
        (250.0, 240.0),
        (238.0, 218.0),
        (220.0, 200.0),
        (205.0, 190.0),
        (212.0, 172.0),
        (226.0, 160.0),
        (240.0, 140.0),
        (232.0, 118.0),
        (222.0, 100.0),
        (208.0, 82.0),
        (190.0, 72.0),
        (170.0, 66.0),
        (150.0, 74.0),
        (130.0, 70.0),
        (112.0, 84.0),
        (100.0, 104.0),
        (118.0, 120.0),
        (140.0, 110.0),
        (160.0, 120.0),
        (180.0, 135.0),
        (168.0, 150.0),
        (150.0, 160.0),
        (128.0, 150.0),
        (104.0, 140.0),
        (80.0, 150.0),
        (60.0, 170.0),
        (40.0, 180.0),
        (70.0, 200.0),
        (100.0, 196.0),
        (140.0, 190.0),
    ])
}

/// Irregular 20-point cloud around (100, 100) with a few interior points
/// close to the hull boundary.
pub fn scatter_20() -> PointSet {
    PointSet::from_xy(&[
        (70.0, 62.0),
        (104.0, 55.0),
        (132.0, 70.0),
        (146.0, 98.0),
        (138.0, 128.0),
        (112.0, 146.0),
        (80.0, 140.0),
        (58.0, 116.0),
        (55.0, 88.0),
        (90.0, 80.0),
        (100.0, 100.0),
        (120.0, 95.0),
        (85.0, 115.0),
        (110.0, 120.0),
        (95.0, 130.0),
        (125.0, 115.0),
        (75.0, 95.0),
        (105.0, 75.0),
        (130.0, 85.0),
        (65.0, 130.0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{convex_hull, euclidean_mst};

    #[test]
    fn all_names_resolve() {
        for name in NAMES {
            let ps = builtin(name).unwrap();
            assert!(ps.len() >= 4, "{name}");
        }
        assert!(builtin("letter-Z").is_err());
    }

    #[test]
    fn square_is_centred() {
        let ps = square_4();
        let cx: f64 = ps.points.iter().map(|p| p.x).sum::<f64>() / 4.0;
        let cy: f64 = ps.points.iter().map(|p| p.y).sum::<f64>() / 4.0;
        assert_eq!((cx, cy), (100.0, 100.0));
    }

    #[test]
    fn h_nodes_ten_cells_apart() {
        let ps = letter_h();
        assert_eq!(ps.len(), 33);
        for p in &ps.points {
            let nearest = ps
                .points
                .iter()
                .filter(|q| *q != p)
                .map(|q| p.dist(q))
                .fold(f64::INFINITY, f64::min);
            assert!((nearest - 10.0).abs() < 1e-9);
        }
    }

    #[test]
    fn layouts_fit_their_lattices() {
        for (name, size) in [
            ("letter-H", 200.0),
            ("letter-C", 300.0),
            ("letter-A", 200.0),
            ("square-4", 200.0),
            ("china-cities", 300.0),
            ("scatter-20", 200.0),
        ] {
            let ps = builtin(name).unwrap();
            assert!(ps.points.iter().all(|p| p.x >= 10.0 && p.y >= 10.0 && p.x < size - 10.0 && p.y < size - 10.0));
            // at-nodes discs of radius 3 must not overlap
            assert!(ps.min_pairwise_distance() > 6.0, "{name}");
            euclidean_mst(&ps).unwrap();
            convex_hull(&ps).unwrap();
        }
    }
}

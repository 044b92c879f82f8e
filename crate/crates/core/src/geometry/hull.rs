use super::{cross, GeometryError, Point, PointSet, Polygon};

/// Convex hull by Andrew's monotone chain.
///
/// Vertices are counter-clockwise starting from the lowest-leftmost point;
/// collinear boundary points are dropped.
pub fn convex_hull(ps: &PointSet) -> Result<Polygon, GeometryError> {
    hull_of(&ps.points)
}

pub(crate) fn hull_of(points: &[Point]) -> Result<Polygon, GeometryError> {
    if points.len() < 3 {
        return Err(GeometryError::DegenerateHull("fewer than 3 points"));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);

    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    if hull.len() < 3 {
        return Err(GeometryError::DegenerateHull("all points collinear"));
    }
    Ok(Polygon { vertices: hull })
}

/// Signed shoelace area; positive for counter-clockwise order.
pub fn polygon_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum();
    twice / 2.0
}

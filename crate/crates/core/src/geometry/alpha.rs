use super::{EdgeList, Point, PointSet};

/// Brute-force α-shape edge set with disc radius `radius` (= 1/α).
///
/// Edge `(a, b)` is kept when one of the two discs of the given radius
/// passing through `a` and `b` has no other point strictly inside it. Large
/// radii approach the convex hull; radii below half the closest pair
/// distance give no edges. O(n³).
pub fn alpha_shape_reference(ps: &PointSet, radius: f64) -> EdgeList {
    let pts = &ps.points;
    let n = pts.len();
    let mut edges = Vec::new();
    // relative slack so points on the disc boundary are not "inside"
    let eps = 1e-9 * radius.max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (pts[i], pts[j]);
            let d = a.dist(&b);
            if d == 0.0 || d > 2.0 * radius {
                continue;
            }
            let mid = Point::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
            let h = (radius * radius - d * d / 4.0).max(0.0).sqrt();
            let (ux, uy) = (-(b.y - a.y) / d, (b.x - a.x) / d);
            let centres = [
                Point::new(mid.x + h * ux, mid.y + h * uy),
                Point::new(mid.x - h * ux, mid.y - h * uy),
            ];
            let empty = centres.iter().any(|c| {
                pts.iter()
                    .enumerate()
                    .all(|(k, p)| k == i || k == j || p.dist(c) >= radius - eps)
            });
            if empty {
                edges.push((i, j));
            }
        }
    }
    EdgeList {
        points: pts.clone(),
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;

    fn index_of(ps: &PointSet, p: Point) -> usize {
        ps.points.iter().position(|q| *q == p).unwrap()
    }

    #[test]
    fn tiny_radius_is_empty() {
        let ps = PointSet::from_xy(&[(0.0, 0.0), (4.0, 0.0), (1.0, 3.0), (6.0, 5.0)]);
        let r = ps.min_pairwise_distance() / 2.0 * 0.99;
        assert!(alpha_shape_reference(&ps, r).edges.is_empty());
    }

    #[test]
    fn triangle_just_above_circumradius() {
        // 3-4-5 right triangle: circumradius is half the hypotenuse.
        let ps = PointSet::from_xy(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]);
        let shape = alpha_shape_reference(&ps, 2.5 * 1.01);
        assert_eq!(shape.edges, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn large_radius_recovers_hull_edges() {
        let ps = PointSet::from_xy(&[
            (0.0, 0.0),
            (10.0, 0.0),
            (10.0, 10.0),
            (0.0, 10.0),
            (5.0, 5.0),
            (3.0, 6.0),
        ]);
        let shape = alpha_shape_reference(&ps, ps.diameter());
        let hull = convex_hull(&ps).unwrap();
        for (a, b) in hull.edges() {
            let (i, j) = (index_of(&ps, a), index_of(&ps, b));
            let e = (i.min(j), i.max(j));
            assert!(shape.edges.contains(&e), "missing hull edge {e:?}");
        }
        // the centre point is not on any edge at this radius
        assert!(!shape.edges.iter().any(|&(i, j)| i == 4 || j == 4));
    }

    #[test]
    fn diameter_radius_can_drop_a_hull_edge() {
        // The outer disc on edge (0,0)-(10,0) has its centre at (5, -8.66)
        // and reaches 1.34 above the edge, so it swallows (5, 1).
        let ps = PointSet::from_xy(&[(0.0, 0.0), (10.0, 0.0), (5.0, 8.0), (5.0, 1.0)]);
        assert_eq!(ps.diameter(), 10.0);
        let shape = alpha_shape_reference(&ps, ps.diameter());
        assert!(!shape.edges.contains(&(0, 1)));
        let shape = alpha_shape_reference(&ps, 4.0 * ps.diameter());
        assert!(shape.edges.contains(&(0, 1)));
    }
}

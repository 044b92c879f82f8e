use super::{EdgeList, GeometryError, PointSet};

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Euclidean minimum spanning tree (Kruskal over the complete graph).
///
/// Equal-length edges are taken in lexicographic `(i, j)` order, so the
/// result is deterministic. Output edges are sorted.
pub fn euclidean_mst(ps: &PointSet) -> Result<EdgeList, GeometryError> {
    let n = ps.len();
    if n < 2 {
        return Err(GeometryError::TooFewPoints { needed: 2, got: n });
    }
    let mut candidates: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            candidates.push((ps.points[i].dist2(&ps.points[j]), i, j));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut dsu = DisjointSet::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    for (_, i, j) in candidates {
        if dsu.union(i, j) {
            edges.push((i, j));
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    edges.sort();
    Ok(EdgeList {
        points: ps.points.clone(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Minimum total length over all labelled trees, enumerated by Prüfer
    /// sequence.
    pub(crate) fn exhaustive_min_tree_length(pts: &[Point]) -> f64 {
        let n = pts.len();
        let mut best = f64::INFINITY;
        let total = n.pow((n - 2) as u32);
        let mut seq = vec![0usize; n - 2];
        for code in 0..total {
            let mut c = code;
            for s in seq.iter_mut() {
                *s = c % n;
                c /= n;
            }
            let mut degree = vec![1usize; n];
            for &s in &seq {
                degree[s] += 1;
            }
            let mut len = 0.0;
            for &s in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                len += pts[leaf].dist(&pts[s]);
                degree[leaf] -= 1;
                degree[s] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            len += pts[rest[0]].dist(&pts[rest[1]]);
            best = best.min(len);
        }
        best
    }

    #[test]
    fn two_points() {
        let ps = PointSet::from_xy(&[(0.0, 0.0), (3.0, 4.0)]);
        let t = euclidean_mst(&ps).unwrap();
        assert_eq!(t.edges, vec![(0, 1)]);
        assert_eq!(t.total_length(), 5.0);
    }

    #[test]
    fn too_few_points() {
        assert!(euclidean_mst(&PointSet::from_xy(&[(1.0, 1.0)])).is_err());
    }

    #[test]
    fn unit_square_tie_break() {
        let ps = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let t = euclidean_mst(&ps).unwrap();
        assert_eq!(t.total_length(), 3.0);
        // lengths-1 edges in lexicographic order: (0,1), (0,3), (1,2)
        assert_eq!(t.edges, vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..15 {
            let ps = PointSet::new((0..7).map(|_| Point::new(rng.gen_range(0.0..50.0), rng.gen_range(0.0..50.0))));
            let t = euclidean_mst(&ps).unwrap();
            assert_eq!(t.edges.len(), 6);
            let best = exhaustive_min_tree_length(&ps.points);
            assert!((t.total_length() - best).abs() <= 1e-9 * best);
        }
    }
}

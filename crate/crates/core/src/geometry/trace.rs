use super::{cross, polygon_area, GeometryError, Point, PointSet, Polygon};

/// Row-major boolean raster (`true` = blob).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<bool>,
}

impl Raster {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            cells: vec![false; width * height],
        }
    }

    pub fn from_cells(width: usize, height: usize, cells: Vec<bool>) -> Self {
        assert_eq!(cells.len(), width * height);
        Self {
            width,
            height,
            cells,
        }
    }

    #[inline]
    pub fn get(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && (x as usize) < self.width
            && (y as usize) < self.height
            && self.cells[y as usize * self.width + x as usize]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.cells[y * self.width + x] = v;
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.cells.iter().enumerate().filter(|(_, &c)| c).map(move |(i, _)| {
            Point::new((i % self.width) as f64, (i / self.width) as f64)
        })
    }

    /// Raster holding only the cells whose component label equals `label`.
    pub fn select(&self, labels: &[usize], label: usize) -> Raster {
        Raster::from_cells(
            self.width,
            self.height,
            labels.iter().map(|&l| l == label).collect(),
        )
    }
}

/// Neighbour offsets in counter-clockwise order (y-up), starting east.
const RING: [(i64, i64); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

fn ring_index(dx: i64, dy: i64) -> usize {
    RING.iter().position(|&d| d == (dx, dy)).expect("unit offset")
}

/// 8-connected component labels (`0` = background, components from `1`)
/// and the size of each component.
pub fn components(r: &Raster) -> (Vec<usize>, Vec<usize>) {
    let mut labels = vec![0usize; r.cells.len()];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..r.cells.len() {
        if !r.cells[start] || labels[start] != 0 {
            continue;
        }
        let label = sizes.len() + 1;
        let mut size = 0;
        labels[start] = label;
        stack.push(start);
        while let Some(i) = stack.pop() {
            size += 1;
            let (x, y) = ((i % r.width) as i64, (i / r.width) as i64);
            for (dx, dy) in RING {
                let (nx, ny) = (x + dx, y + dy);
                if r.get(nx, ny) {
                    let j = ny as usize * r.width + nx as usize;
                    if labels[j] == 0 {
                        labels[j] = label;
                        stack.push(j);
                    }
                }
            }
        }
        sizes.push(size);
    }
    (labels, sizes)
}

/// Outer boundary of the component containing the lowest, leftmost blob
/// cell, by Moore-neighbour tracing (8-connected blob, 4-connected
/// background). Cells come in counter-clockwise order; a cell may repeat
/// where the blob is one cell thick.
pub fn trace_boundary(r: &Raster) -> Vec<(i64, i64)> {
    let Some(first) = r.cells.iter().position(|&c| c) else {
        return Vec::new();
    };
    let start = ((first % r.width) as i64, (first / r.width) as i64);

    // Backtrack direction from the current cell to the last background
    // cell examined. West of the start cell is background by scan order.
    let step = |c: (i64, i64), back: usize| -> Option<((i64, i64), usize)> {
        for k in 1..=8 {
            let d = (back + k) % 8;
            let n = (c.0 + RING[d].0, c.1 + RING[d].1);
            if r.get(n.0, n.1) {
                let prev = (back + k - 1) % 8;
                let b = (c.0 + RING[prev].0, c.1 + RING[prev].1);
                return Some((n, ring_index(b.0 - n.0, b.1 - n.1)));
            }
        }
        None
    };

    let mut boundary = vec![start];
    let Some(first_state) = step(start, 4) else {
        return boundary;
    };
    let (mut cur, mut back) = first_state;
    // cap guards against a malformed state cycle
    let cap = 4 * r.cells.len() + 8;
    while boundary.len() < cap {
        boundary.push(cur);
        let next = step(cur, back).expect("connected cell has a neighbour");
        if next == first_state && cur == start {
            break;
        }
        (cur, back) = next;
    }
    if boundary.len() > 1 && *boundary.last().unwrap() == start {
        boundary.pop();
    }
    boundary
}

/// Concave hull polygon from a raster blob: trace its outer boundary and
/// join, in traversal order, the nodes lying within `tolerance` of it.
///
/// Collinear vertices are dropped and the result is counter-clockwise,
/// starting from the leftmost (then lowest) vertex.
pub fn extract_concave_hull(
    blob: &Raster,
    nodes: &PointSet,
    tolerance: f64,
) -> Result<Polygon, GeometryError> {
    let (_, sizes) = components(blob);
    match sizes.len() {
        0 => return Err(GeometryError::Empty),
        1 => {}
        count => return Err(GeometryError::Disconnected { count, sizes }),
    }
    let boundary = trace_boundary(blob);

    let mut peripheral: Vec<(usize, usize)> = Vec::new();
    for (ni, node) in nodes.points.iter().enumerate() {
        let mut best = (f64::INFINITY, 0usize);
        for (bi, &(x, y)) in boundary.iter().enumerate() {
            let d = node.dist(&Point::new(x as f64, y as f64));
            if d < best.0 {
                best = (d, bi);
            }
        }
        if best.0 <= tolerance {
            peripheral.push((best.1, ni));
        }
    }
    peripheral.sort();
    let mut verts: Vec<Point> = peripheral.iter().map(|&(_, ni)| nodes.points[ni]).collect();
    verts.dedup();

    drop_collinear(&mut verts);
    if verts.len() < 3 {
        return Err(GeometryError::NoPeripheralNodes { found: verts.len() });
    }
    if polygon_area(&verts) < 0.0 {
        verts.reverse();
    }
    let lead = (0..verts.len())
        .min_by(|&a, &b| {
            verts[a]
                .x
                .total_cmp(&verts[b].x)
                .then(verts[a].y.total_cmp(&verts[b].y))
        })
        .unwrap();
    verts.rotate_left(lead);
    Ok(Polygon { vertices: verts })
}

fn drop_collinear(v: &mut Vec<Point>) {
    loop {
        let n = v.len();
        if n < 3 {
            return;
        }
        let hit = (0..n).find(|&i| cross(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) == 0.0);
        match hit {
            Some(i) => {
                v.remove(i);
            }
            None => return,
        }
    }
}

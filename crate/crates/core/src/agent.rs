//! Particle behaviour: the sensory stage (three forward sensors, rotation
//! toward the strongest reading) and the motor stage (single-cell forward
//! move with deposition).

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{sense_at, IlluminationMask, OccupancyGrid, TrailField};

/// One agent of the population.
#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub id: u64,
    pub x: f64,
    pub y: f64,
    /// Degrees in `[0, 360)`, counter-clockwise from +x.
    pub heading: f64,
    pub moved_last_step: bool,
}

impl Particle {
    /// Lattice cell holding this particle.
    #[inline]
    pub fn cell(&self) -> (usize, usize) {
        (self.x as usize, self.y as usize)
    }
}

/// Wraps any finite angle into `[0, 360)`.
#[inline]
pub fn normalize_heading(deg: f64) -> f64 {
    let h = deg.rem_euclid(360.0);
    // rem_euclid can round up to exactly 360 for tiny negative inputs
    if h >= 360.0 {
        0.0
    } else {
        h
    }
}

/// Distance from the particle to its sensors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SensorOffset {
    Fixed(f64),
    /// Integer offset drawn uniformly from `lo..=hi` per agent per step.
    Range(u32, u32),
}

impl SensorOffset {
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            SensorOffset::Fixed(so) => so,
            SensorOffset::Range(lo, hi) => rng.gen_range(lo..=hi) as f64,
        }
    }
}

/// Sensor geometry shared by all particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorConfig {
    /// SA, degrees.
    pub sensor_angle: f64,
    /// RA, degrees.
    pub rotation_angle: f64,
    /// SO, cells.
    pub offset: SensorOffset,
}

impl SensorConfig {
    pub fn new(sensor_angle: f64, rotation_angle: f64, offset: SensorOffset) -> Result<Self> {
        if !(sensor_angle > 0.0 && sensor_angle <= 180.0) {
            return Err(Error::param("SA", "must lie in (0, 180]"));
        }
        if !(rotation_angle > 0.0 && rotation_angle <= 180.0) {
            return Err(Error::param("RA", "must lie in (0, 180]"));
        }
        match offset {
            SensorOffset::Fixed(so) if !(so >= 1.0 && so.is_finite()) => {
                return Err(Error::param("SO", "must be >= 1"));
            }
            SensorOffset::Range(lo, hi) if lo < 1 || lo > hi => {
                return Err(Error::param("SO_min", "range must satisfy 1 <= SO_min <= SO_max"));
            }
            _ => {}
        }
        Ok(Self {
            sensor_angle,
            rotation_angle,
            offset,
        })
    }
}

/// Readings of the left, front and right sensors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Readings {
    pub left: f64,
    pub front: f64,
    pub right: f64,
}

/// Sample the three sensors at distance `offset`. FL sits at
/// `heading + SA`, FR at `heading - SA`.
pub fn sense(
    p: &Particle,
    sensor_angle: f64,
    offset: f64,
    field: &TrailField,
    mask: Option<&IlluminationMask>,
) -> Readings {
    let (s, c) = p.heading.to_radians().sin_cos();
    let (sa, ca) = sensor_angle.to_radians().sin_cos();
    // flanks are the front direction rotated by +-SA
    let at = |s: f64, c: f64| sense_at(field, mask, p.x + offset * c, p.y + offset * s);
    Readings {
        left: at(s * ca + c * sa, c * ca - s * sa),
        front: at(s, c),
        right: at(s * ca - c * sa, c * ca + s * sa),
    }
}

/// New heading after the sensory stage.
///
/// Front strongest (ties included) keeps the heading; both flanks stronger
/// than the front turns by `±RA` at random; otherwise turns toward the
/// stronger flank.
pub fn orient<R: Rng + ?Sized>(heading: f64, r: Readings, rotation_angle: f64, rng: &mut R) -> f64 {
    let Readings { left, front, right } = r;
    let turn = if front >= left && front >= right {
        0.0
    } else if left > front && right > front {
        if rng.gen::<bool>() {
            rotation_angle
        } else {
            -rotation_angle
        }
    } else if left > right {
        rotation_angle
    } else if right > left {
        -rotation_angle
    } else {
        0.0
    };
    normalize_heading(heading + turn)
}

/// Result of a motor-stage attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Motion {
    Moved { x: usize, y: usize },
    Blocked,
}

/// Move one cell along the heading if the target cell is in bounds and
/// free (or is the particle's own cell). A successful move deposits
/// `deposit` at the new cell; a blocked move picks a uniform random heading.
pub fn attempt_move<R: Rng + ?Sized>(
    p: &mut Particle,
    slot: u32,
    occupancy: &mut OccupancyGrid,
    field: &mut TrailField,
    deposit: f64,
    rng: &mut R,
) -> Motion {
    let (s, c) = p.heading.to_radians().sin_cos();
    let (nx, ny) = (p.x + c, p.y + s);
    let (cx, cy) = (nx.floor() as i64, ny.floor() as i64);
    let (ox, oy) = p.cell();
    let free = occupancy.in_bounds(cx, cy)
        && ((cx as usize, cy as usize) == (ox, oy) || occupancy.is_empty(cx as usize, cy as usize));
    if !free {
        p.heading = normalize_heading(rng.gen_range(0.0..360.0));
        p.moved_last_step = false;
        return Motion::Blocked;
    }
    let (cx, cy) = (cx as usize, cy as usize);
    if (cx, cy) != (ox, oy) {
        occupancy.remove(ox, oy);
        occupancy.insert(cx, cy, slot);
    }
    p.x = nx;
    p.y = ny;
    field.add(cx, cy, deposit);
    p.moved_last_step = true;
    Motion::Moved { x: cx, y: cy }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn particle(x: f64, y: f64, heading: f64) -> Particle {
        Particle {
            id: 0,
            x,
            y,
            heading,
            moved_last_step: false,
        }
    }

    #[test]
    fn sensor_positions() {
        // Mark the three expected sample cells with distinct values.
        let mut f = TrailField::new(40, 40);
        let p = particle(20.5, 20.5, 0.0);
        let d = 5.0 * std::f64::consts::FRAC_1_SQRT_2;
        f.set((20.5 + 5.0) as usize, 20, 2.0);
        f.set((20.5 + d) as usize, (20.5 + d) as usize, 1.0);
        f.set((20.5 + d) as usize, (20.5 - d) as usize, 3.0);
        let r = sense(&p, 45.0, 5.0, &f, None);
        assert_eq!(r, Readings { left: 1.0, front: 2.0, right: 3.0 });
    }

    #[test]
    fn zero_field_reads_zero() {
        let f = TrailField::new(10, 10);
        let r = sense(&particle(5.0, 5.0, 123.0), 22.5, 3.0, &f, None);
        assert_eq!(r, Readings { left: 0.0, front: 0.0, right: 0.0 });
    }

    #[test]
    fn bright_front_cell_dominates() {
        let mut f = TrailField::new(30, 30);
        let p = particle(10.5, 10.5, 90.0);
        f.set(10, 17, 4.0);
        let r = sense(&p, 45.0, 7.0, &f, None);
        assert!(r.front > r.left && r.front > r.right);
    }

    #[test]
    fn orient_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = |l, f, rr| Readings { left: l, front: f, right: rr };
        assert_eq!(orient(90.0, r(1.0, 5.0, 1.0), 45.0, &mut rng), 90.0);
        assert_eq!(orient(90.0, r(5.0, 1.0, 1.0), 45.0, &mut rng), 135.0);
        assert_eq!(orient(90.0, r(1.0, 1.0, 5.0), 45.0, &mut rng), 45.0);
        assert_eq!(orient(10.0, r(1.0, 1.0, 5.0), 45.0, &mut rng), 325.0);
        // ties with the front keep heading
        assert_eq!(orient(90.0, r(5.0, 5.0, 1.0), 45.0, &mut rng), 90.0);
    }

    #[test]
    fn symmetric_flanks_turn_randomly() {
        let mut left = 0;
        let trials = 4000;
        for seed in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = orient(90.0, Readings { left: 5.0, front: 1.0, right: 5.0 }, 45.0, &mut rng);
            assert!(h == 45.0 || h == 135.0);
            if h == 135.0 {
                left += 1;
            }
        }
        let frac = left as f64 / trials as f64;
        assert!((frac - 0.5).abs() < 0.04, "{frac}");
    }

    #[test]
    fn move_deposits_on_success() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut occ = OccupancyGrid::new(20, 20);
        let mut f = TrailField::new(20, 20);
        let mut p = particle(10.0, 10.0, 0.0);
        occ.insert(10, 10, 0);
        let m = attempt_move(&mut p, 0, &mut occ, &mut f, 5.0, &mut rng);
        assert_eq!(m, Motion::Moved { x: 11, y: 10 });
        assert_eq!(f.get(11, 10), 5.0);
        assert_eq!(occ.get(11, 10), Some(0));
        assert!(occ.is_empty(10, 10));
        assert!(p.moved_last_step);
    }

    #[test]
    fn blocked_by_neighbour() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut occ = OccupancyGrid::new(20, 20);
        let mut f = TrailField::new(20, 20);
        let mut p = particle(10.5, 10.5, 0.0);
        occ.insert(10, 10, 0);
        occ.insert(11, 10, 1);
        let m = attempt_move(&mut p, 0, &mut occ, &mut f, 5.0, &mut rng);
        assert_eq!(m, Motion::Blocked);
        assert_eq!((p.x, p.y), (10.5, 10.5));
        assert_eq!(f.total(), 0.0);
        assert_ne!(p.heading, 0.0);
        assert!(!p.moved_last_step);
    }

    #[test]
    fn blocked_by_boundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut occ = OccupancyGrid::new(20, 20);
        let mut f = TrailField::new(20, 20);
        let mut p = particle(19.5, 3.5, 0.0);
        occ.insert(19, 3, 0);
        assert_eq!(attempt_move(&mut p, 0, &mut occ, &mut f, 5.0, &mut rng), Motion::Blocked);
        let mut q = particle(0.2, 3.5, 180.0);
        occ.insert(0, 3, 1);
        assert_eq!(attempt_move(&mut q, 1, &mut occ, &mut f, 5.0, &mut rng), Motion::Blocked);
    }

    #[test]
    fn sensor_config_validation() {
        assert!(SensorConfig::new(0.0, 45.0, SensorOffset::Fixed(5.0)).is_err());
        assert!(SensorConfig::new(45.0, 181.0, SensorOffset::Fixed(5.0)).is_err());
        assert!(SensorConfig::new(45.0, 45.0, SensorOffset::Fixed(0.5)).is_err());
        assert!(SensorConfig::new(45.0, 45.0, SensorOffset::Range(5, 3)).is_err());
        assert!(SensorConfig::new(90.0, 45.0, SensorOffset::Range(1, 19)).is_ok());
    }

    #[test]
    fn ranged_offset_stays_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let so = SensorOffset::Range(1, 19);
        let draws: Vec<f64> = (0..2000).map(|_| so.draw(&mut rng)).collect();
        assert!(draws.iter().all(|&d| (1.0..=19.0).contains(&d) && d.fract() == 0.0));
        assert!(draws.contains(&1.0) && draws.contains(&19.0));
    }

    #[test]
    fn heading_normalisation() {
        assert_eq!(normalize_heading(360.0), 0.0);
        assert_eq!(normalize_heading(-45.0), 315.0);
        assert_eq!(normalize_heading(-1e-300), 0.0);
        assert_eq!(normalize_heading(725.0), 5.0);
    }
}

use proptest::prelude::*;

use crate::agent::{normalize_heading, SensorOffset};
use crate::geometry::{convex_hull, euclidean_mst, hausdorff, Point, PointSet};
use crate::lattice::TrailField;
use crate::params::ModelParams;
use crate::population::{InoculationPattern, World};

fn grid_points(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((0i32..80, 0i32..80), 3..max)
        .prop_map(|v| PointSet::new(v.into_iter().map(|(x, y)| Point::new(x as f64, y as f64))))
}

fn plain_params(p: usize, so: f64) -> ModelParams {
    ModelParams {
        population: p,
        sensor_angle: 45.0,
        rotation_angle: 45.0,
        sensor_offset: SensorOffset::Fixed(so),
        deposit: 5.0,
        diffusion_window: 3,
        diffusion_damping: 0.1,
        attractant: None,
        repellent: None,
        illumination: None,
        growth: None,
        shrinkage: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_encloses_every_point(ps in grid_points(40)) {
        if let Ok(h) = convex_hull(&ps) {
            for p in &ps.points {
                prop_assert!(h.contains(*p, 1e-9));
            }
            prop_assert!(h.area() > 0.0);
        }
    }

    #[test]
    fn mst_spans_and_beats_a_star(ps in grid_points(30)) {
        let t = euclidean_mst(&ps).unwrap();
        prop_assert_eq!(t.edges.len(), ps.len() - 1);
        // any star is a spanning tree, so it can never be shorter
        let star: f64 = ps.points.iter().map(|p| p.dist(&ps.points[0])).sum();
        prop_assert!(t.total_length() <= star + 1e-9);
    }

    #[test]
    fn hausdorff_is_a_metric_on_samples(a in grid_points(15), b in grid_points(15)) {
        let ab = hausdorff(&a, &b).unwrap();
        prop_assert_eq!(ab, hausdorff(&b, &a).unwrap());
        prop_assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn heading_lands_in_range(deg in -1e6f64..1e6) {
        let h = normalize_heading(deg);
        prop_assert!((0.0..360.0).contains(&h));
        let turns = (deg - h) / 360.0;
        prop_assert!((turns - turns.round()).abs() < 1e-6);
    }

    #[test]
    fn diffusion_never_creates_mass(vals in prop::collection::vec(0.0f64..50.0, 15 * 12), d in 0.0f64..0.5) {
        let mut f = TrailField::from_values(15, 12, vals);
        let before = f.total();
        f.diffuse(3, d);
        prop_assert!(f.total() <= before * (1.0 - d) + 1e-9);
        prop_assert!(f.values().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn world_keeps_its_books(seed in any::<u64>(), p in 1usize..150, so in 1.0f64..9.0) {
        let mut w = World::new(24, 20, plain_params(p, so), Vec::new(), None, seed).unwrap();
        w.inoculate(&InoculationPattern::RandomEverywhere, p).unwrap();
        for _ in 0..60 {
            w.step();
        }
        prop_assert_eq!(w.population(), p);
        prop_assert_eq!(w.check_consistency(), Ok(()));
    }
}

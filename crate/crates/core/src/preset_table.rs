//! Every preset's parameters against the published parameter table.

use crate::scenario::find_preset;
use serde_json::Value;

const KEYS: [&str; 19] = [
    "p", "SA", "RA", "SO", "Dep_t", "D_w", "D_d", "proj_a", "proj_r", "L_w", "L_d", "G_f", "G_w", "G_min",
    "G_max", "S_f", "S_w", "S_min", "S_max",
];

// One row per preset, columns in KEYS order. "-" = parameter not used.
const TABLE: [(&str, [&str; 19]); 10] = [
    ("h-mask", ["10", "22.5", "45", "5", "5", "5", "0.1", "12.75", "-", "3", "0.9", "3", "9", "0", "15", "3", "5", "0", "24"]),
    ("h-nomask", ["10", "22.5", "45", "5", "5", "5", "0.1", "12.75", "-", "3", "0.9", "3", "9", "0", "15", "3", "5", "0", "24"]),
    ("hull-band-attract", ["800", "45", "45", "5", "15", "3", "0.1", "127", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-"]),
    ("hull-band-repel", ["1000", "60", "60", "5", "15", "3", "0.1", "-", "-127", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-"]),
    ("hull-self-organise", ["3000", "45", "45", "9", "0.01", "3", "0.07", "-", "-127", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-"]),
    ("concave-shrink", ["18000", "60", "60", "7", "5", "3", "0.05", "2.55", "-", "-", "-", "3", "9", "0", "20", "50", "9", "0", "80"]),
    ("alpha-growth", ["1000", "60", "60", "13", "5", "3", "0.1", "2.55", "-", "-", "-", "5", "9", "0", "30", "50", "9", "0", "80"]),
    ("concave-mst", ["1000", "90", "45", "1-19", "5", "3", "0.05", "5", "-", "-", "-", "3", "9", "0", "20", "10", "9", "0", "80"]),
    ("square-mst", ["1000", "90", "45", "1-19", "5", "3", "0.05", "5", "-", "-", "-", "3", "9", "0", "20", "10", "9", "0", "80"]),
    ("gmax-sweep", ["1000", "90", "45", "1-19", "5", "3", "0.05", "5", "-", "-", "-", "3", "9", "0", "5-30", "10", "9", "0", "80"]),
];

fn num(v: &Value, key: &str) -> Option<f64> {
    v.get(key).and_then(Value::as_f64)
}

#[test]
fn presets_match_the_parameter_table() {
    for (name, row) in TABLE {
        let s = find_preset(name).unwrap();
        let v = s.to_value();
        for (key, want) in KEYS.iter().zip(row) {
            match (*key, want) {
                (_, "-") => assert!(num(&v, key).is_none(), "{name}: {key} should be unset"),
                ("SO", "1-19") => {
                    assert!(num(&v, "SO").is_none(), "{name}: fixed SO");
                    assert_eq!(num(&v, "SO_min"), Some(1.0), "{name}");
                    assert_eq!(num(&v, "SO_max"), Some(19.0), "{name}");
                }
                ("G_max", "5-30") => {
                    let sweep = s.sweep.as_ref().expect("sweep");
                    assert_eq!(sweep.values, vec![5, 10, 20, 25, 30]);
                    assert_eq!(sweep.steps, vec![5000, 5000, 5000, 5000, 3000]);
                }
                _ => {
                    let want: f64 = want.parse().unwrap();
                    assert_eq!(num(&v, key), Some(want), "{name}: {key}");
                }
            }
        }
    }
}

#[test]
fn lattice_sizes_stay_within_published_range() {
    for (name, _) in TABLE {
        let s = find_preset(name).unwrap();
        assert!((150..=400).contains(&s.width) && (150..=400).contains(&s.height), "{name}");
    }
}

#[test]
fn gmax_sweep_expands_to_five_runs() {
    let s = find_preset("gmax-sweep").unwrap();
    let runs = s.expand_sweep();
    let g: Vec<usize> = runs.iter().map(|r| r.params.growth.unwrap().max).collect();
    assert_eq!(g, vec![5, 10, 20, 25, 30]);
    assert_eq!(runs.last().unwrap().run.steps, 3000);
}

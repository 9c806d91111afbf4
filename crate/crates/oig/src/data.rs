//! Bundled instance data.
//!
//! The repository ships the small TSPLIB instances used throughout the
//! guide and the test suite, together with the table of optimal TSP tour
//! lengths that the distance budgets are derived from. Everything here is
//! embedded at compile time so that examples work from any directory.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::instance::{build_instance, parse_nu_table, parse_tsplib, Instance, PrizeScheme};

/// Bundled TSPLIB files, by instance name.
pub const BUNDLED_TSP: &[(&str, &str)] = &[
    ("gr17", include_str!("../../../data/tsplib/gr17.tsp")),
    ("gr21", include_str!("../../../data/tsplib/gr21.tsp")),
    ("gr24", include_str!("../../../data/tsplib/gr24.tsp")),
    ("fri26", include_str!("../../../data/tsplib/fri26.tsp")),
    ("bayg29", include_str!("../../../data/tsplib/bayg29.tsp")),
    ("bays29", include_str!("../../../data/tsplib/bays29.tsp")),
];

/// The bundled optimal TSP tour length table (`name value` lines).
pub const NU_TABLE: &str = include_str!("../../../data/tsp_optima.txt");

/// Returns the raw contents of a bundled `.tsp` file.
pub fn bundled_tsp(name: &str) -> Option<&'static str> {
    BUNDLED_TSP.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses the bundled optimal-tour-length table.
pub fn nu_table() -> HashMap<String, u64> {
    parse_nu_table(NU_TABLE).expect("bundled table parses")
}

/// Builds one of the paper-style instances from bundled data: depot at
/// node 1, distance budget `floor(0.5 * nu)`.
///
/// Panics when `name` is not bundled; intended for tests, examples and
/// the guide.
pub fn paper_instance(name: &str, scheme: PrizeScheme, interdiction_budget: u32) -> Instance {
    let text = bundled_tsp(name).unwrap_or_else(|| panic!("no bundled instance `{name}`"));
    let raw = parse_tsplib(text).expect("bundled file parses");
    let nu = *nu_table().get(name).expect("bundled table entry");
    build_instance(&raw, scheme, interdiction_budget, 0.5, 0, nu).expect("valid instance")
}

/// A small reproducible random instance for property tests and
/// experiments: random prizes in 1..=100, distance budget at half the
/// exact TSP optimum, interdiction budget 2.
///
/// Even seeds draw points in the plane (metric distances); odd seeds draw
/// an arbitrary symmetric matrix, which typically violates the triangle
/// inequality and exercises the non-metric code paths.
pub fn synthetic_instance(n: usize, seed: u64) -> Instance {
    assert!((4..=16).contains(&n), "synthetic instances stay oracle-sized");
    let mut rng = StdRng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add(n as u64));
    let mut dist = vec![vec![0u32; n]; n];
    if seed % 2 == 0 {
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
            .collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let d = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
                let d = (d + 0.5).floor().max(1.0) as u32;
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
    } else {
        for i in 0..n {
            for j in (i + 1)..n {
                let d = rng.gen_range(5..=120);
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
    }
    let prizes: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=100)).collect();
    let mut inst = Instance {
        name: format!("synthetic-{n}-{seed}"),
        n,
        dist,
        prizes,
        depot: 0,
        distance_budget: 0,
        interdiction_budget: 2,
        tsp_optimum: 0,
        prize_scheme: PrizeScheme::Random,
    };
    let nu = crate::oracle::tsp_exact(&inst).expect("synthetic sizes fit the oracle");
    inst.tsp_optimum = nu;
    inst.distance_budget = nu / 2;
    inst
}

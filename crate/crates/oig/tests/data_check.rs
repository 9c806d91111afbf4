//! Integrity checks for the bundled TSPLIB matrices: a seeded multi-start
//! 2-opt + Or-opt heuristic must reproduce each instance's published
//! optimal tour length exactly — never above (the heuristic is strong
//! enough at these sizes) and never below (the value is a proven optimum,
//! so a shorter tour would mean the matrix is corrupt).

use oig::data::{nu_table, paper_instance, BUNDLED_TSP};
use oig::instance::PrizeScheme;
use oig::tour::{two_opt, Tour};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Or-opt: relocate segments of 1..=3 consecutive nodes, first improvement.
fn or_opt(tour: &Tour, inst: &oig::Instance) -> Tour {
    let mut nodes = tour.nodes().to_vec();
    let n = nodes.len();
    let mut improved = true;
    while improved {
        improved = false;
        'outer: for seg_len in 1..=3usize {
            for start in 0..n {
                for dest in 0..n {
                    let seg: Vec<usize> = (0..seg_len).map(|k| nodes[(start + k) % n]).collect();
                    if (dest + n - start) % n < seg_len + 1 {
                        continue;
                    }
                    let mut rest: Vec<usize> = Vec::with_capacity(n);
                    let mut i = (start + seg_len) % n;
                    while i != start {
                        rest.push(nodes[i]);
                        i = (i + 1) % n;
                    }
                    let dest_node = nodes[dest];
                    let pos = match rest.iter().position(|&v| v == dest_node) {
                        Some(p) => p,
                        None => continue,
                    };
                    let mut cand = rest.clone();
                    for (k, &v) in seg.iter().enumerate() {
                        cand.insert(pos + 1 + k, v);
                    }
                    if cycle_len(&cand, inst) < cycle_len(&nodes, inst) {
                        nodes = cand;
                        improved = true;
                        continue 'outer;
                    }
                }
            }
        }
    }
    Tour::new(nodes, inst)
}

fn cycle_len(nodes: &[usize], inst: &oig::Instance) -> u64 {
    let mut total = 0u64;
    for i in 0..nodes.len() {
        total += inst.dist[nodes[i]][nodes[(i + 1) % nodes.len()]] as u64;
    }
    total
}

#[test]
fn bundled_matrices_reproduce_published_optima() {
    let table = nu_table();
    let mut rng = StdRng::seed_from_u64(20240817);
    let mut failures = Vec::new();
    for &(name, _) in BUNDLED_TSP {
        let inst = paper_instance(name, PrizeScheme::Unit, 5);
        let nu = table[name];
        let mut best = u64::MAX;
        for _ in 0..400 {
            let mut order: Vec<usize> = (0..inst.n).collect();
            order.shuffle(&mut rng);
            let mut t = two_opt(&Tour::new(order, &inst), &inst);
            loop {
                let before = t.length();
                t = or_opt(&t, &inst);
                t = two_opt(&t, &inst);
                if t.length() >= before {
                    break;
                }
            }
            best = best.min(t.length());
            if best < nu {
                break;
            }
        }
        println!("{name}: best found {best}, published optimum {nu}");
        if best != nu {
            failures.push(format!("{name}: found {best}, expected {nu}"));
        }
        let _ = rng.gen::<u64>();
    }
    assert!(failures.is_empty(), "matrix integrity failures: {failures:?}");
}

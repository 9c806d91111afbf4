//! Scratch diagnostics for bundled matrix reconstruction (dev only).

use oig::data::{nu_table, paper_instance};
use oig::instance::PrizeScheme;
use oig::tour::{two_opt, Tour};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

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

fn best_tour(inst: &oig::Instance, restarts: usize, seed: u64) -> Tour {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut best: Option<Tour> = None;
    for _ in 0..restarts {
        let mut order: Vec<usize> = (0..inst.n).collect();
        order.shuffle(&mut rng);
        let mut t = two_opt(&Tour::new(order, inst), inst);
        loop {
            let before = t.length();
            t = or_opt(&t, inst);
            t = two_opt(&t, inst);
            if t.length() >= before {
                break;
            }
        }
        if best.as_ref().map_or(true, |b| t.length() < b.length()) {
            best = Some(t);
        }
    }
    best.unwrap()
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "gr21".into());
    let table = nu_table();
    let inst = paper_instance(&which, PrizeScheme::Unit, 5);
    let nu = table[&which];
    let t = best_tour(&inst, 600, 1);
    println!("{which}: best {} vs published {nu}", t.length());
    print!("tour:");
    for &v in t.nodes() {
        print!(" {}", v + 1);
    }
    println!();
    println!("edges:");
    let k = t.len();
    for i in 0..k {
        let a = t.nodes()[i];
        let b = t.nodes()[(i + 1) % k];
        println!("  d({},{}) = {}", a + 1, b + 1, inst.dist[a][b]);
    }
}

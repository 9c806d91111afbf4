//! Brute-force ground truth.
//!
//! Everything in this module favors being obviously correct over being
//! clever: a dense Held-Karp dynamic program for exact TSP lengths, a
//! budget-pruned subset dynamic program for the follower's orienteering
//! problem, and leader-side enumeration for the full game. The test
//! suites lean on these as independent oracles for the branch-and-cut
//! solvers, so none of the acceleration ideas used there may leak in
//! here.

use std::collections::HashMap;

use thiserror::Error;

use crate::instance::Instance;
use crate::tour::Tour;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance too large for the oracle: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("work bound exceeded: estimated {estimate} > bound {bound}")]
    WorkBound { estimate: u64, bound: u64 },
}

/// Hard cap for the subset dynamic programs: masks are kept in 32 bits.
const MAX_N: usize = 30;
/// Dense Held-Karp cap for exact TSP lengths.
const MAX_TSP_N: usize = 18;

/// Exact TSP tour length by dense Held-Karp dynamic programming.
pub fn tsp_exact(inst: &Instance) -> Result<u64, OracleError> {
    let n = inst.n;
    if n > MAX_TSP_N {
        return Err(OracleError::TooLarge { n, limit: MAX_TSP_N });
    }
    // Paths start at the depot; masks range over the other n-1 nodes.
    let depot = inst.depot;
    let others: Vec<usize> = (0..n).filter(|&v| v != depot).collect();
    let m = others.len();
    let full = (1usize << m) - 1;
    const INF: u32 = u32::MAX / 4;
    let mut dp = vec![INF; (full + 1) * m];
    for (bi, &v) in others.iter().enumerate() {
        dp[(1 << bi) * m + bi] = inst.dist[depot][v];
    }
    for mask in 1..=full {
        for last in 0..m {
            if mask & (1 << last) == 0 {
                continue;
            }
            let cur = dp[mask * m + last];
            if cur >= INF {
                continue;
            }
            for next in 0..m {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let cand = cur + inst.dist[others[last]][others[next]];
                let slot = &mut dp[(mask | (1 << next)) * m + next];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }
    let mut best = INF;
    for last in 0..m {
        let len = dp[full * m + last];
        if len < INF {
            best = best.min(len + inst.dist[others[last]][depot]);
        }
    }
    Ok(best as u64)
}

/// All budget-feasible node subsets of an instance, with the length of the
/// shortest depot cycle through each subset.
///
/// The table depends only on distances, the depot and the budget, never on
/// interdictions, so one table answers any number of `value` queries.
#[derive(Debug)]
pub struct OpTable {
    n: usize,
    depot: usize,
    /// (node mask, shortest cycle length, total prize of the mask)
    feasible: Vec<(u32, u32, u32)>,
}

/// Builds the feasible-subset table by a layered, budget-pruned
/// Held-Karp-style dynamic program over (subset, end node) states.
///
/// States whose path cannot possibly close within the budget are pruned:
/// any completion either returns straight to the depot or visits at least
/// one more unvisited node first, which bounds the completion length from
/// below without assuming the triangle inequality.
pub fn op_table(inst: &Instance) -> Result<OpTable, OracleError> {
    let n = inst.n;
    if n > MAX_N {
        return Err(OracleError::TooLarge { n, limit: MAX_N });
    }
    let depot = inst.depot;
    let budget = inst.distance_budget.min(u32::MAX as u64) as u32;

    let completion_lb = |end: usize, mask: u32| -> u32 {
        let direct = inst.dist[end][depot];
        let mut min_out = u32::MAX;
        let mut min_in = u32::MAX;
        for v in 0..n {
            if mask & (1 << v) == 0 {
                min_out = min_out.min(inst.dist[end][v]);
                min_in = min_in.min(inst.dist[v][depot]);
            }
        }
        if min_out == u32::MAX {
            direct
        } else {
            direct.min(min_out.saturating_add(min_in))
        }
    };

    let mut feasible: HashMap<u32, (u32, u32)> = HashMap::new();
    // current layer: (mask, end) -> shortest path length depot -> end
    let mut layer: HashMap<u64, u32> = HashMap::new();
    for v in 0..n {
        if v == depot {
            continue;
        }
        let len = inst.dist[depot][v];
        if len <= budget && len + completion_lb(v, (1 << depot) | (1 << v)) <= budget {
            let mask = (1u32 << depot) | (1 << v);
            layer.insert(((mask as u64) << 5) | v as u64, len);
        }
    }

    let key = |mask: u32, end: usize| ((mask as u64) << 5) | end as u64;

    while !layer.is_empty() {
        let mut next: HashMap<u64, u32> = HashMap::new();
        for (&k, &len) in &layer {
            let mask = (k >> 5) as u32;
            let end = (k & 31) as usize;
            // close the cycle
            let cyc = len + inst.dist[end][depot];
            if cyc <= budget && mask.count_ones() >= 3 {
                let entry = feasible.entry(mask).or_insert((u32::MAX, 0));
                if cyc < entry.0 {
                    entry.0 = cyc;
                }
            }
            // extend the path
            for v in 0..n {
                if mask & (1 << v) != 0 {
                    continue;
                }
                let nlen = len + inst.dist[end][v];
                let nmask = mask | (1 << v);
                if nlen > budget || nlen + completion_lb(v, nmask) > budget {
                    continue;
                }
                let slot = next.entry(key(nmask, v)).or_insert(u32::MAX);
                if nlen < *slot {
                    *slot = nlen;
                }
            }
        }
        layer = next;
    }

    let mut list: Vec<(u32, u32, u32)> = feasible
        .into_iter()
        .map(|(mask, (cyc, _))| {
            let prize: u32 = (0..n)
                .filter(|&v| mask & (1 << v) != 0)
                .map(|v| inst.prizes[v])
                .sum();
            (mask, cyc, prize)
        })
        .collect();
    list.sort_unstable();
    Ok(OpTable { n, depot, feasible: list })
}

impl OpTable {
    pub fn feasible_subsets(&self) -> usize {
        self.feasible.len()
    }

    /// Optimal follower value under a binary interdiction, together with
    /// the maximizing node subset (when any tour fits the budget).
    pub fn value(&self, inst: &Instance, z: &[bool]) -> (u64, Option<u32>) {
        let mut zmask = 0u32;
        for (v, &b) in z.iter().enumerate() {
            if b {
                zmask |= 1 << v;
            }
        }
        let zbits: Vec<usize> = (0..self.n).filter(|&v| zmask & (1 << v) != 0).collect();
        let mut best: u64 = 0;
        let mut best_mask: Option<u32> = None;
        for &(mask, _cyc, prize) in &self.feasible {
            let mut value = prize as u64;
            for &v in &zbits {
                if mask & (1 << v) != 0 {
                    value -= inst.prizes[v] as u64;
                }
            }
            if value > best || best_mask.is_none() {
                best = value;
                best_mask = Some(mask);
            }
        }
        (best, best_mask)
    }

    /// Shortest depot cycle through exactly the given subset, as a tour.
    pub fn extract_tour(&self, inst: &Instance, mask: u32) -> Tour {
        let members: Vec<usize> = (0..self.n).filter(|&v| mask & (1 << v) != 0).collect();
        let k = members.len();
        let di = members.iter().position(|&v| v == self.depot).expect("depot in subset");
        let others: Vec<usize> = (0..k).filter(|&i| i != di).collect();
        let m = others.len();
        let full = (1usize << m) - 1;
        const INF: u32 = u32::MAX / 4;
        let mut dp = vec![INF; (full + 1) * m];
        let mut parent = vec![usize::MAX; (full + 1) * m];
        for bi in 0..m {
            dp[(1 << bi) * m + bi] = inst.dist[self.depot][members[others[bi]]];
        }
        for mask in 1..=full {
            for last in 0..m {
                if mask & (1 << last) == 0 || dp[mask * m + last] >= INF {
                    continue;
                }
                for next in 0..m {
                    if mask & (1 << next) != 0 {
                        continue;
                    }
                    let cand =
                        dp[mask * m + last] + inst.dist[members[others[last]]][members[others[next]]];
                    let idx = (mask | (1 << next)) * m + next;
                    if cand < dp[idx] {
                        dp[idx] = cand;
                        parent[idx] = last;
                    }
                }
            }
        }
        let mut best_end = 0;
        let mut best_len = INF;
        for last in 0..m {
            let len = dp[full * m + last] + inst.dist[members[others[last]]][self.depot];
            if len < best_len {
                best_len = len;
                best_end = last;
            }
        }
        let mut order = vec![self.depot];
        let mut chain = Vec::new();
        let mut mask = full;
        let mut end = best_end;
        while end != usize::MAX {
            chain.push(members[others[end]]);
            let p = parent[mask * m + end];
            mask &= !(1 << end);
            end = p;
        }
        chain.reverse();
        order.extend(chain);
        Tour::new(order, inst)
    }
}

/// Exact follower optimum under a fixed interdiction: the maximum, over
/// budget-feasible depot subsets with at least three nodes, of the
/// uninterdicted prize; 0 with no tour when nothing fits.
pub fn op_exact(inst: &Instance, z: &[bool]) -> Result<(u64, Option<Tour>), OracleError> {
    let table = op_table(inst)?;
    let (value, mask) = table.value(inst, z);
    let tour = mask.map(|m| table.extract_tour(inst, m));
    Ok((value, tour))
}

/// Default work bound for [`oig_exact`]: the product of leader decisions
/// and feasible follower subsets that we are willing to scan.
pub const DEFAULT_WORK_BOUND: u64 = 4_000_000_000;

/// Exact leader optimum by enumeration.
///
/// With positive prizes the follower value is componentwise nonincreasing
/// in the interdiction vector, so some optimal leader decision uses
/// exactly `min(Q, n)` interdictions; only those are enumerated. The
/// equivalence with full enumeration is exercised by the test suite on
/// small instances.
pub fn oig_exact(inst: &Instance) -> Result<(u64, Vec<bool>), OracleError> {
    oig_exact_with_bound(inst, DEFAULT_WORK_BOUND)
}

pub fn oig_exact_with_bound(
    inst: &Instance,
    work_bound: u64,
) -> Result<(u64, Vec<bool>), OracleError> {
    let n = inst.n;
    let q = (inst.interdiction_budget as usize).min(n);
    let table = op_table(inst)?;
    let combos = binomial(n as u64, q as u64);
    let estimate = combos.saturating_mul(table.feasible_subsets().max(1) as u64);
    if estimate > work_bound {
        return Err(OracleError::WorkBound { estimate, bound: work_bound });
    }

    let mut best_value = u64::MAX;
    let mut best_z = vec![false; n];
    let mut combo: Vec<usize> = (0..q).collect();
    loop {
        let mut z = vec![false; n];
        for &i in &combo {
            z[i] = true;
        }
        let (value, _) = table.value(inst, &z);
        if value < best_value {
            best_value = value;
            best_z = z;
        }
        // next q-combination of 0..n in lexicographic order
        if q == 0 {
            break;
        }
        let mut i = q;
        loop {
            if i == 0 {
                return Ok((best_value, best_z));
            }
            i -= 1;
            if combo[i] != i + n - q {
                break;
            }
        }
        combo[i] += 1;
        for j in (i + 1)..q {
            combo[j] = combo[j - 1] + 1;
        }
    }
    Ok((best_value, best_z))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u64 = 1;
    for i in 0..k {
        result = result.saturating_mul(n - i) / (i + 1);
    }
    result
}

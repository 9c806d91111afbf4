//! Graph machinery shared by the separation routines: a canonical edge
//! numbering for the complete graph, maximum flow / minimum cut, and
//! maximum-weight spanning forests.

/// Canonical numbering of the undirected edges of a complete graph on
/// `n` nodes: edge `{i, j}` with `i < j` gets index
/// `i * n - i * (i + 1) / 2 + (j - i - 1)`.
#[derive(Debug, Clone, Copy)]
pub struct EdgeIds {
    n: usize,
}

impl EdgeIds {
    pub fn new(n: usize) -> Self {
        EdgeIds { n }
    }

    pub fn count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j && i < self.n && j < self.n);
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a * self.n - a * (a + 1) / 2 + (b - a - 1)
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        // Walk the row lengths; n stays small enough that this never shows
        // up in profiles.
        let mut a = 0;
        let mut offset = e;
        loop {
            let row = self.n - a - 1;
            if offset < row {
                return (a, a + 1 + offset);
            }
            offset -= row;
            a += 1;
        }
    }

    /// Iterator over all `(edge index, i, j)` triples with `i < j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (self.index(i, j), i, j)))
    }
}

/// A capacitated directed network for max-flow computations.
///
/// Undirected support-graph edges are modeled as two opposite arcs with
/// equal capacity.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    /// arcs[a] = (from, to, capacity); reverse arcs are created implicitly.
    arcs: Vec<(usize, usize, f64)>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { n, arcs: Vec::new() }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: f64) {
        debug_assert!(capacity >= 0.0);
        self.arcs.push((from, to, capacity));
    }

    pub fn add_undirected(&mut self, a: usize, b: usize, capacity: f64) {
        self.add_arc(a, b, capacity);
        self.add_arc(b, a, capacity);
    }
}

/// Result of a max-flow computation: the flow value and the source side
/// of an induced minimum cut.
#[derive(Debug, Clone)]
pub struct MinCut {
    pub value: f64,
    pub source_side: Vec<bool>,
}

/// Edmonds-Karp maximum flow; returns the flow value together with the
/// minimum cut given by the nodes reachable from `source` in the final
/// residual network.
pub fn max_flow_min_cut(net: &FlowNetwork, source: usize, sink: usize) -> MinCut {
    const EPS: f64 = 1e-9;
    let n = net.n;
    // adjacency of residual arcs: each input arc becomes a forward arc and
    // a zero-capacity reverse arc right after it.
    let mut head = Vec::with_capacity(net.arcs.len() * 2);
    let mut cap = Vec::with_capacity(net.arcs.len() * 2);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v, c) in &net.arcs {
        adj[u].push(head.len());
        head.push(v);
        cap.push(c);
        adj[v].push(head.len());
        head.push(u);
        cap.push(0.0);
    }

    let mut value = 0.0;
    let mut parent_arc = vec![usize::MAX; n];
    loop {
        // BFS for a shortest augmenting path.
        for p in parent_arc.iter_mut() {
            *p = usize::MAX;
        }
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(source);
        let mut seen = vec![false; n];
        seen[source] = true;
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &a in &adj[u] {
                let v = head[a];
                if !seen[v] && cap[a] > EPS {
                    seen[v] = true;
                    parent_arc[v] = a;
                    queue.push_back(v);
                }
            }
        }
        if !seen[sink] {
            let mut source_side = seen;
            source_side[source] = true;
            return MinCut { value, source_side };
        }
        // bottleneck along the path
        let mut bottleneck = f64::INFINITY;
        let mut v = sink;
        while v != source {
            let a = parent_arc[v];
            bottleneck = bottleneck.min(cap[a]);
            v = head[a ^ 1];
        }
        let mut v = sink;
        while v != source {
            let a = parent_arc[v];
            cap[a] -= bottleneck;
            cap[a ^ 1] += bottleneck;
            v = head[a ^ 1];
        }
        value += bottleneck;
    }
}

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when both ends were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Kruskal maximum-weight spanning forest over the given weighted edges.
///
/// Returns the indices (into `edges`) of the chosen edges. Ties are broken
/// by the input order, so callers control determinism by sorting their
/// edge lists canonically.
pub fn max_weight_spanning_forest(n: usize, edges: &[(usize, usize, f64)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&a, &b| {
        edges[b].2.partial_cmp(&edges[a].2).unwrap().then_with(|| a.cmp(&b))
    });
    let mut uf = UnionFind::new(n);
    let mut chosen = Vec::new();
    for idx in order {
        let (u, v, _) = edges[idx];
        if uf.union(u, v) {
            chosen.push(idx);
        }
    }
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn edge_ids_round_trip() {
        let ids = EdgeIds::new(9);
        let mut seen = vec![false; ids.count()];
        for i in 0..9 {
            for j in (i + 1)..9 {
                let e = ids.index(i, j);
                assert_eq!(ids.index(j, i), e);
                assert_eq!(ids.endpoints(e), (i, j));
                assert!(!seen[e]);
                seen[e] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn single_arc_flow() {
        let mut net = FlowNetwork::new(2);
        net.add_arc(0, 1, 3.0);
        let cut = max_flow_min_cut(&net, 0, 1);
        assert!((cut.value - 3.0).abs() < 1e-9);
        assert_eq!(cut.source_side, vec![true, false]);
    }

    #[test]
    fn parallel_paths_flow() {
        // two 2-arc paths with capacities 1 and 2
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 1.0);
        net.add_arc(1, 3, 1.0);
        net.add_arc(0, 2, 2.0);
        net.add_arc(2, 3, 2.0);
        let cut = max_flow_min_cut(&net, 0, 3);
        assert!((cut.value - 3.0).abs() < 1e-9);
    }

    #[test]
    fn flow_matches_exhaustive_cut_enumeration() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(3..=7);
            let mut net = FlowNetwork::new(n);
            let mut caps = vec![vec![0.0f64; n]; n];
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.6) {
                        let c = rng.gen_range(0..=10) as f64;
                        caps[u][v] += c;
                        net.add_arc(u, v, c);
                    }
                }
            }
            let (s, t) = (0, n - 1);
            let cut = max_flow_min_cut(&net, s, t);
            // minimum s-t cut over all 2^(n-2) side assignments
            let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
            let mut best = f64::INFINITY;
            for mask in 0..(1u32 << others.len()) {
                let mut side = vec![false; n];
                side[s] = true;
                for (bit, &v) in others.iter().enumerate() {
                    side[v] = mask & (1 << bit) != 0;
                }
                let mut total = 0.0;
                for u in 0..n {
                    for v in 0..n {
                        if side[u] && !side[v] {
                            total += caps[u][v];
                        }
                    }
                }
                best = best.min(total);
            }
            assert!(
                (cut.value - best).abs() < 1e-6,
                "flow {} vs exhaustive min cut {best}",
                cut.value
            );
            // strong duality: the reported cut capacity equals the flow value
            let mut cut_cap = 0.0;
            for u in 0..n {
                for v in 0..n {
                    if cut.source_side[u] && !cut.source_side[v] {
                        cut_cap += caps[u][v];
                    }
                }
            }
            assert!((cut.value - cut_cap).abs() < 1e-6);
        }
    }

    #[test]
    fn forest_picks_heaviest_triangle_edges() {
        let edges = vec![(0, 1, 1.0), (1, 2, 0.8), (0, 2, 0.1)];
        let chosen = max_weight_spanning_forest(3, &edges);
        assert_eq!(chosen, vec![0, 1]);
    }

    #[test]
    fn forest_weight_matches_exhaustive_enumeration() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let n = 8;
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.55) {
                        edges.push((i, j, rng.gen_range(0..=100) as f64 / 10.0));
                    }
                }
            }
            edges.truncate(16);
            let chosen = max_weight_spanning_forest(n, &edges);
            let chosen_weight: f64 = chosen.iter().map(|&e| edges[e].2).sum();
            let best = best_forest_weight(n, &edges);
            assert!(
                (chosen_weight - best).abs() < 1e-9,
                "kruskal {chosen_weight} vs brute force {best}"
            );
        }
    }

    /// Brute force: maximum-weight cycle-free edge subset (a maximum-weight
    /// spanning forest, since all weights here are nonnegative).
    fn best_forest_weight(n: usize, edges: &[(usize, usize, f64)]) -> f64 {
        let mut best = 0.0f64;
        for mask in 0..(1u64 << edges.len()) {
            let mut uf = UnionFind::new(n);
            let mut weight = 0.0;
            let mut acyclic = true;
            for (idx, &(u, v, w)) in edges.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    if !uf.union(u, v) {
                        acyclic = false;
                        break;
                    }
                    weight += w;
                }
            }
            if acyclic {
                best = best.max(weight);
            }
        }
        best
    }
}

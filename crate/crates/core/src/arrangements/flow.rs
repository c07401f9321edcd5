//! Integer max-flow (Dinic) on undirected capacitated graphs.

use std::collections::VecDeque;

/// Undirected network. Each edge is a pair of opposite arcs sharing one
/// capacity: arc `2k` and arc `2k + 1` are mutual reverses.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    to: Vec<usize>,
    cap: Vec<u64>,
    flow: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { n, to: Vec::new(), cap: Vec::new(), flow: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    /// Returns the index of the edge.
    pub fn add_undirected(&mut self, u: usize, v: usize, cap: u64) -> usize {
        let k = self.to.len() / 2;
        self.to.extend([v, u]);
        self.cap.extend([cap, cap]);
        self.flow.extend([0, 0]);
        self.adj[u].push(2 * k);
        self.adj[v].push(2 * k + 1);
        k
    }

    fn residual(&self, a: usize) -> u64 {
        (self.cap[a] as i64 - self.flow[a]) as u64
    }

    fn push(&mut self, a: usize, f: i64) {
        self.flow[a] += f;
        self.flow[a ^ 1] -= f;
    }

    fn levels(&self, s: usize) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.n];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if level[v] == u32::MAX && self.residual(a) > 0 {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, pushed: u64, level: &[u32], it: &mut [usize]) -> u64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.adj[u].len() {
            let a = self.adj[u][it[u]];
            let v = self.to[a];
            let r = self.residual(a);
            if r > 0 && level[v] == level[u] + 1 {
                let got = self.augment(v, t, pushed.min(r), level, it);
                if got > 0 {
                    self.push(a, got as i64);
                    return got;
                }
            }
            it[u] += 1;
        }
        0
    }

    /// Maximum `s`-`t` flow, stopping early once it exceeds `limit`.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: Option<u64>) -> u64 {
        let mut total = 0u64;
        loop {
            if limit.is_some_and(|l| total > l) {
                return total;
            }
            let level = self.levels(s);
            if level[t] == u32::MAX {
                return total;
            }
            let mut it = vec![0; self.n];
            loop {
                let f = self.augment(s, t, u64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    /// Vertices reachable from `s` in the residual network.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l != u32::MAX).collect()
    }

    /// Edges with one endpoint on each side of the residual cut.
    pub fn cut_edges(&self, s: usize) -> Vec<usize> {
        let side = self.source_side(s);
        (0..self.to.len() / 2)
            .filter(|&k| side[self.to[2 * k + 1]] != side[self.to[2 * k]])
            .collect()
    }

    /// Split the current flow into unit `s`-`t` paths (edge index lists).
    /// Valid when every edge has capacity 1 or the flow is integral.
    pub fn unit_paths(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut flow = self.flow.clone();
        let mut paths = Vec::new();
        loop {
            let mut prev = vec![usize::MAX; self.n];
            let mut seen = vec![false; self.n];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if !seen[v] && flow[a] > 0 {
                        seen[v] = true;
                        prev[v] = a;
                        q.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return paths;
            }
            let mut path = Vec::new();
            let mut v = t;
            while v != s {
                let a = prev[v];
                flow[a] -= 1;
                flow[a ^ 1] += 1;
                path.push(a / 2);
                v = self.to[a ^ 1];
            }
            path.reverse();
            paths.push(path);
        }
    }
}

/// Result of a minimum edge cut computation between two vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCut {
    pub value: u64,
    /// Cut edges, as indices into the input edge list.
    pub edges: Vec<usize>,
    /// Edge-disjoint (weight-respecting) paths certifying the value, as
    /// input edge index lists.
    pub paths: Vec<Vec<usize>>,
}

/// Minimum total weight of edges separating `sources` from `sinks`.
pub fn min_edge_cut(
    n: usize,
    edges: &[(usize, usize)],
    weights: &[u64],
    sources: &[usize],
    sinks: &[usize],
) -> EdgeCut {
    let mut net = FlowNetwork::new(n);
    for (&(u, v), &w) in edges.iter().zip(weights) {
        net.add_undirected(u, v, w);
    }
    let big = weights.iter().sum::<u64>() + 1;
    let s = net.add_node();
    let t = net.add_node();
    for &x in sources {
        net.add_undirected(s, x, big);
    }
    for &x in sinks {
        net.add_undirected(x, t, big);
    }
    let value = net.max_flow(s, t, None);
    let m = edges.len();
    let cut = net.cut_edges(s).into_iter().filter(|&k| k < m).collect();
    let paths = net
        .unit_paths(s, t)
        .into_iter()
        .map(|p| p.into_iter().filter(|&k| k < m).collect())
        .collect();
    EdgeCut { value, edges: cut, paths }
}

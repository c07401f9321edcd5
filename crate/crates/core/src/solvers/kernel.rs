//! Exact multiterminal cut on large sparse-cut graphs through a kernel.
//!
//! With `ub` the weight of a known feasible cut, no optimal cut separates
//! two vertices whose local edge connectivity exceeds `ub`, so such pairs
//! are contracted. Parallel edges between clusters merge by adding their
//! weights, a non-terminal of degree one is dropped, and a non-terminal
//! with two neighbours is bypassed by one edge of the lighter weight. The
//! kernel is then solved by plain enumeration and its witness expanded back
//! to original edges. Each step preserves the optimum.

use std::collections::{BTreeMap, BTreeSet};

use super::{brute_min_multiterminal_edges, Caps, OptimumCertificate, ProblemTag};
use crate::arrangements::flow::{min_edge_cut, FlowNetwork};
use crate::arrangements::{unit_disk_graph, verify_multiterminal_cut};
use crate::error::{Error, Result};
use crate::gadgets::DiskInstance;
use crate::graphs::{MultiterminalInstance, UnionFind};

/// Reduced instance with the original edges behind each kernel edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Kernel {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<u64>,
    pub terminals: Vec<usize>,
    /// Original edges removed when a kernel edge is cut.
    pub members: Vec<Vec<usize>>,
    /// Weight of the feasible cut used for contraction.
    pub upper_bound: u64,
}

/// Union of the isolating cuts, one per terminal against all others.
fn isolating_cuts(n: usize, edges: &[(usize, usize)], weights: &[u64], terminals: &[usize]) -> Vec<usize> {
    let mut cut = BTreeSet::new();
    for &t in terminals {
        let rest: Vec<usize> = terminals.iter().copied().filter(|&x| x != t).collect();
        cut.extend(min_edge_cut(n, edges, weights, &[t], &rest).edges);
    }
    cut.into_iter().collect()
}

/// Contract pairs whose edge connectivity exceeds `ub`.
fn contract(n: usize, edges: &[(usize, usize)], weights: &[u64], ub: u64) -> UnionFind {
    let mut adj: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); n];
    for (&(u, v), &w) in edges.iter().zip(weights) {
        if u != v {
            *adj[u].entry(v).or_default() += w;
            *adj[v].entry(u).or_default() += w;
        }
    }
    let mut uf = UnionFind::new(n);
    // the direct edge and the two-edge paths through common neighbours are
    // edge-disjoint, which bounds the connectivity from below
    for u in 0..n {
        for (&v, &w) in adj[u].range(u + 1..) {
            let (small, big) = if adj[u].len() <= adj[v].len() { (u, v) } else { (v, u) };
            let mut lb = w;
            for (x, &a) in &adj[small] {
                if let Some(&b) = adj[big].get(x) {
                    lb += a.min(b);
                }
            }
            if lb > ub {
                uf.union(u, v);
            }
        }
    }
    // exact connectivity between the remaining adjacent clusters
    let (cn, ce, cw) = quotient(n, edges, weights, &mut uf);
    let mut net = FlowNetwork::new(cn);
    for (&(a, b), &w) in ce.iter().zip(&cw) {
        net.add_undirected(a, b, w);
    }
    let rep: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let ids = cluster_ids(&rep);
    let mut witness = vec![usize::MAX; cn];
    for v in 0..n {
        let c = ids[&rep[v]];
        if witness[c] == usize::MAX {
            witness[c] = v;
        }
    }
    for &(a, b) in &ce {
        let mut f = net.clone();
        if f.max_flow(a, b, Some(ub)) > ub {
            uf.union(witness[a], witness[b]);
        }
    }
    uf
}

fn cluster_ids(rep: &[usize]) -> BTreeMap<usize, usize> {
    let mut ids = BTreeMap::new();
    for &r in rep {
        let k = ids.len();
        ids.entry(r).or_insert(k);
    }
    ids
}

/// Graph on clusters with parallel edges merged; loops dropped.
fn quotient(n: usize, edges: &[(usize, usize)], weights: &[u64], uf: &mut UnionFind) -> (usize, Vec<(usize, usize)>, Vec<u64>) {
    let rep: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let ids = cluster_ids(&rep);
    let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (&(u, v), &w) in edges.iter().zip(weights) {
        let (a, b) = (ids[&rep[u]], ids[&rep[v]]);
        if a != b {
            *merged.entry((a.min(b), a.max(b))).or_default() += w;
        }
    }
    let (ce, cw) = merged.into_iter().unzip();
    (ids.len(), ce, cw)
}

/// Kernel of a multiterminal cut instance with at least two terminals.
pub fn kernelize(n: usize, edges: &[(usize, usize)], weights: &[u64], terminals: &[usize]) -> Result<Kernel> {
    let feasible = isolating_cuts(n, edges, weights, terminals);
    let ub: u64 = feasible.iter().map(|&e| weights[e]).sum();
    let mut uf = contract(n, edges, weights, ub);
    let rep: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let ids = cluster_ids(&rep);
    let cluster = |v: usize| ids[&rep[v]];
    let tset: BTreeSet<usize> = terminals.iter().map(|&t| cluster(t)).collect();
    if tset.len() != terminals.len() {
        return Err(Error::Numeric("contraction merged two terminals".into()));
    }
    let mut kedges: BTreeMap<(usize, usize), (u64, Vec<usize>)> = BTreeMap::new();
    for (e, (&(u, v), &w)) in edges.iter().zip(weights).enumerate() {
        let (a, b) = (cluster(u), cluster(v));
        if a != b {
            let slot = kedges.entry((a.min(b), a.max(b))).or_default();
            slot.0 += w;
            slot.1.push(e);
        }
    }
    loop {
        let mut nbrs: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for &(a, b) in kedges.keys() {
            nbrs.entry(a).or_default().push((a, b));
            nbrs.entry(b).or_default().push((a, b));
        }
        let Some((&x, inc)) = nbrs.iter().find(|(x, inc)| !tset.contains(x) && inc.len() <= 2) else {
            break;
        };
        let inc = inc.clone();
        let removed: Vec<(u64, Vec<usize>)> = inc.iter().map(|k| kedges.remove(k).expect("listed edge")).collect();
        if let [ea, eb] = inc.as_slice() {
            let other = |(p, q): (usize, usize)| if p == x { q } else { p };
            let (a, b) = (other(*ea), other(*eb));
            let (w, mem) = removed
                .into_iter()
                .min_by(|p, q| p.0.cmp(&q.0).then_with(|| p.1.cmp(&q.1)))
                .expect("two edges");
            let slot = kedges.entry((a.min(b), a.max(b))).or_default();
            slot.0 += w;
            slot.1.extend(mem);
            slot.1.sort_unstable();
        }
    }
    let mut nodes: BTreeSet<usize> = tset.clone();
    for &(a, b) in kedges.keys() {
        nodes.insert(a);
        nodes.insert(b);
    }
    let index: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut out = Kernel { n: nodes.len(), upper_bound: ub, ..Default::default() };
    out.terminals = terminals.iter().map(|&t| index[&cluster(t)]).collect();
    for ((a, b), (w, mem)) in kedges {
        out.edges.push((index[&a], index[&b]));
        out.weights.push(w);
        out.members.push(mem);
    }
    Ok(out)
}

/// Search nodes allowed per ground-set element of the cap.
const NODES_PER_GROUND: u64 = 1 << 20;

/// Exact minimum multiway cut of the kernel as a terminal labelling found
/// by branch and bound. Returns the cut kernel edges.
fn label_search(k: &Kernel, caps: &Caps) -> Result<Vec<usize>> {
    let n = k.n;
    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for (&(a, b), &w) in k.edges.iter().zip(&k.weights) {
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    // terminals first, then breadth-first so each vertex meets labelled
    // neighbours early
    let mut order = k.terminals.clone();
    let mut seen = vec![false; n];
    for &t in &k.terminals {
        seen[t] = true;
    }
    let mut head = 0;
    while order.len() < n {
        if head == order.len() {
            let v = (0..n).find(|&v| !seen[v]).expect("vertices remain");
            seen[v] = true;
            order.push(v);
        }
        let u = order[head];
        head += 1;
        for &(v, _) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    let classes = k.terminals.len();
    let mut s = Search {
        adj: &adj,
        order: &order,
        classes,
        label: vec![usize::MAX; n],
        best: k.upper_bound + 1,
        best_label: Vec::new(),
        nodes: 0,
        budget: NODES_PER_GROUND * caps.ground as u64,
    };
    for (c, &t) in k.terminals.iter().enumerate() {
        s.label[t] = c;
    }
    s.run(k.terminals.len(), 0)?;
    if s.best_label.is_empty() {
        return Err(Error::Numeric("no labelling within the feasible bound".into()));
    }
    Ok((0..k.edges.len())
        .filter(|&e| s.best_label[k.edges[e].0] != s.best_label[k.edges[e].1])
        .collect())
}

struct Search<'a> {
    adj: &'a [Vec<(usize, u64)>],
    order: &'a [usize],
    classes: usize,
    label: Vec<usize>,
    best: u64,
    best_label: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Cost of giving `v` class `c` against its labelled neighbours.
    fn cost(&self, v: usize, c: usize) -> u64 {
        self.adj[v]
            .iter()
            .filter(|&&(x, _)| self.label[x] != usize::MAX && self.label[x] != c)
            .map(|&(_, w)| w)
            .sum()
    }

    /// Unlabelled vertices pay at least their cheapest class against the
    /// labelled ones; those payments use disjoint edges.
    fn bound(&self, pos: usize) -> u64 {
        self.order[pos..]
            .iter()
            .map(|&v| (0..self.classes).map(|c| self.cost(v, c)).min().unwrap_or(0))
            .sum()
    }

    fn run(&mut self, pos: usize, cost: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::CapExceeded(format!("labelling search passed {} nodes", self.budget)));
        }
        if pos == self.order.len() {
            if cost < self.best {
                self.best = cost;
                self.best_label = self.label.clone();
            }
            return Ok(());
        }
        if cost + self.bound(pos) >= self.best {
            return Ok(());
        }
        let v = self.order[pos];
        let mut tries: Vec<(u64, usize)> = (0..self.classes).map(|c| (self.cost(v, c), c)).collect();
        tries.sort_unstable();
        for (extra, c) in tries {
            if cost + extra >= self.best {
                break;
            }
            self.label[v] = c;
            self.run(pos + 1, cost + extra)?;
            self.label[v] = usize::MAX;
        }
        Ok(())
    }
}

/// Exact minimum multiterminal cut through [`kernelize`]. Small kernels are
/// enumerated by cardinality; larger ones are labelled by branch and bound
/// under a node budget scaled by the ground cap.
pub fn solve_multiterminal_kernelized(
    problem: ProblemTag,
    n: usize,
    edges: &[(usize, usize)],
    weights: &[u64],
    terminals: &[usize],
    caps: &Caps,
) -> Result<(OptimumCertificate, Kernel)> {
    if terminals.len() <= 1 {
        let c = OptimumCertificate { problem, value: Some(0), witness: Vec::new(), searched: 0 };
        return Ok((c, Kernel { n, terminals: terminals.to_vec(), ..Default::default() }));
    }
    let k = kernelize(n, edges, weights, terminals)?;
    let (kcut, searched) = if k.edges.len() <= caps.ground {
        let kc = brute_min_multiterminal_edges(problem, k.n, &k.edges, &k.weights, &k.terminals, caps)?;
        (kc.witness, kc.searched)
    } else {
        (label_search(&k, caps)?, k.edges.len() as u64)
    };
    let value: u64 = kcut.iter().map(|&e| k.weights[e]).sum();
    let mut witness: Vec<usize> = kcut.iter().flat_map(|&e| k.members[e].iter().copied()).collect();
    witness.sort_unstable();
    let cost: u64 = witness.iter().map(|&e| weights[e]).sum();
    if cost != value || !verify_multiterminal_cut(n, edges, weights, terminals, &witness, value)?.accept {
        return Err(Error::Numeric("expanded kernel witness does not verify".into()));
    }
    let c = OptimumCertificate { problem, value: Some(value), witness, searched };
    Ok((c, k))
}

/// Minimum multiterminal cut of a plane graph through the kernel.
pub fn solve_multiterminal(i: &MultiterminalInstance, caps: &Caps) -> Result<OptimumCertificate> {
    let g = &i.graph;
    Ok(solve_multiterminal_kernelized(ProblemTag::Multiterminal, g.n(), g.edges(), &i.weights, &i.terminals, caps)?.0)
}

/// Minimum unit-disk multiterminal cut; the witness lists edge ids of the
/// intersection graph.
pub fn solve_udmc(inst: &DiskInstance, caps: &Caps) -> Result<OptimumCertificate> {
    let edges = unit_disk_graph(&inst.centers(), &inst.radius);
    let w = vec![1; edges.len()];
    Ok(solve_multiterminal_kernelized(ProblemTag::Udmc, inst.disks.len(), &edges, &w, &inst.terminals, caps)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::brute_min_multiterminal_edges;

    #[test]
    fn chains_collapse() {
        // two terminals joined by three unit paths of length four
        let mut edges = Vec::new();
        let mut n = 2;
        for _ in 0..3 {
            let mut prev = 0;
            for _ in 0..3 {
                edges.push((prev, n));
                prev = n;
                n += 1;
            }
            edges.push((prev, 1));
        }
        let w = vec![1; edges.len()];
        let k = kernelize(n, &edges, &w, &[0, 1]).unwrap();
        assert_eq!((k.n, k.edges.clone(), k.weights.clone()), (2, vec![(0, 1)], vec![3]));
        assert_eq!(k.members[0].len(), 3);
    }

    #[test]
    fn dense_blocks_contract() {
        // two K5 blocks joined by two edges, one terminal in each
        let mut edges = Vec::new();
        for base in [0, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((1, 6));
        edges.push((2, 7));
        let w = vec![1; edges.len()];
        let (c, k) = solve_multiterminal_kernelized(ProblemTag::Multiterminal, 10, &edges, &w, &[0, 9], &Caps::default()).unwrap();
        assert_eq!(c.value, Some(2));
        assert_eq!(k.n, 2);
        assert_eq!(c.witness, vec![20, 21]);
    }

    #[test]
    fn agrees_with_plain_enumeration() {
        let edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 4), (4, 3), (4, 5), (5, 2)];
        let w = vec![2, 1, 3, 1, 2, 1, 1, 2, 1];
        for t in [vec![0, 2], vec![0, 4, 5], vec![1, 3, 5]] {
            let caps = Caps::default();
            let plain = brute_min_multiterminal_edges(ProblemTag::Multiterminal, 6, &edges, &w, &t, &caps).unwrap();
            let (ker, _) = solve_multiterminal_kernelized(ProblemTag::Multiterminal, 6, &edges, &w, &t, &caps).unwrap();
            assert_eq!(plain.value, ker.value, "terminals {t:?}");
            let k = kernelize(6, &edges, &w, &t).unwrap();
            let cut = label_search(&k, &caps).unwrap();
            assert_eq!(Some(cut.iter().map(|&e| k.weights[e]).sum()), plain.value);
        }
    }
}

#[cfg(test)]
mod udmc_tests {
    use super::*;
    use crate::gadgets::synth_udmc_instance;
    use crate::geometry::{compute_params, ParamMode, Point2, ToyOverrides};
    use crate::graphs::PlanarEmbeddedGraph;
    use crate::gridembed::GridEmbedding;
    use crate::scalar::rat;
    use crate::solvers::brute_min_multiterminal_cut;

    #[test]
    fn udmc_optimum_matches_source() {
        let o = ToyOverrides { r: Some(rat(1, 40)), s: Some(rat(1, 10)), a: Some(rat(1, 5)), ..Default::default() };
        let p = compute_params(4, ParamMode::Toy, &o).unwrap();
        let coords = vec![Point2::new(0, 0), Point2::new(1, 0), Point2::new(2, 0), Point2::new(1, 1)];
        let g = PlanarEmbeddedGraph::from_coords(4, vec![(0, 1), (1, 2), (1, 3)], &coords).unwrap();
        let emb = GridEmbedding { coords, grid_size: 4 };
        let i = MultiterminalInstance::new(g, vec![0, 2, 3], Some(vec![2, 3, 1])).unwrap();
        let want = brute_min_multiterminal_cut(&i, &Caps::default()).unwrap().value;
        let u = synth_udmc_instance(&i, &emb, &p).unwrap();
        let c = solve_udmc(&u.instance, &Caps::default()).unwrap();
        assert_eq!(c.value, want);
        let graph = u.graph();
        let lifted = u.lift(&graph, &c.witness).unwrap();
        assert_eq!(lifted, vec![0, 2]);
    }
}

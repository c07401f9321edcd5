//! Verification machinery: intersection graphs, the segment arrangement
//! used for separation checks, nerve homology for complement
//! connectivity, and budgeted certificate verification.

pub mod flow;
mod segments;

pub use segments::{ArrangementFaceMap, Cycle};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadgets::{check_subset, DiskInstance};
use crate::geometry::{disks_intersect, triple_intersection_nonempty};
use crate::graphs::UnionFind;
use crate::scalar::{floor, Rational, Scalar};
use crate::RPoint;

/// Index pairs `(i, j)`, `i < j`, of intersecting closed radius-`r` disks,
/// sorted. Centers are bucketed into `2r` square cells so only
/// neighbouring cells are compared; pairs far from the threshold in
/// floating point are settled there and the rest are decided exactly.
pub fn unit_disk_graph(centers: &[RPoint], r: &Rational) -> Vec<(usize, usize)> {
    let w = r * Rational::from_integer(2.into());
    let mut cells: BTreeMap<(num_bigint::BigInt, num_bigint::BigInt), Vec<usize>> = BTreeMap::new();
    for (i, c) in centers.iter().enumerate() {
        cells.entry((floor(&(&c.x / &w)), floor(&(&c.y / &w)))).or_default().push(i);
    }
    let approx: Vec<(f64, f64)> = centers.iter().map(|c| (c.x.to_f64_lossy(), c.y.to_f64_lossy())).collect();
    let wf = w.to_f64_lossy();
    // Some(answer) when floating point settles the pair with a wide margin
    let settle = |i: usize, j: usize| {
        let (a, b) = (approx[i], approx[j]);
        let scale = 1.0 + a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs());
        let d = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
        let slack = wf * 1e-9 + 1e-12 * scale;
        if d > wf + slack {
            Some(false)
        } else if d < wf - slack {
            Some(true)
        } else {
            None
        }
    };
    let one = num_bigint::BigInt::from(1);
    let mut out = Vec::new();
    for ((x, y), list) in &cells {
        // this cell, then the four neighbours after it in scan order
        let later = [(x.clone(), y + &one), (x + &one, y - &one), (x + &one, y.clone()), (x + &one, y + &one)];
        for (a, &i) in list.iter().enumerate() {
            let others = list[a + 1..]
                .iter()
                .chain(later.iter().filter_map(|k| cells.get(k)).flatten());
            for &j in others {
                if settle(i, j).unwrap_or_else(|| disks_intersect(&centers[i], &centers[j], r)) {
                    out.push((i.min(j), i.max(j)));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Nerve 2-skeleton of a family of closed radius-`r` disks.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
}

impl NerveComplex {
    pub fn build(centers: &[RPoint], r: &Rational) -> Self {
        let edges = unit_disk_graph(centers, r);
        let mut adj = vec![Vec::new(); centers.len()];
        for &(i, j) in &edges {
            adj[i].push(j);
        }
        let mut triangles = Vec::new();
        for &(i, j) in &edges {
            // adjacency lists are sorted, so k > j
            for &k in adj[j].iter() {
                if adj[i].binary_search(&k).is_ok()
                    && triple_intersection_nonempty([&centers[i], &centers[j], &centers[k]], r)
                {
                    triangles.push((i, j, k));
                }
            }
        }
        NerveComplex { vertices: centers.len(), edges, triangles }
    }

    /// First Betti number over GF(2) of the subcomplex induced by the
    /// vertices marked `alive` (all vertices if `None`).
    pub fn first_betti(&self, alive: Option<&[bool]>) -> usize {
        let live = |v: usize| alive.is_none_or(|a| a[v]);
        let mut edge_id = BTreeMap::new();
        let mut uf = UnionFind::new(self.vertices);
        for &(i, j) in &self.edges {
            if live(i) && live(j) {
                let k = edge_id.len();
                edge_id.insert((i, j), k);
                uf.union(i, j);
            }
        }
        let nv = (0..self.vertices).filter(|&v| live(v)).count();
        let comps = (0..self.vertices).filter(|&v| live(v) && uf.find(v) == v).count();
        let cycles = edge_id.len() + comps - nv;
        let words = edge_id.len().div_ceil(64);
        let rows: Vec<Vec<u64>> = self
            .triangles
            .iter()
            .filter(|&&(i, j, k)| live(i) && live(j) && live(k))
            .map(|&(i, j, k)| {
                let mut row = vec![0u64; words];
                for e in [(i, j), (i, k), (j, k)] {
                    let b = edge_id[&e];
                    row[b / 64] ^= 1 << (b % 64);
                }
                row
            })
            .collect();
        cycles - gf2_rank(rows)
    }
}

/// Rank over GF(2) of bit-packed rows.
pub fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut pivots: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for row in rows.iter_mut() {
        loop {
            let Some(lead) = leading_bit(row) else { break };
            match pivots.get(&lead) {
                Some(p) => {
                    for (a, b) in row.iter_mut().zip(p) {
                        *a ^= b;
                    }
                }
                None => {
                    pivots.insert(lead, row.clone());
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}

/// Number of bounded components of the complement of the union.
pub fn complement_first_betti(centers: &[RPoint], r: &Rational) -> usize {
    NerveComplex::build(centers, r).first_betti(None)
}

/// Outcome of a certificate check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub accept: bool,
    pub reason: String,
}

impl Verdict {
    pub fn accept() -> Self {
        Verdict { accept: true, reason: "ok".into() }
    }

    pub fn reject(reason: impl Into<String>) -> Self {
        Verdict { accept: false, reason: reason.into() }
    }
}

/// Face of the candidate arrangement holding each instance point.
pub fn point_faces(inst: &DiskInstance, candidate: &[usize]) -> Result<(ArrangementFaceMap, Vec<usize>)> {
    let centers = inst.subset_centers(candidate)?;
    let arr = ArrangementFaceMap::build(&centers, &inst.radius);
    let faces = inst.points.iter().map(|p| arr.locate_point(p)).collect::<Result<_>>()?;
    Ok((arr, faces))
}

/// Accept iff the candidate fits the budget and no two points share a face
/// of the arrangement of its center segments.
pub fn verify_isolation(inst: &DiskInstance, candidate: &[usize], budget: u64) -> Result<Verdict> {
    check_subset(candidate, inst.disks.len())?;
    if candidate.len() as u64 > budget {
        return Ok(Verdict::reject(format!("budget: {} disks exceed {budget}", candidate.len())));
    }
    let (_, faces) = point_faces(inst, candidate)?;
    let mut seen = BTreeMap::new();
    for (i, &f) in faces.iter().enumerate() {
        if let Some(j) = seen.insert(f, i) {
            return Ok(Verdict::reject(format!("points {j} and {i} share face {f}")));
        }
    }
    Ok(Verdict::accept())
}

/// Accept iff the candidate fits the budget and the remaining disks leave
/// a connected complement.
pub fn verify_acc(inst: &DiskInstance, candidate: &[usize], budget: u64) -> Result<Verdict> {
    check_subset(candidate, inst.disks.len())?;
    if candidate.len() as u64 > budget {
        return Ok(Verdict::reject(format!("budget: {} disks exceed {budget}", candidate.len())));
    }
    let mut alive = vec![true; inst.disks.len()];
    for &i in candidate {
        alive[i] = false;
    }
    let rest: Vec<RPoint> = (0..inst.disks.len()).filter(|&i| alive[i]).map(|i| inst.disks[i].center.clone()).collect();
    match complement_first_betti(&rest, &inst.radius) {
        0 => Ok(Verdict::accept()),
        b => Ok(Verdict::reject(format!("complement has {b} bounded cells"))),
    }
}

/// Accept iff the removed edges weigh at most `budget` and leave every
/// terminal in its own component.
pub fn verify_multiterminal_cut(
    n: usize,
    edges: &[(usize, usize)],
    weights: &[u64],
    terminals: &[usize],
    removed: &[usize],
    budget: u64,
) -> Result<Verdict> {
    check_subset(removed, edges.len())?;
    if let Some(&t) = terminals.iter().find(|&&t| t >= n) {
        return Err(Error::Structural(format!("terminal {t} out of range")));
    }
    let cost: u64 = removed.iter().map(|&e| weights[e]).sum();
    if cost > budget {
        return Ok(Verdict::reject(format!("budget: cut weight {cost} exceeds {budget}")));
    }
    let mut gone = vec![false; edges.len()];
    for &e in removed {
        gone[e] = true;
    }
    let mut uf = UnionFind::new(n);
    for (e, &(u, v)) in edges.iter().enumerate() {
        if !gone[e] {
            uf.union(u, v);
        }
    }
    let mut seen = BTreeMap::new();
    for &t in terminals {
        if let Some(s) = seen.insert(uf.find(t), t) {
            return Ok(Verdict::reject(format!("terminals {s} and {t} stay connected")));
        }
    }
    Ok(Verdict::accept())
}

/// Unit-disk multiterminal cut: the graph is the intersection graph of the
/// instance disks, with edges numbered as in [`unit_disk_graph`].
pub fn verify_udmc(inst: &DiskInstance, removed: &[usize], budget: u64) -> Result<Verdict> {
    let edges = unit_disk_graph(&inst.centers(), &inst.radius);
    let weights = vec![1; edges.len()];
    verify_multiterminal_cut(inst.disks.len(), &edges, &weights, &inst.terminals, removed, budget)
}

/// For each point in a bounded face of the candidate arrangement: whether
/// the candidate disks bounding that face contain a cycle of the unit-disk
/// graph. Points in the unbounded face map to `None`.
pub fn enclosing_cycles(inst: &DiskInstance, candidate: &[usize]) -> Result<Vec<Option<bool>>> {
    let (arr, faces) = point_faces(inst, candidate)?;
    let centers = inst.subset_centers(candidate)?;
    Ok(faces
        .iter()
        .map(|&f| {
            if f == 0 {
                return None;
            }
            let mut ids: Vec<usize> = arr.enclosing_sources(f).into_iter().flat_map(|(a, b)| [a, b]).collect();
            ids.sort_unstable();
            ids.dedup();
            let sub: Vec<RPoint> = ids.iter().map(|&i| centers[i].clone()).collect();
            let e = unit_disk_graph(&sub, &inst.radius);
            let mut uf = UnionFind::new(sub.len());
            Some(e.iter().any(|&(a, b)| !uf.union(a, b)))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Isolation,
    Acc,
    Udmc,
}

/// A claimed solution: disk ids for isolation and acc, unit-disk-graph
/// edge ids for udmc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub problem: Problem,
    pub candidate: Vec<usize>,
    pub budget: u64,
}

pub fn verify_certificate(inst: &DiskInstance, cert: &Certificate) -> Result<Verdict> {
    match cert.problem {
        Problem::Isolation => verify_isolation(inst, &cert.candidate, cert.budget),
        Problem::Acc => verify_acc(inst, &cert.candidate, cert.budget),
        Problem::Udmc => verify_udmc(inst, &cert.candidate, cert.budget),
    }
}

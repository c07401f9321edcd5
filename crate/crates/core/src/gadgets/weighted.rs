//! Weighted edge gadgets: `w` parallel lanes of disks between two clusters
//! of perturbed endpoint copies.

use super::runs::{fill_run, Frame, Run, RunPath};
use super::instance::DiskInstance;
use super::isolation::check_drawing;
use super::vertex::{copy_offset, synth_mc_vertex_gadget};
use crate::arrangements::unit_disk_graph;
use crate::error::{Error, Result};
use crate::geometry::point::dist_sq;
use crate::geometry::{Disk, ParamSet, Point2, Provenance};
use crate::scalar::{int, rat, Rational, Scalar};
use crate::graphs::MultiterminalInstance;
use crate::gridembed::GridEmbedding;
use crate::{RDisk, RPoint};

use serde_json::json;

/// Largest edge weight a gadget can carry.
pub const MAX_WEIGHT: u64 = 5;

/// Disks of one weighted edge gadget. `ends[0]` and `ends[1]` index the
/// endpoint copies at `u` and at `v`.
#[derive(Clone, Debug)]
pub struct WeightedEdgeGadget {
    pub edge: usize,
    pub weight: u64,
    pub disks: Vec<RDisk>,
    pub ends: [Vec<usize>; 2],
}

/// Lateral offset of lane `j` out of `w`, in units of `r`: `(j - (w-1)/2) * 11/5`.
pub fn lane_offset(j: u64, w: u64, r: &Rational) -> Rational {
    (int(2 * j as i64) - int(w as i64 - 1)) * rat(11, 10) * r
}

/// Straight fill from `a` to `b` whose steps lie in `[11r/10, 19r/10]`.
fn lane_fill(a: &RPoint, b: &RPoint, r: &Rational) -> Result<Option<Run>> {
    let len2 = dist_sq(a, b);
    let (lo, hi) = (r * rat(11, 10), r * rat(19, 10));
    let lenf = len2.to_f64_lossy().sqrt();
    let guess = (lenf / (r * rat(9, 5)).to_f64_lossy()).ceil().max(1.0) as u64;
    for steps in [guess, guess + 1, guess.saturating_sub(1)] {
        if steps == 0 {
            continue;
        }
        let s2 = &len2 / int((steps * steps) as i64);
        if s2 >= &lo * &lo && s2 <= &hi * &hi {
            return Ok(fill_run(a, b, steps - 1));
        }
    }
    Err(Error::Synthesis("a weighted lane segment has no admissible step".into()))
}

/// Gadget of weight `w` for the segment `u -> v`.
pub fn synth_weighted_edge_gadget(edge: usize, u: &RPoint, v: &RPoint, w: u64, p: &ParamSet) -> Result<WeightedEdgeGadget> {
    if !(1..=MAX_WEIGHT).contains(&w) {
        return Err(Error::Restriction(format!("edge {edge} has weight {w}, outside 1..=5")));
    }
    if u == v {
        return Err(Error::Structural(format!("edge {edge} has coincident endpoints")));
    }
    let r = &p.r;
    let frame = Frame::segment(u, v);
    let len = &frame.len;
    let eu = Point2::new(&p.s + r, int(0));
    let ev = Point2::new(len - &p.s - r, int(0));
    let span = len - int(2) * (&p.s + &p.a);
    if span <= int(0) {
        return Err(Error::Synthesis(format!("edge {edge}: constraint (1): no room for weighted lanes")));
    }
    let four_r2_local = int(4) * r * r / &frame.kappa;
    let mut disks = Vec::new();
    let mut ends = [Vec::new(), Vec::new()];
    for (end, e) in [&eu, &ev].into_iter().enumerate() {
        for copy in 0..w as usize {
            ends[end].push(disks.len());
            disks.push(Disk::new(&frame.map(e) + &copy_offset(copy, r), Provenance::EndCopy { edge, end, copy }));
        }
    }
    for lane in 0..w {
        let eta = lane_offset(lane, w, r);
        let a = Point2::new(&p.s + &p.a, eta.clone());
        let b = Point2::new(len - &p.s - &p.a, eta);
        let mut runs = vec![Run::single(eu.clone())];
        runs.extend(lane_fill(&eu, &a, r)?);
        runs.push(Run::single(a.clone()));
        runs.extend(lane_fill(&a, &b, r)?);
        runs.push(Run::single(b.clone()));
        runs.extend(lane_fill(&b, &ev, r)?);
        runs.push(Run::single(ev.clone()));
        let local = RunPath::new(runs);
        if let Some((i, j)) = local.simple_path_violation(&four_r2_local) {
            return Err(Error::Synthesis(format!("edge {edge}, lane {lane}: disks {i} and {j} break the simple path")));
        }
        let n = local.len();
        for (index, q) in local.iter().enumerate().skip(1).take(n - 2) {
            disks.push(Disk::new(frame.map(&q), Provenance::Lane { edge, lane: lane as usize, index: index - 1 }));
        }
    }
    Ok(WeightedEdgeGadget { edge, weight: w, disks, ends })
}

/// Multiterminal cut instance in disk form, with the owner of every disk.
#[derive(Clone, Debug)]
pub struct UdmcLayout {
    /// Terminals are the centroid disks of the terminal vertices.
    pub instance: DiskInstance,
    /// Source edge owning each disk, `None` for vertex gadget disks.
    pub edge_of_disk: Vec<Option<usize>>,
    /// Centroid disk id of each vertex.
    pub centroids: Vec<usize>,
}

impl UdmcLayout {
    /// Intersection graph of the disks, in the order certificates use.
    pub fn graph(&self) -> Vec<(usize, usize)> {
        unit_disk_graph(&self.instance.centers(), &self.instance.radius)
    }

    /// Source edges owning a removed disk-graph edge.
    pub fn lift(&self, graph: &[(usize, usize)], removed: &[usize]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for &k in removed {
            let &(a, b) = graph
                .get(k)
                .ok_or_else(|| Error::Structural(format!("disk graph edge {k} out of range")))?;
            if let Some(e) = self.edge_of_disk[a].or(self.edge_of_disk[b]) {
                out.push(e);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Disk instance for a restricted multiterminal cut instance: a sixteen-fold
/// vertex gadget per vertex and a weighted edge gadget per edge. Gadgets
/// touch only where an endpoint copy meets the gadget of its own vertex.
pub fn synth_udmc_instance(i: &MultiterminalInstance, emb: &GridEmbedding, p: &ParamSet) -> Result<UdmcLayout> {
    i.check_restricted()?;
    let g = &i.graph;
    let vertices = check_drawing(g, emb, p)?;
    let mut disks: Vec<RDisk> = Vec::new();
    let mut owner: Vec<Owner> = Vec::new();
    let mut centroids = Vec::with_capacity(g.n());
    for (v, c) in vertices.iter().enumerate() {
        centroids.push(disks.len());
        let gadget = synth_mc_vertex_gadget(v, c, p)?;
        owner.extend(std::iter::repeat_n(Owner::Vertex(v), gadget.len()));
        disks.extend(gadget);
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let gadget = synth_weighted_edge_gadget(e, &vertices[a], &vertices[b], i.weights[e], p)?;
        let base = disks.len();
        for (k, d) in gadget.disks.into_iter().enumerate() {
            let o = match d.prov {
                Provenance::EndCopy { end, .. } => Owner::End(e, if end == 0 { a } else { b }),
                _ => Owner::Edge(e),
            };
            owner.push(o);
            disks.push(d);
            debug_assert_eq!(disks.len(), base + k + 1);
        }
    }
    let centers: Vec<RPoint> = disks.iter().map(|d| d.center.clone()).collect();
    let mut attached = vec![false; disks.len()];
    for (x, y) in unit_disk_graph(&centers, &p.r) {
        let ok = match (owner[x], owner[y]) {
            (Owner::Vertex(u), Owner::Vertex(v)) => u == v,
            (Owner::Vertex(u), Owner::End(_, v)) | (Owner::End(_, v), Owner::Vertex(u)) => {
                if u == v {
                    attached[x] = true;
                    attached[y] = true;
                }
                u == v
            }
            (Owner::End(e, _) | Owner::Edge(e), Owner::End(f, _) | Owner::Edge(f)) => e == f,
            (Owner::Vertex(_), Owner::Edge(_)) | (Owner::Edge(_), Owner::Vertex(_)) => false,
        };
        if !ok {
            return Err(Error::Synthesis(format!("disks {x} ({:?}) and {y} ({:?}) of different gadgets intersect", disks[x].prov, disks[y].prov)));
        }
    }
    if let Some(k) = (0..disks.len()).find(|&k| matches!(owner[k], Owner::End(..)) && !attached[k]) {
        return Err(Error::Synthesis(format!("endpoint copy {k} misses its vertex gadget")));
    }
    let edge_of_disk = owner
        .iter()
        .map(|o| match *o {
            Owner::End(e, _) | Owner::Edge(e) => Some(e),
            Owner::Vertex(_) => None,
        })
        .collect();
    let mut instance = DiskInstance::new(p.r.clone(), disks, Vec::new());
    instance.terminals = i.terminals.iter().map(|&t| centroids[t]).collect();
    instance.params = Some(p.clone());
    instance.origin = Some(json!({
        "reduction": "mc-to-udmc",
        "vertices": g.n(),
        "edges": g.m(),
        "weights": i.weights,
        "centroids": centroids,
    }));
    Ok(UdmcLayout { instance, edge_of_disk, centroids })
}

#[derive(Clone, Copy, Debug)]
enum Owner {
    Vertex(usize),
    /// Endpoint copy of an edge gadget at the given vertex.
    End(usize, usize),
    Edge(usize),
}

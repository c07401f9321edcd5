//! Feedback-vertex-set gadgets. Each edge becomes one simple disk path
//! between the center disks of its endpoints; near a vertex the path leaves
//! the center along an axis-aligned spur, follows a circular arc at its own
//! radius and turns outward along the edge.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, TAU};

use serde_json::json;

use super::edge::synth_edge_gadget_with;
use super::instance::DiskInstance;
use super::isolation::check_drawing;
use super::runs::{circle_point, Frame};
use crate::arrangements::unit_disk_graph;
use crate::error::{Error, Result};
use crate::geometry::{Disk, ParamSet, Point2, Provenance};
use crate::graphs::PlanarEmbeddedGraph;
use crate::gridembed::GridEmbedding;
use crate::scalar::{ceil_u64, int, Rational, Scalar};
use crate::{RDisk, RPoint};

/// Largest vertex degree the gadget supports.
pub const MAX_FVS_DEGREE: usize = 4;

/// Route from a center disk to the first disk of one incident edge gadget.
#[derive(Clone, Debug)]
pub struct FvsRoute {
    /// Axis direction of the spur, in quarter turns from +x.
    pub port: usize,
    /// Arc radius is `level * s / 5`.
    pub level: usize,
    pub ccw: bool,
    /// Spur, arc and outward disks, from the center towards the edge.
    pub centers: Vec<RPoint>,
}

/// Vertex gadget: center disk plus one route per incident edge, in the
/// order of `dirs`.
#[derive(Clone, Debug)]
pub struct FvsVertexGadget {
    pub center: RPoint,
    pub routes: Vec<FvsRoute>,
}

struct Cand {
    route: FvsRoute,
    approx: Vec<(f64, f64)>,
    cost: f64,
}

fn axis(port: usize) -> (i64, i64) {
    [(1, 0), (0, 1), (-1, 0), (0, -1)][port]
}

/// Number of equal steps covering `span` with step length in
/// `[lo20 * r / 20, 2r]`; `None` when no count fits.
fn radial_steps(span: &Rational, r: &Rational, lo20: i64) -> Option<u64> {
    let lo = r * Rational::new(lo20.into(), 20.into());
    let hi = r * int(2);
    let n = ceil_u64(&(span / &hi)).ok()?.max(1);
    (span / int(n as i64) >= lo).then_some(n)
}

/// One candidate route; `out` is the frame of the edge leaving the vertex.
fn candidate(v: &RPoint, out: &Frame, phi: f64, port: usize, level: usize, ccw: bool, p: &ParamSet) -> Option<Cand> {
    let r = &p.r;
    let rho = &p.s * Rational::new((level as i64).into(), 5.into());
    let (ax, ay) = axis(port);
    let mut centers = Vec::new();
    let n = radial_steps(&rho, r, 29)?;
    for j in 1..=n {
        let t = &rho * Rational::new((j as i64).into(), (n as i64).into());
        centers.push(Point2::new(&v.x + &t * int(ax), &v.y + &t * int(ay)));
    }
    let psi = port as f64 * FRAC_PI_2;
    let span = if ccw { (phi - psi).rem_euclid(TAU) } else { (psi - phi).rem_euclid(TAU) };
    let rf = r.to_f64_lossy();
    let rhof = rho.to_f64_lossy();
    let arc_len = rhof * span;
    if arc_len >= 1.1 * rf {
        let m = (arc_len / (1.8 * rf)).ceil().max(1.0) as usize;
        for i in 1..=m {
            let a = psi + if ccw { 1.0 } else { -1.0 } * span * i as f64 / m as f64;
            centers.push(circle_point(v, &rho, a));
        }
    }
    // outward along the edge up to its first disk at s + r
    let end = &p.s + r;
    let gap = &end - &rho;
    if gap <= int(0) {
        return None;
    }
    // steps below 29r/20 are safe only where the route runs straight on;
    // the simple-path check rejects bad corners
    let k = radial_steps(&gap, r, 29).or_else(|| radial_steps(&gap, r, 22))?;
    for j in 1..k {
        let xi = &rho + &gap * Rational::new((j as i64).into(), (k as i64).into());
        centers.push(out.map(&Point2::new(xi, int(0))));
    }
    let approx = centers.iter().map(|c| c.to_f64()).collect();
    Some(Cand { route: FvsRoute { port, level, ccw, centers }, approx, cost: arc_len + level as f64 * 1e-9 })
}

/// Cells of side `2r` for approximate neighbour queries.
struct Grid {
    cell: f64,
    map: HashMap<(i64, i64), Vec<usize>>,
}

impl Grid {
    fn new(pts: &[(f64, f64)], cell: f64) -> Self {
        let mut map: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            map.entry(((x / cell).floor() as i64, (y / cell).floor() as i64)).or_default().push(i);
        }
        Grid { cell, map }
    }

    fn near(&self, q: (f64, f64)) -> impl Iterator<Item = usize> + '_ {
        let (cx, cy) = ((q.0 / self.cell).floor() as i64, (q.1 / self.cell).floor() as i64);
        (-1..=1)
            .flat_map(move |dx| (-1..=1).map(move |dy| (cx + dx, cy + dy)))
            .flat_map(move |k| self.map.get(&k).into_iter().flatten().copied())
    }
}

fn close(a: (f64, f64), b: (f64, f64), lim: f64) -> bool {
    (a.0 - b.0).hypot(a.1 - b.1) <= lim
}

/// Path `center, route..., edge_first` is simple up to a safety margin.
fn route_ok(c: &Cand, center: (f64, f64), first: (f64, f64), r: f64) -> bool {
    let mut pts = vec![center];
    pts.extend(&c.approx);
    pts.push(first);
    let lim = 2.0 * r * (1.0 + 1e-7);
    let grid = Grid::new(&pts, 2.0 * r);
    for (i, &q) in pts.iter().enumerate() {
        for j in grid.near(q) {
            if j > i + 1 && close(q, pts[j], lim) {
                return false;
            }
        }
        if i + 1 < pts.len() && !close(q, pts[i + 1], 2.0 * r * (1.0 - 1e-7)) {
            return false;
        }
    }
    true
}

/// Two routes (with their edge first disks) stay apart.
fn compatible(a: &Cand, fa: (f64, f64), b: &Cand, fb: (f64, f64), r: f64) -> bool {
    if a.route.port == b.route.port || a.route.level == b.route.level {
        return false;
    }
    let lim = 2.0 * r * (1.0 + 1e-7);
    let mut pb = b.approx.clone();
    pb.push(fb);
    let grid = Grid::new(&pb, 2.0 * r);
    let na = a.approx.len();
    a.approx.iter().chain([&fa]).enumerate().all(|(i, &q)| {
        grid.near(q).all(|j| (i == na && j == pb.len() - 1) || !close(q, pb[j], lim))
    })
}

/// Routes for the edges leaving `v` with the given frames. Ports, arc
/// levels and orientations are chosen by exhaustive search for the
/// shortest total arc length among layouts whose routes stay apart.
pub fn synth_fvs_vertex_gadget(v: &RPoint, frames: &[Frame], p: &ParamSet) -> Result<FvsVertexGadget> {
    let d = frames.len();
    if d > MAX_FVS_DEGREE {
        return Err(Error::Restriction(format!("degree {d} exceeds {MAX_FVS_DEGREE}")));
    }
    let rf = p.r.to_f64_lossy();
    let center = v.to_f64();
    let firsts: Vec<(f64, f64)> = frames.iter().map(|f| f.map(&Point2::new(&p.s + &p.r, int(0))).to_f64()).collect();
    let phis: Vec<f64> = frames.iter().map(|f| {
        let (x, y) = f.dir.to_f64();
        y.atan2(x)
    }).collect();
    for levels in [d, MAX_FVS_DEGREE] {
        let cands: Vec<Vec<Cand>> = (0..d)
            .map(|k| {
                let mut out = Vec::new();
                for port in 0..4 {
                    for level in 1..=levels {
                        for ccw in [true, false] {
                            if let Some(c) = candidate(v, &frames[k], phis[k], port, level, ccw, p) {
                                if route_ok(&c, center, firsts[k], rf) {
                                    out.push(c);
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut pick = Vec::new();
        search(&cands, &firsts, rf, 0, 0.0, &mut pick, &mut best);
        if let Some((_, choice)) = best {
            let routes = choice.iter().enumerate().map(|(k, &c)| cands[k][c].route.clone()).collect();
            return Ok(FvsVertexGadget { center: v.clone(), routes });
        }
    }
    Err(Error::Synthesis(format!("no disjoint routing for a vertex of degree {d} with these parameters")))
}

fn search(
    cands: &[Vec<Cand>],
    firsts: &[(f64, f64)],
    r: f64,
    k: usize,
    cost: f64,
    pick: &mut Vec<usize>,
    best: &mut Option<(f64, Vec<usize>)>,
) {
    if best.as_ref().is_some_and(|(b, _)| cost >= *b) {
        return;
    }
    if k == cands.len() {
        *best = Some((cost, pick.clone()));
        return;
    }
    for (i, c) in cands[k].iter().enumerate() {
        if pick.iter().enumerate().all(|(j, &pj)| compatible(&cands[j][pj], firsts[j], c, firsts[k], r)) {
            pick.push(i);
            search(cands, firsts, r, k + 1, cost + c.cost, pick, best);
            pick.pop();
        }
    }
}

/// ACC instance with the disk ids of every route, for lifting.
#[derive(Clone, Debug)]
pub struct AccLayout {
    pub instance: DiskInstance,
    /// Center disk id of each vertex.
    pub centers: Vec<usize>,
    /// Disk ids of the path of each edge, from its first to its second
    /// endpoint (center disks excluded).
    pub paths: Vec<Vec<usize>>,
}

impl AccLayout {
    /// Source vertex for each removed disk: a center maps to its vertex, a
    /// path disk to the first endpoint of its edge.
    pub fn lift(&self, g: &PlanarEmbeddedGraph, removed: &[usize]) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.instance.disks.len()];
        for (v, &c) in self.centers.iter().enumerate() {
            owner[c] = v;
        }
        for (e, path) in self.paths.iter().enumerate() {
            for &k in path {
                owner[k] = g.edge(e).0;
            }
        }
        let mut out: Vec<usize> = removed.iter().filter_map(|&k| owner.get(k).copied()).filter(|&v| v != usize::MAX).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// All-cells-connection instance for `g` drawn by `emb`: one simple disk
/// path per edge between the center disks of its endpoints.
pub fn synth_acc_instance(g: &PlanarEmbeddedGraph, emb: &GridEmbedding, p: &ParamSet) -> Result<AccLayout> {
    let vertices = check_drawing(g, emb, p)?;
    if g.max_degree() > MAX_FVS_DEGREE {
        return Err(Error::Restriction(format!("maximum degree {} exceeds {MAX_FVS_DEGREE}", g.max_degree())));
    }
    if !g.is_simple() {
        return Err(Error::Restriction("the graph must be simple".into()));
    }
    // route k at vertex v serves the k-th incident edge in `inc[v]`
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        inc[a].push(e);
        inc[b].push(e);
    }
    let mut gadgets = Vec::with_capacity(g.n());
    for (v, c) in vertices.iter().enumerate() {
        let frames: Vec<Frame> = inc[v]
            .iter()
            .map(|&e| {
                let (a, b) = g.edge(e);
                Frame::segment(c, &vertices[if a == v { b } else { a }])
            })
            .collect();
        gadgets.push(synth_fvs_vertex_gadget(c, &frames, p).map_err(|err| match err {
            Error::Synthesis(m) => Error::Synthesis(format!("vertex {v}: {m}")),
            other => other,
        })?);
    }
    let mut disks: Vec<RDisk> = vertices.iter().enumerate().map(|(v, c)| Disk::new(c.clone(), Provenance::FvsCenter { vertex: v })).collect();
    let centers: Vec<usize> = (0..g.n()).collect();
    let mut paths = Vec::with_capacity(g.m());
    let mut intended = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let route = |v: usize| {
            let k = inc[v].iter().position(|&x| x == e).expect("incident");
            gadgets[v].routes[k].centers.clone()
        };
        let (ra, mut rb) = (route(a), route(b));
        rb.reverse();
        let len = &vertices[a] - &vertices[b];
        let chain_len = crate::scalar::sqrt_upper(&len.norm_sq(), super::runs::FRAME_DEN) - int(2) * (&p.s + &p.r);
        let count = ceil_u64(&(&chain_len / &p.spacing))? + 1;
        let chain = synth_edge_gadget_with(e, &vertices[a], &vertices[b], p, count.max(2))?;
        let mut full = ra;
        full.extend(chain.path.iter());
        full.extend(rb);
        let ids: Vec<usize> = (0..full.len()).map(|i| disks.len() + i).collect();
        intended.push((a, ids[0]));
        for w in ids.windows(2) {
            intended.push((w[0], w[1]));
        }
        intended.push((b, *ids.last().expect("nonempty path")));
        disks.extend(full.into_iter().enumerate().map(|(index, c)| Disk::new(c, Provenance::FvsPath { edge: e, index })));
        paths.push(ids);
    }
    // the intersection graph must be exactly the union of the paths
    let centers_all: Vec<RPoint> = disks.iter().map(|d| d.center.clone()).collect();
    let actual = unit_disk_graph(&centers_all, &p.r);
    let mut want: Vec<(usize, usize)> = intended.into_iter().map(|(x, y)| (x.min(y), x.max(y))).collect();
    want.sort_unstable();
    if actual != want {
        let extra = actual.iter().find(|e| want.binary_search(e).is_err());
        let missing = want.iter().find(|e| actual.binary_search(e).is_err());
        return Err(Error::Synthesis(format!(
            "disk paths are not separated: extra contact {extra:?}, missing contact {missing:?}"
        )));
    }
    let mut instance = DiskInstance::new(p.r.clone(), disks, Vec::new());
    instance.params = Some(p.clone());
    instance.origin = Some(json!({
        "reduction": "fvs-to-acc",
        "vertices": g.n(),
        "edges": g.m(),
        "centers": centers,
    }));
    Ok(AccLayout { instance, centers, paths })
}

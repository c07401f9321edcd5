//! Isolation instances: an edge gadget per edge, a ring per vertex and one
//! point per terminal face, with exact disjointness checks that never
//! materialize the disks.

use serde_json::json;

use super::edge::{synth_edge_gadget_cached, EdgeGadgetLayout, LocalCache};
use super::instance::DiskInstance;
use super::runs::{Bvh, Run};
use super::vertex::checked_ring;
use crate::error::{Error, Result};
use crate::geometry::point::{dist_sq, point_segment_dist_sq, segment_segment_dist_sq};
use crate::geometry::{Disk, ParamSet, Point2, Provenance};
use crate::graphs::{PlanarEmbeddedGraph, SubdivisionInstance, UnionFind};
use crate::gridembed::{rotation_equivalence, triangulate_preserving_rotation, GridEmbedding};
use crate::scalar::{int, rat, Rational};
use crate::{RDisk, RPoint};

pub(crate) fn rpoint(p: &Point2<i64>) -> RPoint {
    Point2::new(int(p.x), int(p.y))
}

/// The drawing must fit the grid of `p`, be crossing-free and reproduce the
/// rotation system of `g`.
pub(crate) fn check_drawing(g: &PlanarEmbeddedGraph, emb: &GridEmbedding, p: &ParamSet) -> Result<Vec<RPoint>> {
    if emb.coords.len() != g.n() {
        return Err(Error::Structural(format!("embedding has {} vertices, graph has {}", emb.coords.len(), g.n())));
    }
    let n = p.n as i64;
    if emb.coords.iter().any(|c| c.x < 0 || c.y < 0 || c.x > n || c.y > n) {
        return Err(Error::Structural(format!("embedding leaves the grid [0, {n}]^2")));
    }
    if !emb.is_crossing_free(g.edges()) {
        return Err(Error::Structural("embedding is not crossing-free".into()));
    }
    if g.m() > 0 && !rotation_equivalence(&emb.rotation_graph(g)?, g)? {
        return Err(Error::Structural("embedding does not match the rotation system".into()));
    }
    Ok(emb.coords.iter().map(rpoint).collect())
}

/// Gadget geometry of an isolation instance. Disk ids run through the edge
/// gadgets in edge order, then through the rings in vertex order.
#[derive(Clone, Debug)]
pub struct IsolationLayout {
    pub params: ParamSet,
    pub vertices: Vec<RPoint>,
    pub edge_ends: Vec<(usize, usize)>,
    pub edges: Vec<EdgeGadgetLayout>,
    pub rings: Vec<Vec<RPoint>>,
    pub points: Vec<RPoint>,
    /// Face of the source graph hosting each point.
    pub point_faces: Vec<usize>,
}

/// Outcome of the exact disjointness check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DisjointnessReport {
    /// Ring disks touched by the first and last disk of each edge gadget.
    pub touches: Vec<[usize; 2]>,
    /// Gadget pairs settled by the capsule bound.
    pub capsule_pairs: usize,
    /// Gadget pairs settled by the run hierarchy.
    pub exact_pairs: usize,
}

impl IsolationLayout {
    pub fn disk_count(&self) -> usize {
        self.edges.iter().map(|e| e.len()).sum::<usize>() + self.rings.iter().map(Vec::len).sum::<usize>()
    }

    /// First disk id of edge gadget `e`.
    pub fn edge_offset(&self, e: usize) -> usize {
        self.edges[..e].iter().map(|g| g.len()).sum()
    }

    pub fn ring_offset(&self, v: usize) -> usize {
        self.edge_offset(self.edges.len()) + self.rings[..v].iter().map(Vec::len).sum::<usize>()
    }

    /// Edges whose whole gadget is among the `kept` disks.
    pub fn lift(&self, kept: &[usize]) -> Vec<usize> {
        let mut alive = vec![false; self.disk_count()];
        for &k in kept {
            if k < alive.len() {
                alive[k] = true;
            }
        }
        (0..self.edges.len())
            .filter(|&e| {
                let o = self.edge_offset(e);
                alive[o..o + self.edges[e].len()].iter().all(|&a| a)
            })
            .collect()
    }

    /// Disk ids of the gadgets of the given edges.
    pub fn edge_disks(&self, edges: &[usize]) -> Vec<usize> {
        edges
            .iter()
            .flat_map(|&e| {
                let o = self.edge_offset(e);
                o..o + self.edges[e].len()
            })
            .collect()
    }

    pub fn disks(&self) -> Vec<RDisk> {
        let mut out = Vec::with_capacity(self.disk_count());
        for g in &self.edges {
            out.extend(g.path.iter().enumerate().map(|(index, c)| Disk::new(c, Provenance::Edge { edge: g.edge, index })));
        }
        for (vertex, ring) in self.rings.iter().enumerate() {
            out.extend(ring.iter().enumerate().map(|(index, c)| Disk::new(c.clone(), Provenance::Vertex { vertex, index })));
        }
        out
    }

    pub fn to_instance(&self) -> DiskInstance {
        let mut inst = DiskInstance::new(self.params.r.clone(), self.disks(), self.points.clone());
        inst.params = Some(self.params.clone());
        inst.origin = Some(json!({
            "reduction": "subdivision-to-isolation",
            "edges": self.edges.len(),
            "vertices": self.vertices.len(),
            "c_e": self.params.c_e,
            "point_faces": self.point_faces,
        }));
        inst
    }

    /// Exact check that gadgets of distinct graph elements are disjoint,
    /// except that each end disk of an edge gadget touches one to three
    /// disks of the ring at that end.
    pub fn check_disjointness(&self) -> Result<DisjointnessReport> {
        let p = &self.params;
        let (r, h, s) = (&p.r, &p.h, &p.s);
        let four_r2 = int(4) * r * r;
        let mut rep = DisjointnessReport { touches: vec![[0, 0]; self.edges.len()], ..Default::default() };
        let edge_trees: Vec<Bvh> = self.edges.iter().map(|g| Bvh::new(&g.path.runs)).collect();
        let ring_runs: Vec<Vec<Run>> = self.rings.iter().map(|ring| ring.iter().cloned().map(Run::single).collect()).collect();
        let ring_trees: Vec<Bvh> = ring_runs.iter().map(|rr| Bvh::new(rr)).collect();
        let any_pair = |a: &Bvh, b: &Bvh| {
            let mut hit = false;
            a.cross_pairs(b, &four_r2, &mut |_, _, _, _| {
                hit = true;
                false
            });
            hit
        };
        let v = &self.vertices;

        // edge gadgets against each other
        let edge_cap = sq(&(h + int(2) * r));
        for e in 0..self.edges.len() {
            let (a, b) = self.edge_ends[e];
            for f in e + 1..self.edges.len() {
                let (c, d) = self.edge_ends[f];
                let shared = a == c || a == d || b == c || b == d;
                if !shared && segment_segment_dist_sq(&v[a], &v[b], &v[c], &v[d]) > edge_cap {
                    rep.capsule_pairs += 1;
                    continue;
                }
                rep.exact_pairs += 1;
                if any_pair(&edge_trees[e], &edge_trees[f]) {
                    return Err(Error::Synthesis(format!("edge gadgets {e} and {f} intersect")));
                }
            }
        }

        // edge gadgets against rings
        let ring_cap = sq(&(s + h / int(2) + int(2) * r));
        for e in 0..self.edges.len() {
            let (a, b) = self.edge_ends[e];
            let path = &self.edges[e].path;
            let last = path.len() - 1;
            for w in 0..v.len() {
                if w != a && w != b {
                    if point_segment_dist_sq(&v[w], &v[a], &v[b]) > ring_cap {
                        rep.capsule_pairs += 1;
                        continue;
                    }
                    rep.exact_pairs += 1;
                    if any_pair(&edge_trees[e], &ring_trees[w]) {
                        return Err(Error::Synthesis(format!("edge gadget {e} meets the ring of vertex {w}")));
                    }
                    continue;
                }
                rep.exact_pairs += 1;
                let (end, slot) = if w == a { (0, 0) } else { (last, 1) };
                let mut count = 0;
                let mut stray = None;
                edge_trees[e].cross_pairs(&ring_trees[w], &four_r2, &mut |run, i, _, _| {
                    let k = path.offset(run) + i;
                    if k == end {
                        count += 1;
                        true
                    } else {
                        stray = Some(k);
                        false
                    }
                });
                if let Some(k) = stray {
                    return Err(Error::Synthesis(format!("disk {k} of edge gadget {e} meets the ring of vertex {w}")));
                }
                if !(1..=3).contains(&count) {
                    return Err(Error::Synthesis(format!(
                        "an end disk of edge gadget {e} touches {count} disks of the ring of vertex {w}"
                    )));
                }
                rep.touches[e][slot] = count;
            }
        }

        // rings against each other
        let rr_cap = sq(&(int(2) * s + int(2) * r));
        for x in 0..v.len() {
            for y in x + 1..v.len() {
                if dist_sq(&v[x], &v[y]) > rr_cap {
                    rep.capsule_pairs += 1;
                    continue;
                }
                rep.exact_pairs += 1;
                if any_pair(&ring_trees[x], &ring_trees[y]) {
                    return Err(Error::Synthesis(format!("rings of vertices {x} and {y} intersect")));
                }
            }
        }

        // points clear of every gadget
        for (i, q) in self.points.iter().enumerate() {
            if !self.clear(q) {
                return Err(Error::Synthesis(format!("point {i} is too close to a gadget")));
            }
        }
        Ok(rep)
    }

    /// Clearance strictly above `h/2 + r` from every embedded edge and
    /// `s + r` from every vertex, so `q` avoids all disks.
    fn clear(&self, q: &RPoint) -> bool {
        clear_of(q, &self.vertices, &self.edge_ends, &self.params)
    }
}

fn sq(x: &Rational) -> Rational {
    x * x
}

fn clear_of(q: &RPoint, vertices: &[RPoint], edges: &[(usize, usize)], p: &ParamSet) -> bool {
    let e_cap = sq(&(&p.h / int(2) + &p.r));
    let v_cap = sq(&(&p.s + &p.r));
    vertices.iter().all(|v| dist_sq(q, v) > v_cap)
        && edges.iter().all(|&(a, b)| point_segment_dist_sq(q, &vertices[a], &vertices[b]) > e_cap)
}

/// Point for the unbounded face: below and left of the grid.
pub fn outer_point() -> RPoint {
    Point2::new(int(-1), int(-1))
}

/// One point per listed face, placed at the centroid of the largest
/// triangle of that face in the drawing of a triangulation of `g`; when the
/// centroid is too close to a gadget, centroids of finer subdivisions are
/// tried.
pub fn place_face_points(
    g: &PlanarEmbeddedGraph,
    emb: &GridEmbedding,
    p: &ParamSet,
    faces: &[usize],
) -> Result<Vec<RPoint>> {
    let vertices: Vec<RPoint> = emb.coords.iter().map(rpoint).collect();
    let gf = g.facial_walks();
    if g.n() < 3 || g.m() == 0 {
        return faces
            .iter()
            .map(|&f| {
                if f == 0 && gf.len() == 1 {
                    Ok(outer_point())
                } else {
                    Err(Error::Structural(format!("face {f} out of range")))
                }
            })
            .collect();
    }
    let (tri, added) = triangulate_preserving_rotation(g)?;
    if !emb.is_crossing_free(tri.edges()) {
        return Err(Error::Synthesis("face points need a drawing that extends to a triangulation".into()));
    }
    let tf = tri.facial_walks();
    let mut uf = UnionFind::new(tf.len());
    for &e in &added {
        uf.union(tf.left(2 * e), tf.left(2 * e + 1));
    }
    // g face of each triangle class, through an original dart
    let mut class_face = vec![usize::MAX; tf.len()];
    for (t, walk) in tf.walks.iter().enumerate() {
        if let Some(&d) = walk.iter().find(|&&d| d / 2 < g.m()) {
            class_face[uf.find(t)] = gf.left(d);
        }
    }
    let face_of = |t: usize, uf: &mut UnionFind| class_face[uf.find(t)];
    let area2 = |walk: &[usize]| emb.walk_area2(&tri, walk);
    let outer_t = (0..tf.len()).find(|&t| area2(&tf.walks[t]) <= 0);
    let outer_face = outer_t.map(|t| face_of(t, &mut uf));
    let edges = g.edges().to_vec();
    let mut out = Vec::with_capacity(faces.len());
    for &f in faces {
        if f >= gf.len() {
            return Err(Error::Structural(format!("face {f} out of range")));
        }
        if Some(f) == outer_face {
            out.push(outer_point());
            continue;
        }
        let mut tris: Vec<(i128, usize)> = (0..tf.len())
            .filter(|&t| Some(t) != outer_t && face_of(t, &mut uf) == f)
            .map(|t| (area2(&tf.walks[t]), t))
            .collect();
        tris.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let found = tris.iter().find_map(|&(_, t)| {
            let corners: Vec<RPoint> = tf.walks[t].iter().map(|&d| vertices[tri.tail(d)].clone()).collect();
            search_triangle([corners[0].clone(), corners[1].clone(), corners[2].clone()], 4, &|q| {
                clear_of(q, &vertices, &edges, p)
            })
        });
        match found {
            Some(q) => out.push(q),
            None => {
                return Err(Error::Synthesis(format!(
                    "no point of face {f} clears the gadgets by h/2 + r and s + r"
                )))
            }
        }
    }
    Ok(out)
}

/// Breadth-first search over midpoint subdivisions for a centroid that
/// passes `ok`.
fn search_triangle(t: [RPoint; 3], depth: u32, ok: &dyn Fn(&RPoint) -> bool) -> Option<RPoint> {
    let mut level = vec![t];
    for _ in 0..=depth {
        for [a, b, c] in &level {
            let q = (&(a + b) + c).scale(&rat(1, 3));
            if ok(&q) {
                return Some(q);
            }
        }
        let half = rat(1, 2);
        level = level
            .iter()
            .flat_map(|[a, b, c]| {
                let (ab, bc, ca) = ((a + b).scale(&half), (b + c).scale(&half), (c + a).scale(&half));
                [
                    [a.clone(), ab.clone(), ca.clone()],
                    [ab.clone(), b.clone(), bc.clone()],
                    [ca.clone(), bc.clone(), c.clone()],
                    [ab, bc, ca],
                ]
            })
            .collect();
    }
    None
}

/// Gadget layout of the isolation instance for `sub` drawn by `emb`.
pub fn synth_isolation_layout(sub: &SubdivisionInstance, emb: &GridEmbedding, p: &ParamSet) -> Result<IsolationLayout> {
    let g = &sub.graph;
    let vertices = check_drawing(g, emb, p)?;
    if !g.is_connected() {
        return Err(Error::Restriction("isolation instances need a connected graph".into()));
    }
    let edge_ends = g.edges().to_vec();
    let mut cache = LocalCache::new();
    let edges = edge_ends
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| synth_edge_gadget_cached(e, &vertices[a], &vertices[b], p, p.c_e, &mut cache))
        .collect::<Result<Vec<_>>>()?;
    let base = checked_ring(p)?;
    let rings = vertices.iter().map(|c| base.iter().map(|q| q + c).collect()).collect();
    let points = place_face_points(g, emb, p, &sub.terminals)?;
    Ok(IsolationLayout {
        params: p.clone(),
        vertices,
        edge_ends,
        edges,
        rings,
        points,
        point_faces: sub.terminals.clone(),
    })
}

/// Checked isolation instance: layout, disjointness and materialized disks.
pub fn synth_isolation_instance(sub: &SubdivisionInstance, emb: &GridEmbedding, p: &ParamSet) -> Result<DiskInstance> {
    let layout = synth_isolation_layout(sub, emb, p)?;
    layout.check_disjointness()?;
    let inst = layout.to_instance();
    inst.validate()?;
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::verify_isolation;
    use crate::geometry::{compute_params, ParamMode, ToyOverrides};

    fn triangle() -> (PlanarEmbeddedGraph, GridEmbedding) {
        let coords = vec![Point2::new(0, 0), Point2::new(2, 0), Point2::new(0, 2)];
        let g = PlanarEmbeddedGraph::from_coords(3, vec![(0, 1), (1, 2), (2, 0)], &coords).unwrap();
        (g, GridEmbedding { coords, grid_size: 2 })
    }

    #[test]
    fn sound_triangle_is_disjoint() {
        let (g, emb) = triangle();
        let p = compute_params(2, ParamMode::Sound, &ToyOverrides::default()).unwrap();
        let faces = g.facial_walks();
        let sub = SubdivisionInstance::new(g, (0..faces.len()).collect()).unwrap();
        let layout = synth_isolation_layout(&sub, &emb, &p).unwrap();
        let rep = layout.check_disjointness().unwrap();
        assert!(rep.touches.iter().flatten().all(|&t| (1..=3).contains(&t)));
        assert_eq!(layout.disk_count() as u64, 3 * p.c_e + 3 * p.c_v);
        assert!(layout.points.contains(&outer_point()));
    }

    #[test]
    fn keeping_all_edge_gadgets_separates_the_triangle() {
        let (g, emb) = triangle();
        let p = compute_params(2, ParamMode::Sound, &ToyOverrides::default()).unwrap();
        let sub = SubdivisionInstance::new(g, vec![0, 1]).unwrap();
        let layout = synth_isolation_layout(&sub, &emb, &p).unwrap();
        let inst = layout.to_instance();
        inst.validate().unwrap();
        let all: Vec<usize> = (0..inst.disks.len()).collect();
        assert!(verify_isolation(&inst, &all, all.len() as u64).unwrap().accept);
        // dropping a whole edge gadget merges the two regions
        let keep: Vec<usize> = all.iter().copied().filter(|&k| !layout.edge_disks(&[1]).contains(&k)).collect();
        assert!(!verify_isolation(&inst, &keep, keep.len() as u64).unwrap().accept);
        assert_eq!(layout.lift(&keep), vec![0, 2]);
    }

    #[test]
    fn no_terminals_gives_no_points() {
        let (g, emb) = triangle();
        let p = compute_params(2, ParamMode::Sound, &ToyOverrides::default()).unwrap();
        let sub = SubdivisionInstance::new(g, vec![]).unwrap();
        let inst = synth_isolation_instance(&sub, &emb, &p).unwrap();
        assert!(inst.points.is_empty());
    }

    #[test]
    fn crossing_drawing_is_rejected() {
        let (g, _) = triangle();
        let emb = GridEmbedding { coords: vec![Point2::new(0, 0), Point2::new(2, 0), Point2::new(1, 0)], grid_size: 2 };
        let p = compute_params(2, ParamMode::Sound, &ToyOverrides::default()).unwrap();
        let sub = SubdivisionInstance::new(g, vec![]).unwrap();
        assert!(synth_isolation_layout(&sub, &emb, &p).is_err());
    }
}

//! Planar overlay of center-to-center segments with exact point location.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::unit_disk_graph;
use crate::error::{Error, Result};
use crate::geometry::point::{
    cmp_angle, on_segment, orient, segment_intersection, Point2, SegmentIntersection,
};
use crate::graphs::UnionFind;
use crate::scalar::Rational;
use crate::RPoint;

/// A closed walk of half-edges with the traced region on its left.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub half_edges: Vec<usize>,
    /// Twice the signed area; positive for bounded faces.
    pub area2: Rational,
}

/// Planarized segment arrangement.
///
/// Half-edge `2e` runs `edges[e].0 -> edges[e].1`, `2e + 1` the other way.
/// Face 0 is the unbounded face; bounded faces are numbered from 1.
#[derive(Clone, Debug)]
pub struct ArrangementFaceMap {
    pub vertices: Vec<RPoint>,
    pub edges: Vec<(usize, usize)>,
    /// Disk pairs whose center segment contains each edge.
    pub edge_sources: Vec<Vec<(usize, usize)>>,
    pub cycles: Vec<Cycle>,
    /// Face of the region left of each cycle.
    pub face_of_cycle: Vec<usize>,
    pub num_faces: usize,
    pub num_components: usize,
    vertex_index: BTreeMap<RPoint, usize>,
    /// Outgoing half-edges per vertex, counter-clockwise from +x.
    out: Vec<Vec<usize>>,
    cycle_of: Vec<usize>,
    component: Vec<usize>,
}

fn bbox_overlap(a: &RPoint, b: &RPoint, c: &RPoint, d: &RPoint) -> bool {
    let (ax0, ax1) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (cx0, cx1) = if c.x <= d.x { (&c.x, &d.x) } else { (&d.x, &c.x) };
    if ax1 < cx0 || cx1 < ax0 {
        return false;
    }
    let (ay0, ay1) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    let (cy0, cy1) = if c.y <= d.y { (&c.y, &d.y) } else { (&d.y, &c.y) };
    !(ay1 < cy0 || cy1 < ay0)
}

enum Hit {
    Edge(usize),
    Vertex(usize),
}

impl ArrangementFaceMap {
    /// Overlay of the segments joining centers of intersecting disks.
    /// Crossings and collinear overlaps are split exactly.
    pub fn build(centers: &[RPoint], r: &Rational) -> Self {
        let segs: Vec<(usize, usize)> = unit_disk_graph(centers, r)
            .into_iter()
            .filter(|&(i, j)| centers[i] != centers[j])
            .collect();
        Self::from_segments(centers, &segs)
    }

    /// Overlay of arbitrary segments between the given points.
    pub fn from_segments(points: &[RPoint], segs: &[(usize, usize)]) -> Self {
        let mut splits: Vec<Vec<RPoint>> = segs
            .iter()
            .map(|&(i, j)| vec![points[i].clone(), points[j].clone()])
            .collect();
        // sweep by left end to prune pair tests
        let mut by_x: Vec<usize> = (0..segs.len()).collect();
        let lo = |s: usize| {
            let (a, b) = (&points[segs[s].0], &points[segs[s].1]);
            if a.x <= b.x { a.x.clone() } else { b.x.clone() }
        };
        let hi = |s: usize| {
            let (a, b) = (&points[segs[s].0], &points[segs[s].1]);
            if a.x >= b.x { a.x.clone() } else { b.x.clone() }
        };
        let los: Vec<Rational> = (0..segs.len()).map(lo).collect();
        let his: Vec<Rational> = (0..segs.len()).map(hi).collect();
        by_x.sort_by(|&s, &t| los[s].cmp(&los[t]));
        for (k, &s) in by_x.iter().enumerate() {
            let (a, b) = (&points[segs[s].0], &points[segs[s].1]);
            for &t in &by_x[k + 1..] {
                if los[t] > his[s] {
                    break;
                }
                let (c, d) = (&points[segs[t].0], &points[segs[t].1]);
                if !bbox_overlap(a, b, c, d) {
                    continue;
                }
                match segment_intersection(a, b, c, d) {
                    SegmentIntersection::Empty => {}
                    SegmentIntersection::Point(p) => {
                        splits[s].push(p.clone());
                        splits[t].push(p);
                    }
                    SegmentIntersection::Overlap(p, q) => {
                        splits[s].extend([p.clone(), q.clone()]);
                        splits[t].extend([p, q]);
                    }
                }
            }
        }
        let mut pieces: BTreeMap<(RPoint, RPoint), Vec<(usize, usize)>> = BTreeMap::new();
        for (s, pts) in splits.iter_mut().enumerate() {
            let a = points[segs[s].0].clone();
            let dir = &points[segs[s].1] - &a;
            pts.sort_by_key(|p| (p - &a).dot(&dir));
            pts.dedup();
            let (i, j) = segs[s];
            let src = (i.min(j), i.max(j));
            for w in pts.windows(2) {
                let key = if w[0] < w[1] {
                    (w[0].clone(), w[1].clone())
                } else {
                    (w[1].clone(), w[0].clone())
                };
                let e = pieces.entry(key).or_default();
                if !e.contains(&src) {
                    e.push(src);
                }
            }
        }
        let mut vertex_index = BTreeMap::new();
        for (p, q) in pieces.keys() {
            vertex_index.entry(p.clone()).or_insert(0);
            vertex_index.entry(q.clone()).or_insert(0);
        }
        let vertices: Vec<RPoint> = vertex_index.keys().cloned().collect();
        for (i, v) in vertex_index.values_mut().enumerate() {
            *v = i;
        }
        let mut edges = Vec::with_capacity(pieces.len());
        let mut edge_sources = Vec::with_capacity(pieces.len());
        for ((p, q), src) in pieces {
            edges.push((vertex_index[&p], vertex_index[&q]));
            edge_sources.push(src);
        }
        Self::assemble(vertices, vertex_index, edges, edge_sources)
    }

    fn assemble(
        vertices: Vec<RPoint>,
        vertex_index: BTreeMap<RPoint, usize>,
        edges: Vec<(usize, usize)>,
        edge_sources: Vec<Vec<(usize, usize)>>,
    ) -> Self {
        let nv = vertices.len();
        let nh = 2 * edges.len();
        let tail = |h: usize| if h.is_multiple_of(2) { edges[h / 2].0 } else { edges[h / 2].1 };
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..nh {
            out[tail(h)].push(h);
        }
        let dir = |h: usize| &vertices[tail(h ^ 1)] - &vertices[tail(h)];
        for list in &mut out {
            list.sort_by(|&a, &b| cmp_angle(&dir(a), &dir(b)));
        }
        let mut pos = vec![0; nh];
        for list in &out {
            for (i, &h) in list.iter().enumerate() {
                pos[h] = i;
            }
        }
        // next(u -> v): clockwise neighbour of v -> u around v
        let next = |h: usize| {
            let t = h ^ 1;
            let list = &out[tail(t)];
            list[(pos[t] + list.len() - 1) % list.len()]
        };
        let mut cycle_of = vec![usize::MAX; nh];
        let mut cycles = Vec::new();
        for start in 0..nh {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut hs = Vec::new();
            let mut area2 = Rational::zero();
            let mut h = start;
            loop {
                cycle_of[h] = id;
                hs.push(h);
                area2 += vertices[tail(h)].cross(&vertices[tail(h ^ 1)]);
                h = next(h);
                if h == start {
                    break;
                }
            }
            cycles.push(Cycle { half_edges: hs, area2 });
        }
        let mut uf = UnionFind::new(nv);
        for &(a, b) in &edges {
            uf.union(a, b);
        }
        let roots: Vec<usize> = (0..nv).map(|v| uf.find(v)).collect();
        let mut comp_id = BTreeMap::new();
        for &r in &roots {
            let k = comp_id.len();
            comp_id.entry(r).or_insert(k);
        }
        let component: Vec<usize> = roots.iter().map(|r| comp_id[r]).collect();
        let num_components = comp_id.len();
        let mut face_of_cycle = vec![usize::MAX; cycles.len()];
        let mut num_faces = 1;
        for (c, cy) in cycles.iter().enumerate() {
            if cy.area2.is_positive() {
                face_of_cycle[c] = num_faces;
                num_faces += 1;
            }
        }
        let mut map = ArrangementFaceMap {
            vertices,
            edges,
            edge_sources,
            cycles,
            face_of_cycle,
            num_faces,
            num_components,
            vertex_index,
            out,
            cycle_of,
            component,
        };
        // outer boundaries inherit the face their component sits in
        let mut parent = vec![None; num_components];
        for c in 0..map.cycles.len() {
            if map.face_of_cycle[c] == usize::MAX {
                let h = map.cycles[c].half_edges[0];
                let comp = map.component[map.tail(h)];
                map.face_of_cycle[c] = map.parent_face(comp, &mut parent);
            }
        }
        map
    }

    fn tail(&self, h: usize) -> usize {
        let (a, b) = self.edges[h / 2];
        if h.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    fn head(&self, h: usize) -> usize {
        self.tail(h ^ 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `V - E + F - (1 + C)`, zero for every plane overlay.
    pub fn euler_defect(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.num_faces as i64
            - (1 + self.num_components as i64)
    }

    fn parent_face(&self, comp: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(f) = memo[comp] {
            return f;
        }
        let w = (0..self.vertices.len())
            .filter(|&v| self.component[v] == comp)
            .max_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]))
            .expect("component has a vertex");
        let p = self.vertices[w].clone();
        let f = match self.ray_hit(&p, Some(comp)) {
            None => 0,
            Some(hit) => {
                let c = self.cycle_at_hit(&p, hit);
                match self.face_of_cycle[c] {
                    usize::MAX => {
                        let h = self.cycles[c].half_edges[0];
                        self.parent_face(self.component[self.tail(h)], memo)
                    }
                    f => f,
                }
            }
        };
        memo[comp] = Some(f);
        f
    }

    /// First arrangement feature met by the ray from `p` towards `+x`.
    fn ray_hit(&self, p: &RPoint, skip: Option<usize>) -> Option<Hit> {
        let mut best: Option<Rational> = None;
        for &(a, b) in &self.edges {
            if Some(self.component[a]) == skip {
                continue;
            }
            let (u, v) = (&self.vertices[a], &self.vertices[b]);
            let x = if u.y == v.y {
                if u.y != p.y {
                    continue;
                }
                if u.x < v.x { u.x.clone() } else { v.x.clone() }
            } else {
                let (ylo, yhi) = if u.y < v.y { (&u.y, &v.y) } else { (&v.y, &u.y) };
                if p.y < *ylo || p.y > *yhi {
                    continue;
                }
                &u.x + (&p.y - &u.y) * (&v.x - &u.x) / (&v.y - &u.y)
            };
            if x > p.x && best.as_ref().is_none_or(|bx| x < *bx) {
                best = Some(x);
            }
        }
        let x = best?;
        let q = Point2::new(x, p.y.clone());
        if let Some(&v) = self.vertex_index.get(&q) {
            return Some(Hit::Vertex(v));
        }
        let e = (0..self.edges.len())
            .find(|&e| {
                let (a, b) = self.edges[e];
                Some(self.component[a]) != skip && on_segment(&q, &self.vertices[a], &self.vertices[b])
            })
            .expect("hit point lies on an edge");
        Some(Hit::Edge(e))
    }

    /// Cycle bounding the region just right of `p` at the ray hit.
    fn cycle_at_hit(&self, p: &RPoint, hit: Hit) -> usize {
        match hit {
            Hit::Edge(e) => {
                let (a, b) = self.edges[e];
                let h = if orient(&self.vertices[a], &self.vertices[b], p).is_positive() {
                    2 * e
                } else {
                    2 * e + 1
                };
                self.cycle_of[h]
            }
            Hit::Vertex(w) => {
                // wedge at w holding the direction back towards p (west)
                let west = Point2::new(Rational::from_integer((-1).into()), Rational::zero());
                let list = &self.out[w];
                let h = list
                    .iter()
                    .rev()
                    .find(|&&h| cmp_angle(&(&self.vertices[self.head(h)] - &self.vertices[w]), &west).is_lt())
                    .copied()
                    .unwrap_or(*list.last().expect("vertex has an edge"));
                self.cycle_of[h]
            }
        }
    }

    /// Face containing `p`; points on a segment are rejected.
    pub fn locate_point(&self, p: &RPoint) -> Result<usize> {
        for &(a, b) in &self.edges {
            if on_segment(p, &self.vertices[a], &self.vertices[b]) {
                return Err(Error::Boundary(format!(
                    "({}, {}) lies on a segment",
                    crate::scalar::format_rational(&p.x),
                    crate::scalar::format_rational(&p.y)
                )));
            }
        }
        Ok(match self.ray_hit(p, None) {
            None => 0,
            Some(hit) => self.face_of_cycle[self.cycle_at_hit(p, hit)],
        })
    }

    /// Disk pairs whose segments bound face `f` from outside (the boundary
    /// cycle that encloses the face).
    pub fn enclosing_sources(&self, f: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .cycles
            .iter()
            .zip(&self.face_of_cycle)
            .filter(|(cy, &g)| g == f && cy.area2.is_positive())
            .flat_map(|(cy, _)| cy.half_edges.iter().flat_map(|&h| self.edge_sources[h / 2].iter().copied()))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

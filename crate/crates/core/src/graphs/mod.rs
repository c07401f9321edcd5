//! Combinatorial plane graphs given by rotation systems.
//!
//! Edges are stored as ordered vertex pairs; each edge `e` has two darts
//! (directed copies): dart `2e` leaves `edges[e].0`, dart `2e + 1` leaves
//! `edges[e].1`. Rotations list the darts leaving a vertex in clockwise
//! order. A self-loop contributes both of its darts to one vertex.

mod dual;
mod io;

pub use dual::{
    geometric_dual, lift_subdivision_solution, reduce_pmc_to_subdivision, subdivide_all_edges,
    complete_groups, DualMap, MultiterminalInstance, SolutionBackMap, SubdivisionInstance,
};
pub use io::GraphFile;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::point::{cmp_angle, Point2};

pub type Dart = usize;

#[inline]
pub fn rev(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> usize {
    d / 2
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
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

    /// Returns `true` if the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root wins, keeping representatives deterministic
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Plane graph with a clockwise rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbeddedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<Dart>>,
    /// `pos[d]` is the index of dart `d` in its tail's rotation.
    pos: Vec<usize>,
    outer_face: Option<usize>,
}

/// Facial walks in canonical order.
///
/// Each walk starts at its smallest dart and walks are sorted by that dart,
/// so face ids depend only on the rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    pub walks: Vec<Vec<Dart>>,
    pub face_of_dart: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    /// Face on the left of dart `d`.
    pub fn left(&self, d: Dart) -> usize {
        self.face_of_dart[d]
    }
}

impl PlanarEmbeddedGraph {
    /// Build from dart rotations, validating that every dart appears exactly
    /// once, at its tail.
    pub fn from_darts(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        if rotation.len() != n {
            return Err(Error::Structural(format!(
                "rotation has {} entries for {n} vertices",
                rotation.len()
            )));
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Structural(format!("edge {e} has an endpoint outside 0..{n}")));
            }
        }
        let mut pos = vec![usize::MAX; 2 * edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= pos.len() {
                    return Err(Error::Structural(format!("vertex {v} lists unknown dart {d}")));
                }
                if pos[d] != usize::MAX {
                    return Err(Error::Structural(format!("dart {d} listed twice")));
                }
                let (a, b) = edges[edge_of(d)];
                let tail = if d % 2 == 0 { a } else { b };
                if tail != v {
                    return Err(Error::Structural(format!(
                        "edge {} listed at vertex {v}, which is not its endpoint",
                        edge_of(d)
                    )));
                }
                pos[d] = i;
            }
        }
        if let Some(d) = pos.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Structural(format!(
                "edge {} missing from the rotation of one endpoint",
                edge_of(d)
            )));
        }
        Ok(PlanarEmbeddedGraph { n, edges, rotation, pos, outer_face: None })
    }

    /// Build from per-vertex clockwise edge-id lists. A loop appears twice in
    /// its vertex's list; the first occurrence is taken as dart `2e`.
    pub fn from_rotation(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![0u8; edges.len()];
        let mut darts = Vec::with_capacity(n);
        for (v, rot) in rotation.iter().enumerate() {
            let mut out = Vec::with_capacity(rot.len());
            for &e in rot {
                let &(a, b) = edges
                    .get(e)
                    .ok_or_else(|| Error::Structural(format!("vertex {v} lists unknown edge {e}")))?;
                let d = if a == b {
                    seen[e] += 1;
                    match seen[e] {
                        1 => 2 * e,
                        2 => 2 * e + 1,
                        _ => return Err(Error::Structural(format!("loop {e} listed more than twice"))),
                    }
                } else if v == a {
                    2 * e
                } else {
                    2 * e + 1
                };
                out.push(d);
            }
            darts.push(out);
        }
        Self::from_darts(n, edges, darts)
    }

    /// Rotation read off straight-line coordinates: clockwise angular order.
    /// Loops and coincident edge directions are rejected.
    pub fn from_coords(n: usize, edges: Vec<(usize, usize)>, coords: &[Point2<i64>]) -> Result<Self> {
        if coords.len() != n {
            return Err(Error::Structural("one coordinate per vertex required".into()));
        }
        let mut darts: Vec<Vec<Dart>> = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(Error::Structural(format!("loop {e} has no straight-line drawing")));
            }
            if u >= n || v >= n {
                return Err(Error::Structural(format!("edge {e} has an endpoint outside 0..{n}")));
            }
            darts[u].push(2 * e);
            darts[v].push(2 * e + 1);
        }
        for (v, ds) in darts.iter_mut().enumerate() {
            let dir = |d: &Dart| {
                let (a, b) = edges[edge_of(*d)];
                let w = if d.is_multiple_of(2) { b } else { a };
                &coords[w] - &coords[v]
            };
            ds.sort_by(|x, y| cmp_angle(&dir(y), &dir(x)));
            for w in ds.windows(2) {
                if cmp_angle(&dir(&w[0]), &dir(&w[1])).is_eq() {
                    return Err(Error::Structural(format!("overlapping edges at vertex {v}")));
                }
            }
        }
        Self::from_darts(n, edges, darts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn outer_face(&self) -> Option<usize> {
        self.outer_face
    }

    pub fn set_outer_face(&mut self, f: Option<usize>) {
        self.outer_face = f;
    }

    pub fn rotation_darts(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    /// Clockwise incident edge ids (loops twice).
    pub fn rotation_edges(&self, v: usize) -> Vec<usize> {
        self.rotation[v].iter().map(|&d| edge_of(d)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn tail(&self, d: Dart) -> usize {
        let (a, b) = self.edges[edge_of(d)];
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(rev(d))
    }

    /// Clockwise successor of `d` around its tail.
    pub fn cw_next(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.pos[d] + 1) % rot.len()]
    }

    /// Counter-clockwise successor of `d` around its tail.
    pub fn ccw_next(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.pos[d] + rot.len() - 1) % rot.len()]
    }

    /// Next dart along the face on the left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.cw_next(rev(d))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotation[v].iter().map(move |&d| self.head(d))
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.edges
            .iter()
            .all(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
    }

    /// Edge id joining `u` and `v`, if any.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.rotation[u]
            .iter()
            .find(|&&d| self.head(d) == v)
            .map(|&d| edge_of(d))
    }

    /// Component label (smallest vertex id) of every vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        (0..self.n).map(|v| uf.find(v)).collect()
    }

    pub fn component_count(&self) -> usize {
        let mut c = self.components();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Facial walks; each dart lies in exactly one walk. A graph with no
    /// edges has one empty walk (the whole plane).
    pub fn facial_walks(&self) -> Faces {
        let nd = 2 * self.edges.len();
        let mut face_of = vec![usize::MAX; nd];
        let mut walks = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                walk.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
        if walks.is_empty() {
            walks.push(Vec::new());
        }
        // ascending start darts already give canonical order: walk `id` was
        // opened at its smallest dart since smaller darts were all assigned
        Faces { walks, face_of_dart: face_of }
    }

    /// Euler's formula `V - E + F = 2` on every component with an edge, so
    /// the rotation system describes a plane (genus zero) embedding.
    pub fn is_plane_embedding(&self) -> bool {
        let faces = self.facial_walks();
        let comp = self.components();
        let mut stats: BTreeMap<usize, (i64, i64, i64)> = BTreeMap::new();
        for v in 0..self.n {
            stats.entry(comp[v]).or_default().0 += 1;
        }
        for &(a, _) in &self.edges {
            stats.entry(comp[a]).or_default().1 += 1;
        }
        for w in &faces.walks {
            if let Some(&d) = w.first() {
                stats.entry(comp[self.tail(d)]).or_default().2 += 1;
            }
        }
        stats.values().all(|&(v, e, f)| e == 0 || v - e + f == 2)
    }

    /// Add edge `a`-`b` (not a loop). Its dart at `a` goes clockwise right
    /// after `after_a` (appended when `None`), likewise at `b`. Returns the
    /// new edge id.
    pub fn add_edge_after(&mut self, a: usize, b: usize, after_a: Option<Dart>, after_b: Option<Dart>) -> usize {
        assert_ne!(a, b, "loops are not inserted");
        let e = self.edges.len();
        self.edges.push((a, b));
        self.pos.extend([0, 0]);
        for (v, d, after) in [(a, 2 * e, after_a), (b, 2 * e + 1, after_b)] {
            let at = match after {
                Some(x) => {
                    assert_eq!(self.tail(x), v, "anchor dart must leave the vertex");
                    self.pos[x] + 1
                }
                None => self.rotation[v].len(),
            };
            self.rotation[v].insert(at, d);
            for (i, &x) in self.rotation[v].iter().enumerate() {
                self.pos[x] = i;
            }
        }
        e
    }

    /// Same graph with every rotation reversed (the mirror embedding).
    pub fn mirrored(&self) -> Self {
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Self::from_darts(self.n, self.edges.clone(), rotation).expect("mirror of a valid graph")
    }

    /// Regions of the plane left after deleting every edge with
    /// `keep[e] == false`: each face of `self` is mapped to a representative.
    pub fn merged_faces(&self, faces: &Faces, keep: &[bool]) -> Vec<usize> {
        let mut uf = UnionFind::new(faces.len());
        for (e, &k) in keep.iter().enumerate() {
            if !k {
                uf.union(faces.left(2 * e), faces.left(2 * e + 1));
            }
        }
        (0..faces.len()).map(|f| uf.find(f)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> PlanarEmbeddedGraph {
        // 0 at bottom-left, 1 bottom-right, 2 top
        let coords = [Point2::new(0, 0), Point2::new(2, 0), Point2::new(1, 1)];
        PlanarEmbeddedGraph::from_coords(3, vec![(0, 1), (1, 2), (2, 0)], &coords).unwrap()
    }

    pub(crate) fn k4() -> PlanarEmbeddedGraph {
        let coords = [Point2::new(0, 0), Point2::new(4, 0), Point2::new(2, 4), Point2::new(2, 1)];
        let edges = vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
        PlanarEmbeddedGraph::from_coords(4, edges, &coords).unwrap()
    }

    #[test]
    fn triangle_two_faces() {
        let f = triangle().facial_walks();
        assert_eq!(f.len(), 2);
        assert!(f.walks.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn single_edge_one_face() {
        let g = PlanarEmbeddedGraph::from_rotation(2, vec![(0, 1)], vec![vec![0], vec![0]]).unwrap();
        let f = g.facial_walks();
        assert_eq!(f.walks, vec![vec![0, 1]]);
    }

    #[test]
    fn k4_four_triangles() {
        let g = k4();
        assert!(g.is_plane_embedding());
        let f = g.facial_walks();
        assert_eq!(f.len(), 4);
        assert!(f.walks.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn walks_partition_darts() {
        let g = k4();
        let f = g.facial_walks();
        let mut all: Vec<Dart> = f.walks.concat();
        all.sort_unstable();
        assert_eq!(all, (0..2 * g.m()).collect::<Vec<_>>());
    }

    #[test]
    fn bounded_face_is_counter_clockwise() {
        // 0 -> 1 -> 2 is counter-clockwise in the drawing above, so the
        // walk through dart 0 (0 -> 1) is the bounded triangle
        let g = triangle();
        let f = g.facial_walks();
        let w = &f.walks[f.left(0)];
        let tails: Vec<usize> = w.iter().map(|&d| g.tail(d)).collect();
        assert_eq!(tails, vec![0, 1, 2]);
    }

    #[test]
    fn bad_rotation_is_structural() {
        let err = PlanarEmbeddedGraph::from_rotation(2, vec![(0, 1)], vec![vec![0], vec![]]);
        assert!(matches!(err, Err(Error::Structural(_))));
        let err = PlanarEmbeddedGraph::from_rotation(2, vec![(0, 1)], vec![vec![0, 0], vec![0]]);
        assert!(matches!(err, Err(Error::Structural(_))));
    }

    #[test]
    fn non_planar_rotation_detected() {
        // K4 with one rotation scrambled lands on the torus
        let g = k4();
        let mut rot: Vec<Vec<usize>> = (0..4).map(|v| g.rotation_edges(v)).collect();
        rot[3].swap(0, 1);
        let h = PlanarEmbeddedGraph::from_rotation(4, g.edges().to_vec(), rot).unwrap();
        assert!(!h.is_plane_embedding());
    }
}

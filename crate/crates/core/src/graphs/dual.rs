use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{rev, Dart, Faces, PlanarEmbeddedGraph};
use crate::error::{Error, Result};

/// Correspondence between a connected plane graph and its dual.
///
/// Dual vertex `f` is face `f` of the primal; dual edge `e` crosses primal
/// edge `e`, and dual dart `d` leaves the face on the left of primal dart `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMap {
    /// Dual face surrounding each primal vertex.
    pub vertex_face: Vec<usize>,
}

/// The geometric dual. Bridges become self-loops and parallel boundaries
/// become parallel edges.
pub fn geometric_dual(g: &PlanarEmbeddedGraph) -> Result<(PlanarEmbeddedGraph, DualMap)> {
    if !g.is_connected() {
        return Err(Error::Restriction("geometric dual needs a connected graph".into()));
    }
    let faces = g.facial_walks();
    let edges = (0..g.m())
        .map(|e| (faces.left(2 * e), faces.left(2 * e + 1)))
        .collect();
    // a walk runs counter-clockwise around its face, so the dual rotation
    // is the walk reversed
    let rotation = faces
        .walks
        .iter()
        .map(|w| w.iter().rev().copied().collect())
        .collect();
    let dual = PlanarEmbeddedGraph::from_darts(faces.len(), edges, rotation)?;
    let dual_faces = dual.facial_walks();
    // darts entering primal vertex v run around v's dual face
    let vertex_face = (0..g.n())
        .map(|v| match g.rotation_darts(v).first() {
            Some(&d) => dual_faces.left(rev(d)),
            None => 0,
        })
        .collect();
    Ok((dual, DualMap { vertex_face }))
}

/// Fragments of each source edge after subdivision.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionBackMap {
    /// `groups[e]` lists the subdivided edges that came from source edge `e`.
    pub groups: Vec<Vec<usize>>,
    /// Source edge of each subdivided edge.
    pub source_of: Vec<usize>,
    /// Image of each source dart: the subdivided dart leaving the same tail.
    pub dart_image: Vec<Dart>,
    /// Face of the subdivided graph standing for each primal vertex (set by
    /// the multiterminal reduction, empty otherwise).
    #[serde(default)]
    pub vertex_face: Vec<usize>,
}

/// Replace every edge by a path of two edges (three for self-loops), so the
/// result is simple. Faces and rotations carry over unchanged.
pub fn subdivide_all_edges(g: &PlanarEmbeddedGraph) -> (PlanarEmbeddedGraph, SolutionBackMap) {
    let mut n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    let mut groups = Vec::with_capacity(g.m());
    let mut source_of = Vec::new();
    let mut dart_image = vec![0; 2 * g.m()];
    let mut extra_rot: Vec<Vec<Dart>> = Vec::new();
    for e in 0..g.m() {
        let (a, b) = g.edge(e);
        let first = edges.len();
        if a != b {
            let x = n;
            n += 1;
            edges.push((a, x));
            edges.push((x, b));
            extra_rot.push(vec![2 * first + 1, 2 * (first + 1)]);
            dart_image[2 * e] = 2 * first;
            dart_image[2 * e + 1] = 2 * (first + 1) + 1;
        } else {
            let (x, y) = (n, n + 1);
            n += 2;
            edges.push((a, x));
            edges.push((x, y));
            edges.push((y, a));
            extra_rot.push(vec![2 * first + 1, 2 * (first + 1)]);
            extra_rot.push(vec![2 * (first + 1) + 1, 2 * (first + 2)]);
            dart_image[2 * e] = 2 * first;
            dart_image[2 * e + 1] = 2 * (first + 2) + 1;
        }
        let group: Vec<usize> = (first..edges.len()).collect();
        source_of.extend(std::iter::repeat_n(e, group.len()));
        groups.push(group);
    }
    let mut rotation: Vec<Vec<Dart>> = (0..g.n())
        .map(|v| g.rotation_darts(v).iter().map(|&d| dart_image[d]).collect())
        .collect();
    rotation.extend(extra_rot);
    let mut s = PlanarEmbeddedGraph::from_darts(n, edges, rotation).expect("subdivision preserves validity");
    s.set_outer_face(g.outer_face().map(|f| {
        let faces = g.facial_walks();
        let sf = s.facial_walks();
        faces.walks[f].first().map_or(0, |&d| sf.left(dart_image[d]))
    }));
    (s, SolutionBackMap { groups, source_of, dart_image, vertex_face: Vec::new() })
}

/// Planar subdivision instance: one terminal point per listed face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionInstance {
    pub graph: PlanarEmbeddedGraph,
    /// `terminals[i]` is the face hosting point `i`.
    pub terminals: Vec<usize>,
}

impl SubdivisionInstance {
    pub fn new(graph: PlanarEmbeddedGraph, terminals: Vec<usize>) -> Result<Self> {
        let nf = graph.facial_walks().len();
        let mut seen = BTreeSet::new();
        for &f in &terminals {
            if f >= nf {
                return Err(Error::Structural(format!("terminal face {f} out of range 0..{nf}")));
            }
            if !seen.insert(f) {
                return Err(Error::Structural(format!("face {f} hosts two terminal points")));
            }
        }
        Ok(SubdivisionInstance { graph, terminals })
    }

    /// Every terminal lies in its own region once only the edges with
    /// `keep[e]` remain.
    pub fn separated_by(&self, faces: &Faces, keep: &[bool]) -> bool {
        let region = self.graph.merged_faces(faces, keep);
        let mut seen = BTreeSet::new();
        self.terminals.iter().all(|&f| seen.insert(region[f]))
    }
}

/// Multiterminal cut instance on a plane graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiterminalInstance {
    pub graph: PlanarEmbeddedGraph,
    pub terminals: Vec<usize>,
    /// Positive weight per edge.
    pub weights: Vec<u64>,
}

impl MultiterminalInstance {
    pub fn new(graph: PlanarEmbeddedGraph, terminals: Vec<usize>, weights: Option<Vec<u64>>) -> Result<Self> {
        let weights = weights.unwrap_or_else(|| vec![1; graph.m()]);
        if weights.len() != graph.m() {
            return Err(Error::Structural("one weight per edge required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Structural("edge weights must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for &t in &terminals {
            if t >= graph.n() || !seen.insert(t) {
                return Err(Error::Structural(format!("bad or repeated terminal {t}")));
            }
        }
        Ok(MultiterminalInstance { graph, terminals, weights })
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Weights in `1..=5` and maximum degree 3.
    pub fn check_restricted(&self) -> Result<()> {
        if let Some(e) = self.weights.iter().position(|&w| !(1..=5).contains(&w)) {
            return Err(Error::Restriction(format!(
                "edge {e} has weight {} outside 1..=5",
                self.weights[e]
            )));
        }
        if self.graph.max_degree() > 3 {
            return Err(Error::Restriction(format!(
                "maximum degree {} exceeds 3",
                self.graph.max_degree()
            )));
        }
        Ok(())
    }
}

/// Dual-and-subdivide reduction from unweighted planar multiterminal cut.
///
/// Cutting primal edge `e` corresponds to keeping both fragments of dual
/// edge `e`; each terminal becomes a point in the face around it.
pub fn reduce_pmc_to_subdivision(i: &MultiterminalInstance) -> Result<(SubdivisionInstance, SolutionBackMap)> {
    if !i.is_unweighted() {
        return Err(Error::Restriction("this reduction takes unit weights only".into()));
    }
    if !i.graph.is_connected() {
        return Err(Error::Restriction("this reduction takes connected graphs only".into()));
    }
    let (dual, dm) = geometric_dual(&i.graph)?;
    let (sub, mut back) = subdivide_all_edges(&dual);
    let dual_faces = dual.facial_walks();
    let sub_faces = sub.facial_walks();
    back.vertex_face = dm
        .vertex_face
        .iter()
        .map(|&f| dual_faces.walks[f].first().map_or(0, |&d| sub_faces.left(back.dart_image[d])))
        .collect();
    let terminals = i.terminals.iter().map(|&t| back.vertex_face[t]).collect();
    Ok((SubdivisionInstance::new(sub, terminals)?, back))
}

/// Map kept subdivision edges back to source edges. Any kept fragment
/// brings in its whole group; adding edges never merges regions, so a valid
/// solution stays valid.
pub fn lift_subdivision_solution(sol: &[usize], m: &SolutionBackMap) -> Result<Vec<usize>> {
    let mut out = BTreeSet::new();
    for &e in sol {
        let src = *m
            .source_of
            .get(e)
            .ok_or_else(|| Error::Structural(format!("edge {e} is not in the subdivided graph")))?;
        out.insert(src);
    }
    Ok(out.into_iter().collect())
}

/// Source edges whose fragments are all kept.
pub fn complete_groups(keep: &[bool], m: &SolutionBackMap) -> Vec<usize> {
    (0..m.groups.len())
        .filter(|&e| m.groups[e].iter().all(|&f| keep[f]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;
    use crate::graphs::tests::{k4, triangle};

    fn path3() -> PlanarEmbeddedGraph {
        let c = [Point2::new(0, 0), Point2::new(1, 0), Point2::new(2, 0)];
        PlanarEmbeddedGraph::from_coords(3, vec![(0, 1), (1, 2)], &c).unwrap()
    }

    fn c4() -> PlanarEmbeddedGraph {
        let c = [Point2::new(0, 0), Point2::new(1, 0), Point2::new(1, 1), Point2::new(0, 1)];
        PlanarEmbeddedGraph::from_coords(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)], &c).unwrap()
    }

    #[test]
    fn triangle_dual_is_theta() {
        let (d, _) = geometric_dual(&triangle()).unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.m(), 3);
        assert!(d.edges().iter().all(|&(a, b)| a != b));
        assert!(d.is_plane_embedding());
    }

    #[test]
    fn bridge_dual_is_loop() {
        let g = PlanarEmbeddedGraph::from_rotation(2, vec![(0, 1)], vec![vec![0], vec![0]]).unwrap();
        let (d, _) = geometric_dual(&g).unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(d.edges(), &[(0, 0)]);
        assert_eq!(d.facial_walks().len(), 2);
    }

    #[test]
    fn k4_is_self_dual() {
        let (d, _) = geometric_dual(&k4()).unwrap();
        assert_eq!(d.n(), 4);
        assert!(d.is_simple());
        assert!((0..4).all(|v| d.degree(v) == 3));
    }

    #[test]
    fn dual_faces_surround_primal_vertices() {
        for g in [triangle(), k4(), path3(), c4()] {
            let (d, dm) = geometric_dual(&g).unwrap();
            let df = d.facial_walks();
            assert_eq!(df.len(), g.n());
            for v in 0..g.n() {
                for &x in g.rotation_darts(v) {
                    assert_eq!(df.left(rev(x)), dm.vertex_face[v]);
                }
            }
        }
    }

    fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
        a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| a.iter().cycle().skip(k).take(a.len()).eq(b)))
    }

    #[test]
    fn dual_of_dual_is_original() {
        for g in [triangle(), k4(), path3(), c4()] {
            let (d, dm) = geometric_dual(&g).unwrap();
            let (dd, _) = geometric_dual(&d).unwrap();
            assert_eq!(dd.n(), g.n());
            let mut inv = vec![usize::MAX; g.n()];
            for (v, &f) in dm.vertex_face.iter().enumerate() {
                inv[f] = v;
            }
            for e in 0..g.m() {
                let (a, b) = dd.edge(e);
                let (u, v) = g.edge(e);
                let mut x = [inv[a], inv[b]];
                let mut y = [u, v];
                x.sort_unstable();
                y.sort_unstable();
                assert_eq!(x, y);
            }
            for f in 0..dd.n() {
                assert!(cyclic_eq(&dd.rotation_edges(f), &g.rotation_edges(inv[f])));
            }
        }
    }

    #[test]
    fn disconnected_dual_rejected() {
        let g = PlanarEmbeddedGraph::from_rotation(3, vec![(0, 1)], vec![vec![0], vec![0], vec![]]).unwrap();
        assert!(matches!(geometric_dual(&g), Err(Error::Restriction(_))));
    }

    #[test]
    fn subdivision_of_theta_is_simple() {
        let (d, _) = geometric_dual(&triangle()).unwrap();
        let (s, back) = subdivide_all_edges(&d);
        assert!(s.is_simple());
        assert_eq!(s.m(), 2 * d.m());
        assert_eq!(s.n(), 5);
        assert!((2..5).all(|v| s.degree(v) == 2));
        assert_eq!(back.groups.len(), 3);
    }

    #[test]
    fn loops_split_in_three() {
        let (d, _) = geometric_dual(&path3()).unwrap();
        let (s, back) = subdivide_all_edges(&d);
        assert!(s.is_simple());
        assert!(back.groups.iter().all(|g| g.len() == 3));
        assert_eq!(s.facial_walks().len(), d.facial_walks().len());
    }

    #[test]
    fn subdivision_keeps_face_count() {
        for g in [triangle(), k4(), c4()] {
            let (s, _) = subdivide_all_edges(&g);
            assert_eq!(s.facial_walks().len(), g.facial_walks().len());
            assert!(s.is_plane_embedding());
        }
    }

    #[test]
    fn reduction_places_terminals_in_distinct_faces() {
        let i = MultiterminalInstance::new(c4(), vec![0, 2], None).unwrap();
        let (sub, back) = reduce_pmc_to_subdivision(&i).unwrap();
        assert_eq!(sub.terminals.len(), 2);
        assert_ne!(sub.terminals[0], sub.terminals[1]);
        assert_eq!(back.vertex_face.len(), 4);
        // all four primal vertices get distinct faces
        let set: BTreeSet<_> = back.vertex_face.iter().collect();
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn weighted_reduction_rejected() {
        let i = MultiterminalInstance::new(c4(), vec![0, 2], Some(vec![1, 2, 1, 1])).unwrap();
        assert!(matches!(reduce_pmc_to_subdivision(&i), Err(Error::Restriction(_))));
    }

    #[test]
    fn lift_closes_groups() {
        let (d, _) = geometric_dual(&c4()).unwrap();
        let (_, back) = subdivide_all_edges(&d);
        assert_eq!(lift_subdivision_solution(&[], &back).unwrap(), Vec::<usize>::new());
        let both: Vec<usize> = back.groups[1].clone();
        assert_eq!(lift_subdivision_solution(&both, &back).unwrap(), vec![1]);
        let four: Vec<usize> = back.groups[0].iter().chain(&back.groups[2]).copied().collect();
        assert_eq!(lift_subdivision_solution(&four, &back).unwrap(), vec![0, 2]);
    }
}

//! Straight-line grid drawings that keep a prescribed rotation system.
//!
//! The graph is first completed to a maximal plane graph without touching
//! the existing rotations, drawn by the shift method on a `(2n-4) x (n-2)`
//! grid, and the drawing is checked exactly: no two segments cross and the
//! clockwise order around every vertex equals the input order.

mod augment;
mod shift;

pub use augment::triangulate_preserving_rotation;
pub use shift::{canonical_order, shift_coordinates, CanonicalOrder};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::point::{on_segment, segments_intersect};
use crate::geometry::Point2;
use crate::graphs::PlanarEmbeddedGraph;

/// Integer vertex coordinates inside `[0, grid_size]^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridEmbedding {
    pub coords: Vec<Point2<i64>>,
    pub grid_size: u64,
}

#[derive(Serialize, Deserialize)]
struct GridEmbeddingRepr {
    coords: BTreeMap<String, Point2<i64>>,
    grid_size: u64,
}

impl Serialize for GridEmbedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GridEmbeddingRepr {
            coords: self.coords.iter().enumerate().map(|(v, p)| (v.to_string(), p.clone())).collect(),
            grid_size: self.grid_size,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridEmbedding {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = GridEmbeddingRepr::deserialize(d)?;
        let n = r.coords.len();
        let mut coords = vec![None; n];
        for (k, p) in r.coords {
            let v: usize = k.parse().map_err(D::Error::custom)?;
            if v >= n {
                return Err(D::Error::custom(format!("vertex ids must be 0..{n}")));
            }
            coords[v] = Some(p);
        }
        let coords = coords.into_iter().map(|p| p.expect("ids are distinct")).collect();
        Ok(GridEmbedding { coords, grid_size: r.grid_size })
    }
}

impl GridEmbedding {
    /// Rotation system read off the drawing of `g`'s edges.
    pub fn rotation_graph(&self, g: &PlanarEmbeddedGraph) -> Result<PlanarEmbeddedGraph> {
        PlanarEmbeddedGraph::from_coords(g.n(), g.edges().to_vec(), &self.coords)
    }

    /// Exact check: distinct vertices, every coordinate within the grid,
    /// segments meet only at shared endpoints, and no vertex sits inside a
    /// segment.
    pub fn is_crossing_free(&self, edges: &[(usize, usize)]) -> bool {
        let n = self.grid_size as i64;
        if self.coords.iter().any(|p| p.x < 0 || p.y < 0 || p.x > n || p.y > n) {
            return false;
        }
        let mut sorted = self.coords.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        let c = &self.coords;
        for (i, &(a, b)) in edges.iter().enumerate() {
            for (v, p) in c.iter().enumerate() {
                if v != a && v != b && on_segment(p, &c[a], &c[b]) {
                    return false;
                }
            }
            for &(u, w) in &edges[i + 1..] {
                let shared: Vec<usize> = [a, b].into_iter().filter(|&x| x == u || x == w).collect();
                match shared.as_slice() {
                    [] => {
                        if segments_intersect(&c[a], &c[b], &c[u], &c[w]) {
                            return false;
                        }
                    }
                    &[s] => {
                        // segments from a common endpoint overlap only if
                        // one far end lies on the other segment
                        let x = if a == s { b } else { a };
                        let y = if u == s { w } else { u };
                        if on_segment(&c[x], &c[s], &c[y]) || on_segment(&c[y], &c[s], &c[x]) {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }

    /// Face of `g` that the drawing makes unbounded: the walk with
    /// non-positive signed area. `g` must be connected.
    pub fn outer_face(&self, g: &PlanarEmbeddedGraph) -> usize {
        let faces = g.facial_walks();
        faces
            .walks
            .iter()
            .position(|w| self.walk_area2(g, w) <= 0)
            .unwrap_or(0)
    }

    /// Twice the signed area enclosed by a facial walk.
    pub fn walk_area2(&self, g: &PlanarEmbeddedGraph, walk: &[usize]) -> i128 {
        walk.iter()
            .map(|&d| {
                let (p, q) = (&self.coords[g.tail(d)], &self.coords[g.head(d)]);
                p.x as i128 * q.y as i128 - p.y as i128 * q.x as i128
            })
            .sum()
    }
}

/// `true` iff every vertex sees the same clockwise cyclic edge sequence.
pub fn rotation_equivalence(a: &PlanarEmbeddedGraph, b: &PlanarEmbeddedGraph) -> Result<bool> {
    if a.n() != b.n() || a.edges() != b.edges() {
        return Err(Error::Structural("embeddings are of different graphs".into()));
    }
    Ok((0..a.n()).all(|v| cyclic_eq(a.rotation_darts(v), b.rotation_darts(v))))
}

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| a.iter().cycle().skip(k).take(a.len()).eq(b.iter()))
}

/// Shift-method drawing of a maximal plane graph whose outer face is the
/// face left of `outer`.
pub fn straight_line_grid_embedding(tri: &PlanarEmbeddedGraph, outer: usize) -> Result<GridEmbedding> {
    let co = canonical_order(tri, outer)?;
    let xy = shift_coordinates(tri.n(), &co)?;
    let coords: Vec<Point2<i64>> = xy.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
    Ok(bounded(coords, tri.n()))
}

fn bounded(coords: Vec<Point2<i64>>, n: usize) -> GridEmbedding {
    let w = coords.iter().map(|p| p.x).max().unwrap_or(0);
    let h = coords.iter().map(|p| p.y).max().unwrap_or(0);
    let grid_size = w.max(h).max(n as i64) as u64;
    GridEmbedding { coords, grid_size }
}

/// Crossing-free grid drawing of a simple plane graph whose rotation
/// system it reproduces exactly. If `g` records an outer face, that face
/// stays unbounded.
pub fn embed_plane_graph(g: &PlanarEmbeddedGraph) -> Result<GridEmbedding> {
    if !g.is_simple() {
        return Err(Error::Restriction("grid drawings need a simple graph".into()));
    }
    let emb = match g.n() {
        0 => return Err(Error::Structural("empty graph".into())),
        1 => GridEmbedding { coords: vec![Point2::new(0, 0)], grid_size: 1 },
        2 => GridEmbedding { coords: vec![Point2::new(0, 0), Point2::new(1, 0)], grid_size: 2 },
        _ => {
            let (tri, _) = triangulate_preserving_rotation(g)?;
            let outer = g
                .outer_face()
                .and_then(|f| g.facial_walks().walks[f].first().copied())
                .unwrap_or(0);
            let mut emb = straight_line_grid_embedding(&tri, outer)?;
            let drawn = emb.rotation_graph(&tri)?;
            if !rotation_equivalence(&drawn, &tri)? {
                if !rotation_equivalence(&drawn.mirrored(), &tri)? {
                    return Err(Error::Structural("drawing is not equivalent to the input".into()));
                }
                let w = emb.coords.iter().map(|p| p.x).max().unwrap_or(0);
                for p in &mut emb.coords {
                    p.x = w - p.x;
                }
            }
            if !emb.is_crossing_free(tri.edges()) {
                return Err(Error::Structural("shift drawing has a crossing".into()));
            }
            emb
        }
    };
    if !rotation_equivalence(&emb.rotation_graph(g)?, g)? {
        return Err(Error::Structural("drawing does not reproduce the rotation system".into()));
    }
    Ok(emb)
}

//! Rotation-preserving augmentation to a maximal plane graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graphs::{rev, PlanarEmbeddedGraph};

/// `u` reaches `w` without passing through `skip`.
fn reaches_avoiding(g: &PlanarEmbeddedGraph, u: usize, w: usize, skip: usize) -> bool {
    let mut seen = vec![false; g.n()];
    seen[skip] = true;
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == w {
            return true;
        }
        for y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    false
}

/// Join components by bridges from the smallest vertex of each component
/// to vertex 0's component.
fn connect(g: &mut PlanarEmbeddedGraph) {
    let comp = g.components();
    let root = comp[0];
    let mut done = vec![false; g.n()];
    done[root] = true;
    for v in 0..g.n() {
        let c = comp[v];
        if !done[c] {
            done[c] = true;
            g.add_edge_after(root, c, None, None);
        }
    }
}

/// Add an edge across every face corner whose two sides lie in different
/// blocks, until the graph is biconnected.
fn biconnect(g: &mut PlanarEmbeddedGraph) {
    'restart: loop {
        for v in 0..g.n() {
            let rot = g.rotation_darts(v).to_vec();
            if rot.len() < 2 {
                continue;
            }
            for i in 0..rot.len() {
                let (d1, d2) = (rot[i], rot[(i + 1) % rot.len()]);
                let (u1, u2) = (g.head(d1), g.head(d2));
                if u1 == u2 || reaches_avoiding(g, u1, u2, v) {
                    continue;
                }
                // face corner u1 -> v -> u2; the dart before rev(d1) on
                // that face arrives at u1
                let faces = g.facial_walks();
                let walk = &faces.walks[faces.left(d2)];
                let k = walk.iter().position(|&x| x == rev(d1)).expect("corner on face");
                let y = walk[(k + walk.len() - 1) % walk.len()];
                g.add_edge_after(u2, u1, Some(rev(d2)), Some(rev(y)));
                continue 'restart;
            }
        }
        return;
    }
}

/// Split every face of a biconnected plane graph into triangles.
fn triangulate_faces(g: &mut PlanarEmbeddedGraph) {
    loop {
        let faces = g.facial_walks();
        let Some(walk) = faces.walks.iter().find(|w| w.len() > 3) else {
            return;
        };
        let k = walk.len();
        let vs: Vec<usize> = walk.iter().map(|&d| g.tail(d)).collect();
        // walk[i] runs vs[i] -> vs[i+1]
        let has_chord = vs[2..k - 1].iter().any(|&x| g.find_edge(vs[0], x).is_some());
        if !has_chord {
            // v0 - v2 cuts off the triangle v0 v1 v2
            g.add_edge_after(vs[0], vs[2], Some(rev(walk[k - 1])), Some(rev(walk[1])));
        } else {
            // v1 - v(k-1) cuts off v(k-1) v0 v1
            g.add_edge_after(vs[1], vs[k - 1], Some(rev(walk[0])), Some(rev(walk[k - 2])));
        }
    }
}

/// Maximal plane supergraph whose rotations contain the input rotations as
/// subsequences. Original edges keep their ids; the returned list holds the
/// ids of added edges.
pub fn triangulate_preserving_rotation(g: &PlanarEmbeddedGraph) -> Result<(PlanarEmbeddedGraph, Vec<usize>)> {
    if g.n() < 3 {
        return Err(Error::Restriction("triangulation needs at least 3 vertices".into()));
    }
    if !g.is_simple() {
        return Err(Error::Restriction("triangulation needs a simple graph".into()));
    }
    if !g.is_plane_embedding() {
        return Err(Error::Structural("rotation system is not a plane embedding".into()));
    }
    let mut t = g.clone();
    connect(&mut t);
    biconnect(&mut t);
    triangulate_faces(&mut t);
    debug_assert!(t.is_simple() && t.is_plane_embedding());
    debug_assert_eq!(t.m(), 3 * t.n() - 6);
    let added = (g.m()..t.m()).collect();
    Ok((t, added))
}

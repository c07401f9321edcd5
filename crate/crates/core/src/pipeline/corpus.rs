//! Seeded random plane graphs for test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::Point2;
use crate::graphs::{GraphFile, PlanarEmbeddedGraph, UnionFind};
use crate::gridembed::GridEmbedding;

/// Connected straight-line plane graph on `n` distinct random points of the
/// `[0, 2n]^2` grid. Edges are added greedily in random order whenever they
/// cross nothing; each edge outside a spanning tree then survives with
/// probability `keep`.
pub fn random_plane_graph(seed: u64, n: usize, keep: f64) -> Result<(PlanarEmbeddedGraph, Vec<Point2<i64>>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = 2 * n.max(1) as i64;
    let mut all: Vec<Point2<i64>> = (0..=side).flat_map(|x| (0..=side).map(move |y| Point2::new(x, y))).collect();
    all.shuffle(&mut rng);
    let coords: Vec<Point2<i64>> = all.into_iter().take(n).collect();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut rng);
    let emb = GridEmbedding { coords: coords.clone(), grid_size: side as u64 };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for p in pairs {
        edges.push(p);
        if !emb.is_crossing_free(&edges) {
            edges.pop();
        }
    }
    // a maximal crossing-free set is connected; thin it keeping a tree
    let mut uf = UnionFind::new(n);
    let mut tree = vec![false; edges.len()];
    for (k, &(a, b)) in edges.iter().enumerate() {
        tree[k] = uf.union(a, b);
    }
    let kept: Vec<(usize, usize)> = edges
        .iter()
        .zip(&tree)
        .filter(|(_, &t)| t || rng.gen_bool(keep))
        .map(|(&e, _)| e)
        .collect();
    let g = PlanarEmbeddedGraph::from_coords(n, kept, &coords)?;
    Ok((g, coords))
}

/// Graph file with coordinates for a corpus graph.
pub fn corpus_file(g: &PlanarEmbeddedGraph, coords: &[Point2<i64>]) -> GraphFile {
    let mut f = GraphFile::from_graph(g);
    f.coords = Some(coords.iter().enumerate().map(|(v, p)| (v.to_string(), p.clone())).collect());
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_graphs_repeat() {
        let (a, ca) = random_plane_graph(7, 6, 0.5).unwrap();
        let (b, cb) = random_plane_graph(7, 6, 0.5).unwrap();
        assert_eq!((a.edges(), &ca), (b.edges(), &cb));
        assert!(a.is_connected() && a.is_simple());
        let emb = GridEmbedding { coords: ca, grid_size: 12 };
        assert!(emb.is_crossing_free(a.edges()));
    }

    #[test]
    fn maximal_graphs_are_dense() {
        let (g, _) = random_plane_graph(3, 5, 1.0).unwrap();
        assert!(g.m() >= 2 * 5 - 3, "{} edges", g.m());
    }
}

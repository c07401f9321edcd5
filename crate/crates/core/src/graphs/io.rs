//! JSON graph format.
//!
//! ```json
//! {"vertices":[0,1,2],
//!  "rotation":{"0":[0,2],"1":[1,0],"2":[2,1]},
//!  "edges":[[0,1],[1,2],[2,0]],
//!  "terminals":[0,2],
//!  "weights":{"1":3}}
//! ```
//!
//! Vertex ids must be `0..n`. `rotation` lists incident edge ids clockwise;
//! it may be omitted when `coords` (`{"v":[x,y]}`) are given, in which case
//! it is read off the straight-line drawing. Missing weights default to 1.
//! For subdivision instances `terminals` are face ids.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{MultiterminalInstance, PlanarEmbeddedGraph, SubdivisionInstance};
use crate::error::{Error, Result};
use crate::geometry::Point2;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<usize>>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terminals: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<BTreeMap<String, Point2<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<usize>,
}

fn key(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("bad id key {s:?}")))
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph file serializes")
    }

    pub fn from_graph(g: &PlanarEmbeddedGraph) -> Self {
        GraphFile {
            vertices: (0..g.n()).collect(),
            rotation: Some((0..g.n()).map(|v| (v.to_string(), g.rotation_edges(v))).collect()),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            outer_face: g.outer_face(),
            ..Default::default()
        }
    }

    pub fn to_graph(&self) -> Result<PlanarEmbeddedGraph> {
        let n = self.vertices.len();
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::Structural("vertex ids must be 0..n".into()));
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = match (&self.rotation, &self.coords) {
            (Some(rot), _) => {
                let mut lists = vec![Vec::new(); n];
                for (k, list) in rot {
                    let v = key(k)?;
                    if v >= n {
                        return Err(Error::Structural(format!("rotation for unknown vertex {v}")));
                    }
                    lists[v] = list.clone();
                }
                PlanarEmbeddedGraph::from_rotation(n, edges, lists)?
            }
            (None, Some(_)) => PlanarEmbeddedGraph::from_coords(n, edges, &self.coord_vec()?)?,
            (None, None) => {
                return Err(Error::Structural("either rotation or coords is required".into()));
            }
        };
        if let Some(f) = self.outer_face {
            if f >= g.facial_walks().len() {
                return Err(Error::Structural(format!("outer face {f} does not exist")));
            }
        }
        g.set_outer_face(self.outer_face);
        Ok(g)
    }

    /// Coordinates indexed by vertex, when present.
    pub fn coord_vec(&self) -> Result<Vec<Point2<i64>>> {
        let coords = self
            .coords
            .as_ref()
            .ok_or_else(|| Error::Structural("no coordinates".into()))?;
        let n = self.vertices.len();
        let mut out = vec![None; n];
        for (k, p) in coords {
            let v = key(k)?;
            if v >= n {
                return Err(Error::Structural(format!("coordinate for unknown vertex {v}")));
            }
            out[v] = Some(p.clone());
        }
        out.into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| Error::Structural(format!("vertex {v} has no coordinate"))))
            .collect()
    }

    pub fn weight_vec(&self) -> Result<Vec<u64>> {
        let mut w = vec![1; self.edges.len()];
        for (k, &x) in &self.weights {
            let e = key(k)?;
            if e >= w.len() {
                return Err(Error::Structural(format!("weight for unknown edge {e}")));
            }
            w[e] = x;
        }
        Ok(w)
    }

    pub fn to_multiterminal(&self) -> Result<MultiterminalInstance> {
        MultiterminalInstance::new(self.to_graph()?, self.terminals.clone(), Some(self.weight_vec()?))
    }

    pub fn from_multiterminal(i: &MultiterminalInstance) -> Self {
        let mut f = Self::from_graph(&i.graph);
        f.terminals = i.terminals.clone();
        f.weights = i
            .weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 1)
            .map(|(e, &w)| (e.to_string(), w))
            .collect();
        f
    }

    pub fn to_subdivision(&self) -> Result<SubdivisionInstance> {
        SubdivisionInstance::new(self.to_graph()?, self.terminals.clone())
    }

    pub fn from_subdivision(i: &SubdivisionInstance) -> Self {
        let mut f = Self::from_graph(&i.graph);
        f.terminals = i.terminals.clone();
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRI: &str = r#"{"vertices":[0,1,2],
        "rotation":{"0":[2,0],"1":[0,1],"2":[1,2]},
        "edges":[[0,1],[1,2],[2,0]],
        "terminals":[0,2],"weights":{"1":3}}"#;

    #[test]
    fn parse_and_round_trip() {
        let f = GraphFile::parse(TRI).unwrap();
        let i = f.to_multiterminal().unwrap();
        assert_eq!(i.weights, vec![1, 3, 1]);
        let back = GraphFile::from_multiterminal(&i);
        assert_eq!(back.to_multiterminal().unwrap(), i);
        let again = GraphFile::parse(&back.to_json()).unwrap();
        assert_eq!(again, back);
    }

    #[test]
    fn coords_give_rotation() {
        let f = GraphFile::parse(
            r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],
                "coords":{"0":[0,0],"1":[2,0],"2":[1,1]}}"#,
        )
        .unwrap();
        let g = f.to_graph().unwrap();
        assert!(g.is_plane_embedding());
        assert_eq!(g.facial_walks().len(), 2);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(GraphFile::parse("{"), Err(Error::Parse(_))));
        let f = GraphFile::parse(r#"{"vertices":[0,2],"edges":[],"rotation":{}}"#).unwrap();
        assert!(matches!(f.to_graph(), Err(Error::Structural(_))));
        let f = GraphFile::parse(r#"{"vertices":[0,1],"edges":[[0,1]]}"#).unwrap();
        assert!(f.to_graph().is_err());
    }
}

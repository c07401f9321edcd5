//! End-to-end reductions with provenance records, lifting of target
//! solutions back to source solutions, corpus generation and rendering.

pub mod corpus;
pub mod render;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arrangements::{unit_disk_graph, verify_acc, verify_isolation, verify_multiterminal_cut, verify_udmc};
use crate::error::{Error, Result};
use crate::gadgets::{synth_acc_instance, synth_isolation_layout, synth_udmc_instance, DiskInstance};
use crate::geometry::{check_constraints, compute_params, ParamMode, ParamSet, ToyOverrides};
use crate::graphs::{reduce_pmc_to_subdivision, GraphFile, PlanarEmbeddedGraph, UnionFind};
use crate::gridembed::{embed_plane_graph, GridEmbedding};
use crate::solvers::{is_forest, ProblemTag};

/// The four implemented reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionKind {
    /// Unweighted planar multiterminal cut to planar subdivision.
    #[serde(rename = "pmc-subdivision")]
    PmcToSubdivision,
    /// Planar subdivision to disk isolation.
    #[serde(rename = "subdivision-isolation")]
    SubdivisionToIsolation,
    /// Feedback vertex set to connected-complement disk removal.
    #[serde(rename = "fvs-acc")]
    FvsToAcc,
    /// Weighted multiterminal cut to unit-disk multiterminal cut.
    #[serde(rename = "mc-udmc")]
    McToUdmc,
}

impl ReductionKind {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Parse(format!("unknown reduction {s:?}")))
    }

    /// Problem solved on the source side.
    pub fn source_problem(self) -> ProblemTag {
        match self {
            ReductionKind::PmcToSubdivision | ReductionKind::McToUdmc => ProblemTag::Multiterminal,
            ReductionKind::SubdivisionToIsolation => ProblemTag::Subdivision,
            ReductionKind::FvsToAcc => ProblemTag::Fvs,
        }
    }

    /// Problem solved on the target side.
    pub fn target_problem(self) -> ProblemTag {
        match self {
            ReductionKind::PmcToSubdivision => ProblemTag::Subdivision,
            ReductionKind::SubdivisionToIsolation => ProblemTag::Isolation,
            ReductionKind::FvsToAcc => ProblemTag::Acc,
            ReductionKind::McToUdmc => ProblemTag::Udmc,
        }
    }
}

/// Half-open id ranges `[start, end)`.
pub type Ranges = Vec<[usize; 2]>;

/// Compress ids into sorted maximal ranges.
pub fn to_ranges(ids: &[usize]) -> Ranges {
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out: Ranges = Vec::new();
    for x in sorted {
        match out.last_mut() {
            Some(r) if r[1] == x => r[1] += 1,
            _ => out.push([x, x + 1]),
        }
    }
    out
}

pub fn in_ranges(r: &[[usize; 2]], x: usize) -> bool {
    r.iter().any(|&[a, b]| a <= x && x < b)
}

/// Hex SHA-256 of a byte string.
pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Provenance of one reduction run. Target ids are subdivision edges and
/// faces for `pmc-subdivision`, disks otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub kind: ReductionKind,
    pub source_digest: String,
    pub target_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamSet>,
    /// The source instance itself, so lifted solutions can be re-verified.
    pub source: GraphFile,
    /// Target ids standing for each source edge.
    pub edge_map: Vec<Ranges>,
    /// Target ids standing for each source vertex.
    pub vertex_map: Vec<Ranges>,
    /// Target point, face or terminal disk of each source terminal.
    pub terminal_map: Vec<usize>,
    /// Disks per edge gadget, for isolation reductions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_e: Option<u64>,
}

impl ReductionRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let r: ReductionRecord = serde_json::from_str(s)?;
        let g = r.source.to_graph()?;
        if r.edge_map.len() != g.m() || r.vertex_map.len() != g.n() {
            return Err(Error::Structural("record maps do not cover the source".into()));
        }
        Ok(r)
    }
}

/// How parameters are chosen: mode plus toy overrides.
#[derive(Clone, Debug)]
pub struct ParamChoice {
    pub mode: ParamMode,
    pub overrides: ToyOverrides,
}

impl Default for ParamChoice {
    fn default() -> Self {
        ParamChoice { mode: ParamMode::Sound, overrides: ToyOverrides::default() }
    }
}

impl ParamChoice {
    /// Parameters for grid size `n`. Sound parameters must pass every
    /// inequality.
    pub fn resolve(&self, n: u64) -> Result<ParamSet> {
        let p = compute_params(n, self.mode, &self.overrides)?;
        if self.mode == ParamMode::Sound {
            let report = check_constraints(&p);
            if let Some(c) = report.checks.iter().find(|c| !c.holds) {
                return Err(Error::Constraint(format!("inequality {} ({}) fails at N = {n}", c.id, c.form)));
            }
        }
        Ok(p)
    }
}

/// The drawing given by the file's coordinates, or a computed grid drawing.
pub fn embedding_for(file: &GraphFile, g: &PlanarEmbeddedGraph) -> Result<GridEmbedding> {
    if file.coords.is_some() {
        let coords = file.coord_vec()?;
        let top = coords.iter().map(|p| p.x.max(p.y)).max().unwrap_or(0);
        Ok(GridEmbedding { coords, grid_size: top.max(2) as u64 })
    } else {
        embed_plane_graph(g)
    }
}

fn with_coords(mut file: GraphFile, emb: &GridEmbedding) -> GraphFile {
    file.coords = Some(emb.coords.iter().enumerate().map(|(v, p)| (v.to_string(), p.clone())).collect());
    file
}

/// Result of a reduction: the target instance text and its record.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub target: String,
    pub record: ReductionRecord,
}

/// Run a reduction on a source instance given as graph-file JSON.
pub fn reduce(kind: ReductionKind, source_text: &str, params: &ParamChoice) -> Result<Reduced> {
    let file = GraphFile::parse(source_text)?;
    let source_digest = digest(source_text);
    let (target, mut record) = match kind {
        ReductionKind::PmcToSubdivision => {
            let i = file.to_multiterminal()?;
            let (sub, back) = reduce_pmc_to_subdivision(&i)?;
            let target = GraphFile::from_subdivision(&sub).to_json();
            let edge_map = back.groups.iter().map(|g| to_ranges(g)).collect();
            let vertex_map = back.vertex_face.iter().map(|&f| vec![[f, f + 1]]).collect();
            let rec = record(kind, None, file.clone(), edge_map, vertex_map, sub.terminals.clone());
            (target, rec)
        }
        ReductionKind::SubdivisionToIsolation => {
            let sub = file.to_subdivision()?;
            let emb = embedding_for(&file, &sub.graph)?;
            let p = params.resolve(emb.grid_size)?;
            let layout = synth_isolation_layout(&sub, &emb, &p)?;
            layout.check_disjointness()?;
            let inst = layout.to_instance();
            inst.validate()?;
            let edge_map = (0..layout.edges.len())
                .map(|e| {
                    let o = layout.edge_offset(e);
                    vec![[o, o + layout.edges[e].len()]]
                })
                .collect();
            let vertex_map = (0..layout.rings.len())
                .map(|v| {
                    let o = layout.ring_offset(v);
                    vec![[o, o + layout.rings[v].len()]]
                })
                .collect();
            let terminals = (0..sub.terminals.len()).collect();
            let mut rec = record(kind, Some(p.clone()), with_coords(file.clone(), &emb), edge_map, vertex_map, terminals);
            rec.c_e = Some(p.c_e);
            (inst.to_json(), rec)
        }
        ReductionKind::FvsToAcc => {
            let g = file.to_graph()?;
            let emb = embedding_for(&file, &g)?;
            let p = params.resolve(emb.grid_size)?;
            let layout = synth_acc_instance(&g, &emb, &p)?;
            let edge_map = layout.paths.iter().map(|path| to_ranges(path)).collect();
            let vertex_map = layout.centers.iter().map(|&c| vec![[c, c + 1]]).collect();
            let rec = record(kind, Some(p), with_coords(file.clone(), &emb), edge_map, vertex_map, Vec::new());
            (layout.instance.to_json(), rec)
        }
        ReductionKind::McToUdmc => {
            let i = file.to_multiterminal()?;
            let emb = embedding_for(&file, &i.graph)?;
            let p = params.resolve(emb.grid_size)?;
            let u = synth_udmc_instance(&i, &emb, &p)?;
            let mut edge_ids = vec![Vec::new(); i.graph.m()];
            let mut vertex_ids = vec![Vec::new(); i.graph.n()];
            let mut current = 0;
            for (k, owner) in u.edge_of_disk.iter().enumerate() {
                match *owner {
                    Some(e) => edge_ids[e].push(k),
                    None => {
                        if let Some(v) = u.centroids.iter().position(|&c| c == k) {
                            current = v;
                        }
                        vertex_ids[current].push(k);
                    }
                }
            }
            let edge_map = edge_ids.iter().map(|ids| to_ranges(ids)).collect();
            let vertex_map = vertex_ids.iter().map(|ids| to_ranges(ids)).collect();
            let rec = record(kind, Some(p), with_coords(file.clone(), &emb), edge_map, vertex_map, u.instance.terminals.clone());
            (u.instance.to_json(), rec)
        }
    };
    record.source_digest = source_digest;
    record.target_digest = digest(&target);
    Ok(Reduced { target, record })
}

fn record(
    kind: ReductionKind,
    params: Option<ParamSet>,
    source: GraphFile,
    edge_map: Vec<Ranges>,
    vertex_map: Vec<Ranges>,
    terminal_map: Vec<usize>,
) -> ReductionRecord {
    ReductionRecord {
        kind,
        source_digest: String::new(),
        target_digest: String::new(),
        params,
        source,
        edge_map,
        vertex_map,
        terminal_map,
        c_e: None,
    }
}

/// Source edges recoverable from an isolation solution of `k1` disks: at
/// most `floor(k1 / C_E)` gadgets can be complete.
pub fn isolation_lift_bound(k1: u64, c_e: u64) -> u64 {
    k1 / c_e
}

/// A lifted source solution, already re-verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lifted {
    pub problem: ProblemTag,
    /// Source edges (cut or kept) or vertices.
    pub solution: Vec<usize>,
    /// Cardinality, or total weight for multiterminal cut.
    pub size: u64,
    /// Size of the target solution that was lifted.
    pub target_size: u64,
}

/// Verify `target_solution` against the target instance, map it back to the
/// source, and verify the result against the source instance.
pub fn lift(record: &ReductionRecord, target_text: &str, target_solution: &[usize]) -> Result<Lifted> {
    if digest(target_text) != record.target_digest {
        return Err(Error::Structural("target instance does not match the record digest".into()));
    }
    let src = &record.source;
    let g = src.to_graph()?;
    let reject = |why: String| Err(Error::Rejected(why));
    let (solution, size) = match record.kind {
        ReductionKind::PmcToSubdivision => {
            let sub = GraphFile::parse(target_text)?.to_subdivision()?;
            let mut keep = vec![false; sub.graph.m()];
            for &e in target_solution {
                *keep.get_mut(e).ok_or_else(|| Error::Structural(format!("edge {e} out of range")))? = true;
            }
            if !sub.separated_by(&sub.graph.facial_walks(), &keep) {
                return reject("kept edges leave two terminals in one face".into());
            }
            let cut: Vec<usize> = (0..g.m())
                .filter(|&e| target_solution.iter().any(|&k| in_ranges(&record.edge_map[e], k)))
                .collect();
            let i = src.to_multiterminal()?;
            let w: u64 = cut.iter().map(|&e| i.weights[e]).sum();
            let v = verify_multiterminal_cut(g.n(), g.edges(), &i.weights, &i.terminals, &cut, w)?;
            if !v.accept {
                return reject(format!("lifted cut: {}", v.reason));
            }
            (cut, w)
        }
        ReductionKind::SubdivisionToIsolation => {
            let inst = DiskInstance::parse(target_text)?;
            let v = verify_isolation(&inst, target_solution, target_solution.len() as u64)?;
            if !v.accept {
                return reject(v.reason);
            }
            let mut alive = vec![false; inst.disks.len()];
            for &k in target_solution {
                alive[k] = true;
            }
            let kept: Vec<usize> = (0..g.m())
                .filter(|&e| record.edge_map[e].iter().all(|&[a, b]| alive[a..b].iter().all(|&x| x)))
                .collect();
            let sub = src.to_subdivision()?;
            let mut keep = vec![false; g.m()];
            for &e in &kept {
                keep[e] = true;
            }
            if !sub.separated_by(&g.facial_walks(), &keep) {
                return reject("complete edge gadgets do not separate the terminals".into());
            }
            let n = kept.len() as u64;
            (kept, n)
        }
        ReductionKind::FvsToAcc => {
            let inst = DiskInstance::parse(target_text)?;
            let v = verify_acc(&inst, target_solution, target_solution.len() as u64)?;
            if !v.accept {
                return reject(v.reason);
            }
            let mut out: Vec<usize> = target_solution
                .iter()
                .filter_map(|&k| {
                    if let Some(v) = record.vertex_map.iter().position(|r| in_ranges(r, k)) {
                        return Some(v);
                    }
                    record.edge_map.iter().position(|r| in_ranges(r, k)).map(|e| g.edge(e).0)
                })
                .collect();
            out.sort_unstable();
            out.dedup();
            let mut alive = vec![true; g.n()];
            for &v in &out {
                alive[v] = false;
            }
            if !is_forest(g.n(), g.edges(), &alive) {
                return reject("lifted vertices leave a cycle".into());
            }
            let n = out.len() as u64;
            (out, n)
        }
        ReductionKind::McToUdmc => {
            let inst = DiskInstance::parse(target_text)?;
            let v = verify_udmc(&inst, target_solution, target_solution.len() as u64)?;
            if !v.accept {
                return reject(v.reason);
            }
            // a source edge is cut iff its endpoint centroids end up apart
            let udg = unit_disk_graph(&inst.centers(), &inst.radius);
            let mut gone = vec![false; udg.len()];
            for &k in target_solution {
                gone[k] = true;
            }
            let mut uf = UnionFind::new(inst.disks.len());
            for (k, &(a, b)) in udg.iter().enumerate() {
                if !gone[k] {
                    uf.union(a, b);
                }
            }
            let centroid = |v: usize| record.vertex_map[v].first().map(|r| r[0]);
            let mut cut = Vec::new();
            for (e, &(a, b)) in g.edges().iter().enumerate() {
                let (ca, cb) = (centroid(a), centroid(b));
                let (Some(ca), Some(cb)) = (ca, cb) else {
                    return Err(Error::Structural("record lacks a vertex gadget".into()));
                };
                if uf.find(ca) != uf.find(cb) {
                    cut.push(e);
                }
            }
            let i = src.to_multiterminal()?;
            let w: u64 = cut.iter().map(|&e| i.weights[e]).sum();
            let v = verify_multiterminal_cut(g.n(), g.edges(), &i.weights, &i.terminals, &cut, w)?;
            if !v.accept {
                return reject(format!("lifted cut: {}", v.reason));
            }
            (cut, w)
        }
    };
    Ok(Lifted {
        problem: record.kind.source_problem(),
        solution,
        size,
        target_size: target_solution.len() as u64,
    })
}

/// A claimed solution read from either certificate format: `candidate` with
/// `budget`, or an optimum certificate's `witness` with `value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub problem: Option<ProblemTag>,
    pub items: Vec<usize>,
    pub budget: Option<u64>,
}

impl Claim {
    pub fn parse(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let problem = match v.get("problem") {
            Some(serde_json::Value::String(s)) => Some(ProblemTag::parse(s)?),
            Some(_) => return Err(Error::Parse("problem must be a string".into())),
            None => None,
        };
        let list = v
            .get("candidate")
            .or_else(|| v.get("witness"))
            .or_else(|| v.get("solution"))
            .ok_or_else(|| Error::Parse("no candidate, witness or solution list".into()))?;
        let items: Vec<usize> = serde_json::from_value(list.clone())?;
        let budget = match v.get("budget").or_else(|| v.get("value")) {
            None | Some(serde_json::Value::Null) => None,
            Some(b) => Some(serde_json::from_value(b.clone())?),
        };
        Ok(Claim { problem, items, budget })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn triangle_mc() -> String {
        r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],
            "coords":{"0":[0,0],"1":[2,0],"2":[1,2]},"terminals":[0,1]}"#
            .into()
    }

    #[test]
    fn ranges_compress() {
        assert_eq!(to_ranges(&[5, 1, 2, 3, 7, 6]), vec![[1, 4], [5, 8]]);
        assert!(in_ranges(&[[1, 4]], 3) && !in_ranges(&[[1, 4]], 4));
        assert!(to_ranges(&[]).is_empty());
    }

    #[test]
    fn lift_bound_arithmetic() {
        assert_eq!(isolation_lift_bound(19, 10), 1);
        assert_eq!(isolation_lift_bound(20, 10), 2);
        assert_eq!(isolation_lift_bound(0, 10), 0);
    }

    #[test]
    fn kind_names() {
        assert_eq!(ReductionKind::parse("fvs-acc").unwrap(), ReductionKind::FvsToAcc);
        assert!(ReductionKind::parse("fvs->acc").is_err());
    }

    #[test]
    fn pmc_round_trip() {
        let red = reduce(ReductionKind::PmcToSubdivision, &triangle_mc(), &ParamChoice::default()).unwrap();
        let rec = ReductionRecord::parse(&red.record.to_json()).unwrap();
        assert_eq!(rec, red.record);
        assert_eq!(rec.edge_map.len(), 3);
        assert!(rec.edge_map.iter().all(|r| r.iter().map(|[a, b]| b - a).sum::<usize>() == 2));
        // keeping both fragments of the dual edges of primal edges 0 and 1
        let kept: Vec<usize> = rec.edge_map[0]
            .iter()
            .chain(&rec.edge_map[1])
            .flat_map(|&[a, b]| a..b)
            .collect();
        let l = lift(&rec, &red.target, &kept).unwrap();
        assert_eq!((l.solution, l.size), (vec![0, 1], 2));
        assert!(matches!(lift(&rec, &red.target, &[]), Err(Error::Rejected(_))));
    }

    #[test]
    fn empty_solution_lifts_to_empty() {
        let src = r#"{"vertices":[0,1],"edges":[[0,1]],"coords":{"0":[0,0],"1":[1,0]},"terminals":[0]}"#;
        let red = reduce(ReductionKind::PmcToSubdivision, src, &ParamChoice::default()).unwrap();
        let l = lift(&red.record, &red.target, &[]).unwrap();
        assert!(l.solution.is_empty());
    }

    #[test]
    fn fvs_lift_maps_centers() {
        let src = r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"coords":{"0":[0,0],"1":[2,0],"2":[1,2]}}"#;
        let o = ToyOverrides { r: Some(rat(1, 40)), s: Some(rat(9, 40)), a: Some(rat(1, 10)), ..Default::default() };
        let choice = ParamChoice { mode: ParamMode::Toy, overrides: o };
        let red = reduce(ReductionKind::FvsToAcc, src, &choice).unwrap();
        let c = red.record.vertex_map[2][0][0];
        let l = lift(&red.record, &red.target, &[c]).unwrap();
        assert_eq!(l.solution, vec![2]);
        let mut tampered = red.target.clone();
        tampered.push(' ');
        assert!(matches!(lift(&red.record, &tampered, &[c]), Err(Error::Structural(_))));
    }

    #[test]
    fn restrictions_reject() {
        let star5 = r#"{"vertices":[0,1,2,3,4,5],"edges":[[0,1],[0,2],[0,3],[0,4],[0,5]],
            "coords":{"0":[2,2],"1":[4,2],"2":[3,4],"3":[1,4],"4":[0,2],"5":[2,0]}}"#;
        let e = reduce(ReductionKind::FvsToAcc, star5, &ParamChoice::default()).unwrap_err();
        assert!(matches!(e, Error::Restriction(_)));
        let heavy = r#"{"vertices":[0,1],"edges":[[0,1]],"coords":{"0":[0,0],"1":[1,0]},"terminals":[0,1],"weights":{"0":6}}"#;
        let e = reduce(ReductionKind::McToUdmc, heavy, &ParamChoice::default()).unwrap_err();
        assert!(matches!(e, Error::Restriction(_)));
    }

    #[test]
    fn claims_parse_both_formats() {
        let a = Claim::parse(r#"{"problem":"acc","candidate":[1,2],"budget":2}"#).unwrap();
        assert_eq!((a.problem, a.items, a.budget), (Some(ProblemTag::Acc), vec![1, 2], Some(2)));
        let b = Claim::parse(r#"{"problem":"fvs","value":null,"witness":[],"searched":3}"#).unwrap();
        assert_eq!(b.budget, None);
        assert!(Claim::parse(r#"{"problem":"fvs"}"#).is_err());
    }
}

//! Certified brute-force optima.
//!
//! Every solver enumerates candidates by increasing cardinality in
//! lexicographic order and returns the first hit, so the witness is
//! deterministic and every smaller cardinality was tried and failed.
//! Instances beyond the caps are refused, never approximated.

mod kernel;

pub use kernel::{kernelize, solve_multiterminal, solve_multiterminal_kernelized, solve_udmc, Kernel};

use serde::{Deserialize, Serialize};

use crate::arrangements::{verify_isolation, verify_multiterminal_cut, NerveComplex};
use crate::error::{Error, Result};
use crate::gadgets::DiskInstance;
use crate::graphs::{MultiterminalInstance, PlanarEmbeddedGraph, SubdivisionInstance, UnionFind};

/// Which optimisation problem a certificate answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemTag {
    Isolation,
    Subdivision,
    Acc,
    Fvs,
    Multiterminal,
    Udmc,
}

impl ProblemTag {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Parse(format!("unknown problem {s:?}")))
    }
}

/// Optimal value with one optimal witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimumCertificate {
    pub problem: ProblemTag,
    /// `None` when no candidate works at all.
    pub value: Option<u64>,
    pub witness: Vec<usize>,
    /// Largest cardinality enumerated.
    pub searched: u64,
}

impl OptimumCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Enumeration limits: candidate cardinality and ground-set size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub subset: usize,
    pub ground: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { subset: 12, ground: 40 }
    }
}

impl Caps {
    fn check_ground(&self, what: &str, n: usize) -> Result<()> {
        if n > self.ground {
            return Err(Error::CapExceeded(format!("{what}: ground set of {n} exceeds cap {}", self.ground)));
        }
        Ok(())
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `true`; returns that subset.
pub fn first_subset<F>(n: usize, k: usize, mut f: F) -> Result<Option<Vec<usize>>>
where
    F: FnMut(&[usize]) -> Result<bool>,
{
    if k > n {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx)? {
            return Ok(Some(idx));
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return Ok(None);
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest subset of `0..n` accepted by `ok`, by increasing cardinality.
/// `monotone` says supersets of a hit are hits, which lets an infeasible
/// full set settle the search at once.
fn min_subset<F>(problem: ProblemTag, n: usize, caps: &Caps, monotone: bool, mut ok: F) -> Result<OptimumCertificate>
where
    F: FnMut(&[usize]) -> Result<bool>,
{
    caps.check_ground(&format!("{problem:?}"), n)?;
    if monotone && !ok(&(0..n).collect::<Vec<_>>())? {
        return Ok(OptimumCertificate { problem, value: None, witness: Vec::new(), searched: n as u64 });
    }
    for k in 0..=n {
        if k > caps.subset {
            return Err(Error::CapExceeded(format!(
                "{problem:?}: no solution of size at most {}",
                caps.subset
            )));
        }
        if let Some(w) = first_subset(n, k, &mut ok)? {
            return Ok(OptimumCertificate { problem, value: Some(k as u64), witness: w, searched: k as u64 });
        }
    }
    Ok(OptimumCertificate { problem, value: None, witness: Vec::new(), searched: n as u64 })
}

/// Fewest disks whose center-segment arrangement puts every point in its
/// own face. More disks only refine the arrangement, so an instance that
/// the full disk set fails is reported as having no solution.
pub fn brute_min_isolation(inst: &DiskInstance, caps: &Caps) -> Result<OptimumCertificate> {
    if inst.points.len() <= 1 {
        return Ok(OptimumCertificate { problem: ProblemTag::Isolation, value: Some(0), witness: Vec::new(), searched: 0 });
    }
    min_subset(ProblemTag::Isolation, inst.disks.len(), caps, true, |c| {
        Ok(verify_isolation(inst, c, c.len() as u64)?.accept)
    })
}

/// Fewest kept edges leaving every terminal point in its own face.
pub fn brute_min_subdivision(inst: &SubdivisionInstance, caps: &Caps) -> Result<OptimumCertificate> {
    if inst.terminals.len() <= 1 {
        return Ok(OptimumCertificate { problem: ProblemTag::Subdivision, value: Some(0), witness: Vec::new(), searched: 0 });
    }
    let faces = inst.graph.facial_walks();
    let m = inst.graph.m();
    let mut keep = vec![false; m];
    min_subset(ProblemTag::Subdivision, m, caps, true, |c| {
        keep.iter_mut().for_each(|k| *k = false);
        for &e in c {
            keep[e] = true;
        }
        Ok(inst.separated_by(&faces, &keep))
    })
}

/// Fewest removed disks after which the remaining union has no holes.
pub fn brute_min_acc(inst: &DiskInstance, caps: &Caps) -> Result<OptimumCertificate> {
    let n = inst.disks.len();
    caps.check_ground("acc", n)?;
    let nerve = NerveComplex::build(&inst.centers(), &inst.radius);
    let mut alive = vec![true; n];
    min_subset(ProblemTag::Acc, n, caps, false, |c| {
        alive.iter_mut().for_each(|a| *a = true);
        for &i in c {
            alive[i] = false;
        }
        Ok(nerve.first_betti(Some(&alive)) == 0)
    })
}

/// `true` iff the edges among vertices with `alive` set form a forest;
/// loops and parallel edges count as cycles.
pub fn is_forest(n: usize, edges: &[(usize, usize)], alive: &[bool]) -> bool {
    let mut uf = UnionFind::new(n);
    edges
        .iter()
        .filter(|&&(u, v)| alive[u] && alive[v])
        .all(|&(u, v)| uf.union(u, v))
}

/// Minimum feedback vertex set.
pub fn brute_min_fvs(g: &PlanarEmbeddedGraph, caps: &Caps) -> Result<OptimumCertificate> {
    let n = g.n();
    let mut alive = vec![true; n];
    min_subset(ProblemTag::Fvs, n, caps, true, |c| {
        alive.iter_mut().for_each(|a| *a = true);
        for &v in c {
            alive[v] = false;
        }
        Ok(is_forest(n, g.edges(), &alive))
    })
}

/// Minimum-weight edge set separating all terminals, on a plain edge list.
///
/// Cardinalities are tried in increasing order; since weights are at least
/// one, the search stops once the cardinality exceeds the best weight.
/// Among optimal sets the first in (cardinality, lexicographic) order wins.
pub fn brute_min_multiterminal_edges(
    problem: ProblemTag,
    n: usize,
    edges: &[(usize, usize)],
    weights: &[u64],
    terminals: &[usize],
    caps: &Caps,
) -> Result<OptimumCertificate> {
    let m = edges.len();
    caps.check_ground(&format!("{problem:?}"), m)?;
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut searched = 0;
    for k in 0..=m {
        if best.as_ref().is_some_and(|(w, _)| k as u64 > *w) {
            break;
        }
        if k > caps.subset {
            return Err(Error::CapExceeded(format!(
                "{problem:?}: optimality needs subsets beyond {}",
                caps.subset
            )));
        }
        searched = k;
        first_subset(m, k, |c| {
            let w: u64 = c.iter().map(|&e| weights[e]).sum();
            if best.as_ref().is_some_and(|(b, _)| w >= *b) {
                return Ok(false);
            }
            if verify_multiterminal_cut(n, edges, weights, terminals, c, w)?.accept {
                best = Some((w, c.to_vec()));
            }
            Ok(false)
        })?;
    }
    let (value, witness) = best.map_or((None, Vec::new()), |(w, c)| (Some(w), c));
    Ok(OptimumCertificate { problem, value, witness, searched: searched as u64 })
}

/// Minimum (weighted) multiterminal cut of a plane graph.
pub fn brute_min_multiterminal_cut(i: &MultiterminalInstance, caps: &Caps) -> Result<OptimumCertificate> {
    brute_min_multiterminal_edges(
        ProblemTag::Multiterminal,
        i.graph.n(),
        i.graph.edges(),
        &i.weights,
        &i.terminals,
        caps,
    )
}

//! Canonical ordering and the shift method for maximal plane graphs.

use crate::error::{Error, Result};
use crate::graphs::{Dart, PlanarEmbeddedGraph};

/// Canonical ordering `v1, v2, ..., vn` of a triangulation with outer face
/// `v1 v2 vn`, plus for each `vk` (k >= 3) its neighbors on the contour of
/// the first `k - 1` vertices, ordered from the `v1` side to the `v2` side.
pub struct CanonicalOrder {
    pub order: Vec<usize>,
    pub attach: Vec<Vec<usize>>,
}

/// Build the ordering by peeling chord-free contour vertices, lowest id
/// first. `outer` is a dart on the outer face; its tail and head become
/// `v1` and `v2`.
pub fn canonical_order(g: &PlanarEmbeddedGraph, outer: Dart) -> Result<CanonicalOrder> {
    let n = g.n();
    let faces = g.facial_walks();
    let walk = &faces.walks[faces.left(outer)];
    if walk.len() != 3 {
        return Err(Error::Structural("outer face is not a triangle".into()));
    }
    let (v1, v2) = (g.tail(outer), g.head(outer));
    let vn = g.head(g.face_next(outer));
    let mut removed = vec![false; n];
    let mut contour = vec![v1, vn, v2];
    let mut on_contour = vec![false; n];
    for &v in &contour {
        on_contour[v] = true;
    }
    let mut peeled = Vec::with_capacity(n);
    let mut attach_rev = Vec::with_capacity(n);
    while peeled.len() < n - 2 {
        let mut pick = None;
        for i in 1..contour.len() - 1 {
            let v = contour[i];
            let chord = g.neighbors(v).any(|u| {
                !removed[u] && on_contour[u] && u != contour[i - 1] && u != contour[i + 1]
            });
            if !chord && pick.is_none_or(|(_, w)| v < w) {
                pick = Some((i, v));
            }
        }
        let (i, v) = pick.ok_or_else(|| Error::Structural("no chord-free contour vertex".into()))?;
        let (left, right) = (contour[i - 1], contour[i + 1]);
        let inner = inner_neighbors(g, v, left, right, &removed);
        let mut att = vec![left];
        att.extend(&inner);
        att.push(right);
        removed[v] = true;
        on_contour[v] = false;
        for &u in &inner {
            on_contour[u] = true;
        }
        contour.splice(i..=i, inner);
        peeled.push(v);
        attach_rev.push(att);
    }
    if contour != [v1, v2] {
        return Err(Error::Structural("peeling did not end at the base edge".into()));
    }
    let mut order = vec![v1, v2];
    let mut attach = vec![Vec::new(), Vec::new()];
    order.extend(peeled.iter().rev());
    attach.extend(attach_rev.into_iter().rev());
    Ok(CanonicalOrder { order, attach })
}

/// Remaining neighbors of `v` strictly between `left` and `right` on the
/// side of the rotation that faces the rest of the graph.
fn inner_neighbors(g: &PlanarEmbeddedGraph, v: usize, left: usize, right: usize, removed: &[bool]) -> Vec<usize> {
    let heads: Vec<usize> = g.rotation_darts(v).iter().map(|&d| g.head(d)).collect();
    let k = heads.len();
    let start = heads.iter().position(|&u| u == left).expect("left neighbor adjacent");
    let collect = |step: usize| {
        let mut out = Vec::new();
        let mut i = (start + step) % k;
        while heads[i] != right {
            if !removed[heads[i]] {
                out.push(heads[i]);
            }
            i = (i + step) % k;
        }
        out
    };
    let cw = collect(1);
    if cw.is_empty() {
        collect(k - 1)
    } else {
        cw
    }
}

/// Shift-method coordinates: `v1 = (0,0)`, `v2 = (2n-4, 0)`, height `n-2`.
pub fn shift_coordinates(n: usize, co: &CanonicalOrder) -> Result<Vec<(i64, i64)>> {
    let mut x = vec![0i64; n];
    let mut y = vec![0i64; n];
    // vertices that move together with each contour vertex
    let mut under: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let (v1, v2, v3) = (co.order[0], co.order[1], co.order[2]);
    x[v2] = 2;
    x[v3] = 1;
    y[v3] = 1;
    let mut contour = vec![v1, v3, v2];
    for k in 3..n {
        let v = co.order[k];
        let att = &co.attach[k];
        let p = contour
            .iter()
            .position(|&u| u == att[0])
            .ok_or_else(|| Error::Structural("attachment not on contour".into()))?;
        let q = p + att.len() - 1;
        if q >= contour.len() || contour[p..=q] != att[..] {
            return Err(Error::Structural("attachment is not a contour interval".into()));
        }
        for &w in &contour[p + 1..q] {
            for &u in &under[w] {
                x[u] += 1;
            }
        }
        for &w in &contour[q..] {
            for &u in &under[w] {
                x[u] += 2;
            }
        }
        let (wp, wq) = (contour[p], contour[q]);
        let (sx, sy) = (x[wp] + x[wq] + y[wq] - y[wp], x[wq] - x[wp] + y[wp] + y[wq]);
        if sx % 2 != 0 || sy % 2 != 0 {
            return Err(Error::Numeric("shift step left an odd Manhattan distance".into()));
        }
        x[v] = sx / 2;
        y[v] = sy / 2;
        let mut u = vec![v];
        for &w in &contour[p + 1..q] {
            u.extend(under[w].iter().copied());
        }
        under[v] = u;
        contour.splice(p + 1..q, [v]);
    }
    Ok(x.into_iter().zip(y).collect())
}

//! Edge gadgets: a simple path of exactly `C_E` disks inside an elongated
//! octagon around the embedded edge, straight in the hallways and folded
//! into vertical columns in the cabin.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::runs::{fill_range, fill_run, Frame, Run, RunPath};
use crate::error::{Error, Result};
use crate::geometry::{ParamSet, Point2};
use crate::scalar::{floor, int, rat, Rational};
use crate::RPoint;

/// Octagon dimensions: hallways of length `a` after a clearance `s` at each
/// end, a cabin of length `b` and height `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CabinBox {
    pub s: Rational,
    pub a: Rational,
    pub b: Rational,
    pub h: Rational,
}

/// One edge gadget, kept as runs of equally spaced centers. `local` holds
/// the path in edge coordinates (`xi` from `u` towards `v`, `eta` to the
/// left); `path` is its image in the plane.
#[derive(Clone, Debug)]
pub struct EdgeGadgetLayout {
    pub edge: usize,
    pub u: RPoint,
    pub v: RPoint,
    pub frame: Frame,
    pub local: RunPath,
    pub path: RunPath,
    pub cabin: CabinBox,
    /// Number of folded columns in the cabin (0 for a straight path).
    pub columns: usize,
}

impl EdgeGadgetLayout {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn centers(&self) -> Vec<RPoint> {
        self.path.iter().collect()
    }

    /// Whether path element `k` lies in one of the two hallways.
    pub fn in_hallway(&self, k: usize) -> bool {
        let xi = self.local.get(k).x;
        xi < &self.cabin.s + &self.cabin.a || xi > &self.frame.len - &self.cabin.s - &self.cabin.a
    }

    /// Exact check of the layout contract: `C_E` disks (when `count` is
    /// given), a simple path in the intersection graph, and every center
    /// within `h/2` of the segment.
    pub fn validate(&self, p: &ParamSet, count: Option<u64>) -> Result<()> {
        if let Some(c) = count {
            if self.len() as u64 != c {
                return Err(Error::Synthesis(format!("edge {}: {} disks, expected {c}", self.edge, self.len())));
            }
        }
        // local distances are global ones divided by kappa
        let four_r2 = int(4) * &p.r * &p.r / &self.frame.kappa;
        if let Some((i, j)) = self.local.simple_path_violation(&four_r2) {
            return Err(Error::Synthesis(format!("edge {}: disks {i} and {j} break the simple path", self.edge)));
        }
        let half_h = &p.h / int(2);
        for run in &self.local.runs {
            for q in [&run.start, &run.last()] {
                if q.y.clone() > half_h || -q.y.clone() > half_h || q.x < Rational::zero() || q.x > self.frame.len {
                    return Err(Error::Synthesis(format!("edge {}: a center leaves the octagon", self.edge)));
                }
            }
        }
        Ok(())
    }
}

/// Vertical step inside cabin columns.
pub fn column_step(r: &Rational) -> Rational {
    r * rat(11, 10)
}

/// Smallest straight step allowed; two steps must clear `2r`.
pub fn min_step(r: &Rational) -> Rational {
    r * rat(11, 10)
}

/// Path of `count` disks from `(s + r, 0)` to `(len - s - r, 0)` in edge
/// coordinates, plus the number of cabin columns (0 when a straight chain
/// fits).
pub fn local_path(p: &ParamSet, len: &Rational, count: u64) -> Result<(RunPath, usize)> {
    let (r, s, a, h) = (&p.r, &p.s, &p.a, &p.h);
    let two_r = int(2) * r;
    if count < 2 {
        return Err(Error::Synthesis("an edge gadget needs C_E >= 2 disks".into()));
    }
    let first = Point2::new(s + r, Rational::zero());
    let last = Point2::new(len - s - r, Rational::zero());
    let total = &last.x - &first.x;
    if !total.is_positive() {
        return Err(Error::Synthesis("constraint (1): the edge is shorter than 2(s + r)".into()));
    }
    let lo = min_step(r);
    let step = &total / int(count as i64 - 1);
    if step > two_r {
        return Err(Error::Synthesis(format!(
            "C_E = {count} disks cannot span an edge of length {}",
            crate::scalar::format_rational(len)
        )));
    }
    if step >= lo {
        let mut runs = vec![Run::single(first.clone())];
        runs.extend(fill_run(&first, &last, count - 2));
        runs.push(Run::single(last));
        return Ok((RunPath::new(runs), 0));
    }

    // fold the surplus into columns
    let sv = column_step(r);
    let sigma = p.spacing.clone();
    let y_room = h / int(2) - r;
    let half_rows: u64 = floor(&(&y_room / &sv)).try_into().unwrap_or(0);
    if half_rows == 0 {
        return Err(Error::Synthesis("constraint (5): the cabin is too low for a column".into()));
    }
    let y_top = &sv * int(half_rows as i64);
    let x0 = s + a + &two_r;
    let entry = Point2::new(&x0 - &sigma, Rational::zero());
    let pitch = int(2) * &sigma;
    let cabin_end = len - s - a - r;
    let left = fill_range(&(&entry.x - &first.x), &lo, &two_r);
    let full = 2 * half_rows + 1;
    let folded_at = |m: u64| 2 * (half_rows + 1) + (m - 2) * full + (m - 1) + 2;
    // the straight fills hold at most total / lo disks, which bounds m below
    let straight_max: u64 = floor(&(&total / &lo)).try_into().unwrap_or(u64::MAX);
    let floor_need = count.saturating_sub(2).saturating_sub(straight_max);
    let mut m: u64 = 2;
    if folded_at(2) < floor_need {
        m = 2 + (floor_need - folded_at(2)) / (full + 1);
    }
    loop {
        let x_last = &x0 + &pitch * int(m as i64 - 1);
        if x_last > cabin_end {
            return Err(Error::Synthesis(format!(
                "constraint (5): the cabin cannot hold the {count} disks of this edge gadget"
            )));
        }
        let exit = Point2::new(&x_last + &sigma, Rational::zero());
        let folded = folded_at(m);
        if folded + 2 > count {
            return Err(Error::Synthesis(format!(
                "constraint (5): no column count yields exactly {count} disks"
            )));
        }
        let need = count - 2 - folded;
        let right = fill_range(&(&last.x - &exit.x), &lo, &two_r);
        if let (Some((l0, l1)), Some((r0, r1))) = (left, right) {
            if l0 + r0 <= need && need <= l1 + r1 {
                let q1 = l0.max(need.saturating_sub(r1));
                let q2 = need - q1;
                let mut runs = vec![Run::single(first.clone())];
                runs.extend(fill_run(&first, &entry, q1));
                runs.push(Run::single(entry.clone()));
                for c in 0..m {
                    let x = &x0 + &pitch * int(c as i64);
                    let up = Point2::new(Rational::zero(), sv.clone());
                    let down = Point2::new(Rational::zero(), -sv.clone());
                    let run = if c == 0 {
                        Run { start: Point2::new(x.clone(), Rational::zero()), step: up, len: half_rows as usize + 1 }
                    } else if c == m - 1 {
                        let (y0, st) = if c % 2 == 1 { (y_top.clone(), down) } else { (-y_top.clone(), up) };
                        Run { start: Point2::new(x.clone(), y0), step: st, len: half_rows as usize + 1 }
                    } else if c % 2 == 1 {
                        Run { start: Point2::new(x.clone(), y_top.clone()), step: down, len: full as usize }
                    } else {
                        Run { start: Point2::new(x.clone(), -y_top.clone()), step: up, len: full as usize }
                    };
                    runs.push(run);
                    if c + 1 < m {
                        let y = if c % 2 == 0 { y_top.clone() } else { -y_top.clone() };
                        runs.push(Run::single(Point2::new(&x + &sigma, y)));
                    }
                }
                runs.push(Run::single(exit.clone()));
                runs.extend(fill_run(&exit, &last, q2));
                runs.push(Run::single(last.clone()));
                return Ok((RunPath::new(runs), m as usize));
            }
        }
        m += 1;
    }
}

/// Edge gadget for the embedded segment `u -> v` with exactly `C_E` disks.
pub fn synth_edge_gadget(edge: usize, u: &RPoint, v: &RPoint, p: &ParamSet) -> Result<EdgeGadgetLayout> {
    synth_edge_gadget_with(edge, u, v, p, p.c_e)
}

/// Same shape with an explicit disk count.
pub fn synth_edge_gadget_with(edge: usize, u: &RPoint, v: &RPoint, p: &ParamSet, count: u64) -> Result<EdgeGadgetLayout> {
    synth_edge_gadget_cached(edge, u, v, p, count, &mut LocalCache::new())
}

/// Validated local paths keyed by squared edge length; the local path and
/// the frame scale depend on nothing else.
pub type LocalCache = BTreeMap<Rational, (RunPath, usize)>;

/// Edge gadget reusing local paths already built for the same length.
pub fn synth_edge_gadget_cached(
    edge: usize,
    u: &RPoint,
    v: &RPoint,
    p: &ParamSet,
    count: u64,
    cache: &mut LocalCache,
) -> Result<EdgeGadgetLayout> {
    if u == v {
        return Err(Error::Structural(format!("edge {edge} has coincident endpoints")));
    }
    let frame = Frame::segment(u, v);
    let cabin = CabinBox {
        s: p.s.clone(),
        a: p.a.clone(),
        b: &frame.len - int(2) * (&p.s + &p.a),
        h: p.h.clone(),
    };
    let key = frame.dir.norm_sq();
    if let Some((local, columns)) = cache.get(&key) {
        let path = local.map(&frame);
        return Ok(EdgeGadgetLayout { edge, u: u.clone(), v: v.clone(), frame, local: local.clone(), path, cabin, columns: *columns });
    }
    let (local, columns) = local_path(p, &frame.len, count)?;
    let path = local.map(&frame);
    let g = EdgeGadgetLayout { edge, u: u.clone(), v: v.clone(), frame, local, path, cabin, columns };
    g.validate(p, Some(count))?;
    cache.insert(key, (g.local.clone(), columns));
    Ok(g)
}

//! Vertex gadgets: the ring of `C_V` disks on the radius-`s` circle, and the
//! sixteen-fold ring with a spoke used for multiterminal cut.

use std::f64::consts::TAU;

use num_traits::Signed;

use super::runs::circle_point;
use crate::error::{Error, Result};
use crate::geometry::point::{dist_sq, orient};
use crate::geometry::{Disk, ParamSet, Point2, Provenance};
use crate::scalar::{ceil_u64, int, rat, Rational};
use crate::{RDisk, RPoint};

/// Number of perturbed copies in the multiterminal vertex gadget.
pub const MC_COPIES: usize = 16;

/// Ring centers around `center`, counter-clockwise from angle 0.
pub fn ring_centers(center: &RPoint, p: &ParamSet) -> Vec<RPoint> {
    let n = p.c_v as usize;
    (0..n).map(|k| circle_point(center, &p.s, TAU * k as f64 / n as f64)).collect()
}

/// Exact check that `ring` (points on one circle about `center`, in angular
/// order) is a cycle in the intersection graph of radius-`r` disks.
///
/// Consecutive points turn counter-clockwise by less than a half turn, so
/// the chord between non-adjacent points is shortest for index gap two.
pub fn ring_is_cycle(center: &RPoint, ring: &[RPoint], r: &Rational) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    let four_r2 = int(4) * r * r;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        let turn = orient(center, a, b);
        if !turn.is_positive() || (a - center).dot(&(b - center)).is_negative() {
            return false;
        }
        if dist_sq(a, b) > four_r2 {
            return false;
        }
        if n > 3 && dist_sq(a, &ring[(i + 2) % n]) <= four_r2 {
            return false;
        }
    }
    true
}

/// Ring about the origin, checked once; rings elsewhere are translates.
pub fn checked_ring(p: &ParamSet) -> Result<Vec<RPoint>> {
    let o = Point2::origin();
    let ring = ring_centers(&o, p);
    if !ring_is_cycle(&o, &ring, &p.r) {
        return Err(Error::Synthesis(format!("the ring of {} disks is not a cycle", ring.len())));
    }
    Ok(ring)
}

/// Ring of `C_V` disks about `center`, checked to form a cycle.
pub fn synth_vertex_gadget(vertex: usize, center: &RPoint, p: &ParamSet) -> Result<Vec<RDisk>> {
    let ring = checked_ring(p)?;
    Ok(ring
        .into_iter()
        .map(|q| &q + center)
        .enumerate()
        .map(|(index, c)| Disk::new(c, Provenance::Vertex { vertex, index }))
        .collect())
}

/// Offset of perturbed copy `j`: `(j r / 1000, (j^2 r / 10^6) mod r / 1000)`.
pub fn copy_offset(j: usize, r: &Rational) -> RPoint {
    let j = j as i64;
    let unit = r * rat(1, 1000);
    let y = r * rat(j * j, 1_000_000);
    let wraps = (&y / &unit).floor();
    Point2::new(r * rat(j, 1000), &y - &unit * wraps)
}

/// Spoke positions strictly between `center` and ring disk 0, with steps of
/// at most `9r/5`.
pub fn spoke_centers(center: &RPoint, p: &ParamSet) -> Result<Vec<RPoint>> {
    let steps = ceil_u64(&(&p.s / (&p.r * rat(9, 5))))?.max(1);
    let step = &p.s / int(steps as i64);
    Ok((1..steps).map(|k| Point2::new(&center.x + &step * int(k as i64), center.y.clone())).collect())
}

/// Multiterminal vertex gadget: centroid disk `c(v)` (index 0) followed by
/// sixteen perturbed copies of the ring and of the spoke joining `c(v)` to
/// ring disk 0.
pub fn synth_mc_vertex_gadget(vertex: usize, center: &RPoint, p: &ParamSet) -> Result<Vec<RDisk>> {
    let ring: Vec<RPoint> = checked_ring(p)?.iter().map(|q| q + center).collect();
    let spoke = spoke_centers(center, p)?;
    let mut out = vec![Disk::new(center.clone(), Provenance::Centroid { vertex })];
    for copy in 0..MC_COPIES {
        let d = copy_offset(copy, &p.r);
        out.extend(
            ring.iter()
                .enumerate()
                .map(|(index, c)| Disk::new(c + &d, Provenance::Ring { vertex, copy, index })),
        );
        out.extend(
            spoke
                .iter()
                .enumerate()
                .map(|(index, c)| Disk::new(c + &d, Provenance::Spoke { vertex, copy, index })),
        );
    }
    Ok(out)
}

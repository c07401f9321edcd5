//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles rasterise the plane and flood-fill it. They never call the
//! arrangement code, so agreement with it is meaningful.

#![allow(dead_code)]

use std::collections::VecDeque;

use diskiso::gadgets::DiskInstance;
use diskiso::geometry::{Disk, Point2, Provenance};
use diskiso::scalar::rat;
use diskiso::RPoint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Radius of the random oracle instances: `2r = 21/10`.
pub const R_NUM: i64 = 21;
pub const R_DEN: i64 = 20;

/// Pixels per unit in the flood fills.
pub const PIXELS: f64 = 32.0;

/// A random instance on integer centers in `[0, 5]^2` with radius 21/20.
/// Every fourth seed starts from a diamond of eight disks enclosing a hole
/// with a point in it.
///
/// Squared center distances are integers, so every pair either overlaps by
/// at least `2r - 2 = 1/10` or leaves a gap of at least `sqrt(5) - 2r > 1/8`.
/// Points sit at offsets `(1/3, 1/7)` from lattice points, at least `0.13`
/// from every center-to-center segment, and outside every disk.
pub struct OracleCase {
    pub centers: Vec<(i64, i64)>,
    pub points: Vec<(f64, f64)>,
    pub instance: DiskInstance,
}

pub fn oracle_case(seed: u64) -> OracleCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lattice: Vec<(i64, i64)> = (0..=5).flat_map(|x| (0..=5).map(move |y| (x, y))).collect();
    lattice.shuffle(&mut rng);
    let k = rng.gen_range(1..=10);
    let mut centers: Vec<(i64, i64)> = Vec::new();
    let mut spots: Vec<(i64, i64)> = (-1..=6).flat_map(|x| (-1..=6).map(move |y| (x, y))).collect();
    spots.shuffle(&mut rng);
    if seed.is_multiple_of(4) {
        // diamond of eight disks around a hole at (ox + 2, oy + 2)
        let (ox, oy) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
        let ring = [(2, 0), (3, 1), (4, 2), (3, 3), (2, 4), (1, 3), (0, 2), (1, 1)];
        centers.extend(ring.iter().map(|&(x, y)| (x + ox, y + oy)));
        spots.retain(|&q| q != (ox + 2, oy + 2));
        spots.insert(0, (ox + 2, oy + 2));
    }
    let target = if centers.is_empty() { k } else { 8 + k % 3 };
    for c in lattice {
        if centers.len() == target {
            break;
        }
        if !centers.contains(&c) {
            centers.push(c);
        }
    }
    let free: Vec<(i64, i64)> = spots
        .into_iter()
        .filter(|&(x, y)| {
            // exact: (3x+1-3cx)^2/9 + (7y+1-7cy)^2/49 > (21/20)^2
            centers.iter().all(|&(cx, cy)| {
                let dx = 3 * (x - cx) + 1;
                let dy = 7 * (y - cy) + 1;
                (dx * dx * 49 + dy * dy * 9) * 400 > 441 * 441
            })
        })
        .collect();
    let m = rng.gen_range(if seed.is_multiple_of(4) { 1..=3 } else { 0..=3 }).min(free.len());
    let lattice_pts = &free[..m];
    let disks = centers
        .iter()
        .map(|&(x, y)| Disk::new(Point2::new(rat(x, 1), rat(y, 1)), Provenance::Free))
        .collect();
    let pts: Vec<RPoint> = lattice_pts
        .iter()
        .map(|&(x, y)| Point2::new(rat(3 * x + 1, 3), rat(7 * y + 1, 7)))
        .collect();
    let points = lattice_pts
        .iter()
        .map(|&(x, y)| (x as f64 + 1.0 / 3.0, y as f64 + 1.0 / 7.0))
        .collect();
    OracleCase { centers, points, instance: DiskInstance::new(rat(R_NUM, R_DEN), disks, pts) }
}

/// Pixel raster over a box, with blocked cells.
struct Raster {
    x0: f64,
    y0: f64,
    w: usize,
    h: usize,
    blocked: Vec<bool>,
}

impl Raster {
    fn new(x0: f64, y0: f64, x1: f64, y1: f64, block: impl Fn(f64, f64) -> bool) -> Self {
        let w = ((x1 - x0) * PIXELS).ceil() as usize;
        let h = ((y1 - y0) * PIXELS).ceil() as usize;
        let mut blocked = vec![false; w * h];
        for j in 0..h {
            for i in 0..w {
                let (x, y) = (x0 + (i as f64 + 0.5) / PIXELS, y0 + (j as f64 + 0.5) / PIXELS);
                blocked[j * w + i] = block(x, y);
            }
        }
        Raster { x0, y0, w, h, blocked }
    }

    fn cell(&self, x: f64, y: f64) -> usize {
        let i = ((x - self.x0) * PIXELS) as usize;
        let j = ((y - self.y0) * PIXELS) as usize;
        j * self.w + i
    }

    /// 4-connected components of free cells; `None` for blocked cells.
    fn components(&self) -> (Vec<Option<usize>>, Vec<bool>) {
        let mut comp = vec![None; self.w * self.h];
        let mut touches_border = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..comp.len() {
            if self.blocked[start] || comp[start].is_some() {
                continue;
            }
            let id = touches_border.len();
            touches_border.push(false);
            comp[start] = Some(id);
            queue.push_back(start);
            while let Some(c) = queue.pop_front() {
                let (i, j) = (c % self.w, c / self.w);
                if i == 0 || j == 0 || i + 1 == self.w || j + 1 == self.h {
                    touches_border[id] = true;
                }
                let mut nbrs = Vec::with_capacity(4);
                if i > 0 {
                    nbrs.push(c - 1);
                }
                if i + 1 < self.w {
                    nbrs.push(c + 1);
                }
                if j > 0 {
                    nbrs.push(c - self.w);
                }
                if j + 1 < self.h {
                    nbrs.push(c + self.w);
                }
                for d in nbrs {
                    if !self.blocked[d] && comp[d].is_none() {
                        comp[d] = Some(id);
                        queue.push_back(d);
                    }
                }
            }
        }
        (comp, touches_border)
    }
}

fn bounds(centers: &[(i64, i64)], points: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    let xs = centers.iter().map(|c| c.0 as f64).chain(points.iter().map(|p| p.0));
    let ys = centers.iter().map(|c| c.1 as f64).chain(points.iter().map(|p| p.1));
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |a, v| (a.0.min(v), a.1.max(v)));
    let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |a, v| (a.0.min(v), a.1.max(v)));
    (x0 - 2.0, y0 - 2.0, x1 + 2.0, y1 + 2.0)
}

/// Bounded components of the complement of the union of disks.
pub fn flood_complement_holes(centers: &[(i64, i64)]) -> usize {
    if centers.is_empty() {
        return 0;
    }
    let r = R_NUM as f64 / R_DEN as f64;
    let (x0, y0, x1, y1) = bounds(centers, &[]);
    let raster = Raster::new(x0, y0, x1, y1, |x, y| {
        centers.iter().any(|&(cx, cy)| (x - cx as f64).powi(2) + (y - cy as f64).powi(2) <= r * r)
    });
    let (_, border) = raster.components();
    border.iter().filter(|&&b| !b).count()
}

fn point_segment_dist(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

/// Whether every point lies in its own region once every segment between
/// intersecting disk centers is drawn as a wall.
pub fn flood_points_separated(centers: &[(i64, i64)], points: &[(f64, f64)]) -> bool {
    if points.len() < 2 {
        return true;
    }
    let mut segs = Vec::new();
    for (i, &a) in centers.iter().enumerate() {
        for &b in &centers[i + 1..] {
            let d2 = (a.0 - b.0).pow(2) + (a.1 - b.1).pow(2);
            // d^2 <= (21/10)^2
            if d2 * 100 <= 441 {
                segs.push(((a.0 as f64, a.1 as f64), (b.0 as f64, b.1 as f64)));
            }
        }
    }
    let wall = 0.75 / PIXELS;
    let (x0, y0, x1, y1) = bounds(centers, points);
    let raster = Raster::new(x0, y0, x1, y1, |x, y| segs.iter().any(|&(a, b)| point_segment_dist((x, y), a, b) <= wall));
    let (comp, _) = raster.components();
    let ids: Vec<usize> = points
        .iter()
        .map(|&(x, y)| comp[raster.cell(x, y)].expect("oracle points lie in free cells"))
        .collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == ids.len()
}

/// Edge list from coordinate pairs, for small hand-made graphs.
pub fn coords(list: &[(i64, i64)]) -> Vec<Point2<i64>> {
    list.iter().map(|&(x, y)| Point2::new(x, y)).collect()
}

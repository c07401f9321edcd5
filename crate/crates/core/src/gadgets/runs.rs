//! Building blocks shared by the gadget synthesizers: runs of equally
//! spaced centers, a rational frame along an embedded edge, exact points on
//! circles, and a bounding-volume search for intersecting disk pairs that
//! never materializes long runs.

use num_traits::{One, Signed, Zero};

use crate::geometry::point::{dist_sq, point_segment_dist_sq, segment_segment_dist_sq};
use crate::geometry::Point2;
use crate::scalar::{from_f64_exact, int, sqrt_upper, Rational, Scalar};
use crate::RPoint;

/// Centers `start + i * step` for `i < len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub start: RPoint,
    pub step: RPoint,
    pub len: usize,
}

impl Run {
    pub fn single(p: RPoint) -> Self {
        Run { start: p, step: Point2::new(Rational::zero(), Rational::zero()), len: 1 }
    }

    pub fn get(&self, i: usize) -> RPoint {
        debug_assert!(i < self.len);
        &self.start + &self.step.scale(&int(i as i64))
    }

    pub fn last(&self) -> RPoint {
        self.get(self.len - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = RPoint> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Elements `from .. from + len`.
    pub fn sub(&self, from: usize, len: usize) -> Run {
        Run { start: self.get(from), step: self.step.clone(), len }
    }

    pub fn bbox(&self) -> BBox {
        BBox::of(&self.start).union(&BBox::of(&self.last()))
    }

    /// Map through an affine map given as origin image plus linear part.
    pub fn map(&self, f: &Frame) -> Run {
        Run { start: f.map(&self.start), step: f.map_vec(&self.step), len: self.len }
    }
}

/// Axis-aligned box of centers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub lo: RPoint,
    pub hi: RPoint,
}

impl BBox {
    pub fn of(p: &RPoint) -> Self {
        BBox { lo: p.clone(), hi: p.clone() }
    }

    pub fn union(&self, o: &BBox) -> BBox {
        BBox {
            lo: Point2::new(self.lo.x.clone().min(o.lo.x.clone()), self.lo.y.clone().min(o.lo.y.clone())),
            hi: Point2::new(self.hi.x.clone().max(o.hi.x.clone()), self.hi.y.clone().max(o.hi.y.clone())),
        }
    }

    /// Squared distance between the boxes (zero if they overlap).
    pub fn dist_sq(&self, o: &BBox) -> Rational {
        let gap = |alo: &Rational, ahi: &Rational, blo: &Rational, bhi: &Rational| {
            if ahi < blo {
                blo - ahi
            } else if bhi < alo {
                alo - bhi
            } else {
                Rational::zero()
            }
        };
        let dx = gap(&self.lo.x, &self.hi.x, &o.lo.x, &o.hi.x);
        let dy = gap(&self.lo.y, &self.hi.y, &o.lo.y, &o.hi.y);
        &dx * &dx + &dy * &dy
    }
}

/// Denominator of the upper bound used for edge lengths.
pub const FRAME_DEN: u64 = 1_000_000_000;

/// Similarity taking local coordinates `(xi, eta)` (along / left of an
/// embedded edge) to the plane: `origin + (xi d + eta perp(d)) / len`,
/// where `len >= |d|` is rational. Distances shrink by the exact factor
/// `sqrt(kappa)`, `kappa = |d|^2 / len^2 <= 1`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub origin: RPoint,
    pub dir: RPoint,
    pub len: Rational,
    pub kappa: Rational,
}

impl Frame {
    pub fn new(origin: RPoint, dir: RPoint) -> Self {
        let d2 = dir.norm_sq();
        let len = sqrt_upper(&d2, FRAME_DEN);
        let kappa = &d2 / (&len * &len);
        Frame { origin, dir, len, kappa }
    }

    /// Frame of the segment `a -> b`.
    pub fn segment(a: &RPoint, b: &RPoint) -> Self {
        Frame::new(a.clone(), b - a)
    }

    pub fn map_vec(&self, v: &RPoint) -> RPoint {
        let p = self.dir.perp();
        Point2::new(
            (&v.x * &self.dir.x + &v.y * &p.x) / &self.len,
            (&v.x * &self.dir.y + &v.y * &p.y) / &self.len,
        )
    }

    pub fn map(&self, v: &RPoint) -> RPoint {
        &self.origin + &self.map_vec(v)
    }
}

/// Exact rational point on the circle of radius `rho` about `c` at an angle
/// close to `theta` (radians). The half-angle tangent is rounded to a
/// binary rational, so the point lies on the circle exactly.
pub fn circle_point(c: &RPoint, rho: &Rational, theta: f64) -> RPoint {
    let mut t = theta.rem_euclid(std::f64::consts::TAU);
    let flip = t > std::f64::consts::FRAC_PI_2 && t < 3.0 * std::f64::consts::FRAC_PI_2;
    if flip {
        t -= std::f64::consts::PI;
    }
    if t > std::f64::consts::PI {
        t -= std::f64::consts::TAU;
    }
    let q = from_f64_exact((t / 2.0).tan());
    let one = Rational::one();
    let den = &one + &q * &q;
    let x = (&one - &q * &q) / &den;
    let y = (int(2) * &q) / &den;
    let (x, y) = if flip { (-x, -y) } else { (x, y) };
    Point2::new(&c.x + rho * x, &c.y + rho * y)
}

/// Largest number of interior points for a straight fill of length `len`
/// and the smallest, for steps within `[lo, hi]`. `None` if no count fits.
pub fn fill_range(len: &Rational, lo: &Rational, hi: &Rational) -> Option<(u64, u64)> {
    if !len.is_positive() {
        return None;
    }
    // steps k = interior + 1 with lo <= len/k <= hi
    let kmin = crate::scalar::ceil(&(len / hi));
    let kmax = crate::scalar::floor(&(len / lo));
    let kmin: u64 = kmin.try_into().ok()?;
    let kmax: u64 = kmax.try_into().ok()?;
    let kmin = kmin.max(1);
    (kmin <= kmax).then(|| (kmin - 1, kmax - 1))
}

/// Interior points of the straight fill from `a` to `b` with `count`
/// interior points, as one run (empty when `count == 0`).
pub fn fill_run(a: &RPoint, b: &RPoint, count: u64) -> Option<Run> {
    if count == 0 {
        return None;
    }
    let step = (b - a).scale(&Rational::new(1.into(), (count + 1).into()));
    Some(Run { start: a + &step, step, len: count as usize })
}

/// Whether two closed disks of radius `r` with the given squared center
/// distance intersect.
pub fn touching(d2: &Rational, four_r2: &Rational) -> bool {
    d2 <= four_r2
}

/// Sequence of runs forming one disk path; element `k` of the path is
/// the `k`-th center in run order.
#[derive(Clone, Debug, Default)]
pub struct RunPath {
    pub runs: Vec<Run>,
    offsets: Vec<usize>,
    len: usize,
}

impl RunPath {
    pub fn new(runs: Vec<Run>) -> Self {
        let mut offsets = Vec::with_capacity(runs.len());
        let mut len = 0;
        for r in &runs {
            offsets.push(len);
            len += r.len;
        }
        RunPath { runs, offsets, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn offset(&self, run: usize) -> usize {
        self.offsets[run]
    }

    pub fn get(&self, k: usize) -> RPoint {
        let i = self.offsets.partition_point(|&o| o <= k) - 1;
        self.runs[i].get(k - self.offsets[i])
    }

    pub fn first(&self) -> RPoint {
        self.get(0)
    }

    pub fn last(&self) -> RPoint {
        self.get(self.len - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = RPoint> + '_ {
        self.runs.iter().flat_map(|r| r.iter())
    }

    pub fn map(&self, f: &Frame) -> RunPath {
        RunPath::new(self.runs.iter().map(|r| r.map(f)).collect())
    }

    pub fn bbox(&self) -> Option<BBox> {
        self.runs.iter().map(Run::bbox).reduce(|a, b| a.union(&b))
    }

    /// Simple-path check: consecutive centers at squared distance at most
    /// `four_r2`, all other pairs strictly farther. Returns the first
    /// offending pair of path indices.
    pub fn simple_path_violation(&self, four_r2: &Rational) -> Option<(usize, usize)> {
        // within runs: collinear equal steps, so the step decides
        for (i, run) in self.runs.iter().enumerate() {
            if run.len >= 2 {
                let s2 = run.step.norm_sq();
                let o = self.offsets[i];
                if s2 > *four_r2 {
                    return Some((o, o + 1));
                }
                if run.len >= 3 && s2 * int(4) <= *four_r2 {
                    return Some((o, o + 2));
                }
            }
        }
        for i in 1..self.runs.len() {
            if dist_sq(&self.runs[i - 1].last(), &self.runs[i].start) > *four_r2 {
                let k = self.offsets[i];
                return Some((k - 1, k));
            }
        }
        let tree = Bvh::new(&self.runs);
        let mut bad = None;
        tree.self_pairs(four_r2, &mut |a, i, b, j| {
            let (p, q) = (self.offsets[a] + i, self.offsets[b] + j);
            if p.abs_diff(q) != 1 {
                bad = Some((p.min(q), p.max(q)));
                return false;
            }
            true
        });
        bad
    }
}

/// Bounding-volume hierarchy over a list of runs.
///
/// Pruning uses floating-point distances with a safety margin far above
/// the rounding error, so only clearly separated parts are skipped; every
/// reported pair is confirmed with exact arithmetic.
pub struct Bvh<'a> {
    runs: &'a [Run],
    approx: Vec<FRun>,
    nodes: Vec<Node>,
    scale: f64,
}

#[derive(Clone, Copy)]
struct FRun {
    start: [f64; 2],
    step: [f64; 2],
}

impl FRun {
    fn of(r: &Run) -> Self {
        let f = |q: &RPoint| [q.x.to_f64_lossy(), q.y.to_f64_lossy()];
        FRun { start: f(&r.start), step: f(&r.step) }
    }

    fn get(&self, i: usize) -> Point2<f64> {
        let k = i as f64;
        Point2::new(self.start[0] + k * self.step[0], self.start[1] + k * self.step[1])
    }
}

#[derive(Clone, Copy)]
struct FBox {
    lo: [f64; 2],
    hi: [f64; 2],
}

impl FBox {
    fn of_run(r: &FRun, len: usize) -> Self {
        let (a, b) = (r.get(0), r.get(len - 1));
        FBox { lo: [a.x.min(b.x), a.y.min(b.y)], hi: [a.x.max(b.x), a.y.max(b.y)] }
    }

    fn union(&self, o: &FBox) -> FBox {
        FBox {
            lo: [self.lo[0].min(o.lo[0]), self.lo[1].min(o.lo[1])],
            hi: [self.hi[0].max(o.hi[0]), self.hi[1].max(o.hi[1])],
        }
    }

    fn dist(&self, o: &FBox) -> f64 {
        let dx = (o.lo[0] - self.hi[0]).max(self.lo[0] - o.hi[0]).max(0.0);
        let dy = (o.lo[1] - self.hi[1]).max(self.lo[1] - o.hi[1]).max(0.0);
        dx.hypot(dy)
    }
}

struct Node {
    fbox: FBox,
    lo: usize,
    hi: usize,
    kids: Option<(usize, usize)>,
}

/// Threshold with margin: distances above it are certainly above `thr2`.
struct Cutoff<'a> {
    thr2: &'a Rational,
    far: f64,
}

impl<'a> Cutoff<'a> {
    fn new(thr2: &'a Rational, scale: f64) -> Self {
        let t = thr2.to_f64_lossy().sqrt();
        Cutoff { thr2, far: t * (1.0 + 1e-9) + 1e-12 * (1.0 + scale) }
    }
}

impl<'a> Bvh<'a> {
    /// Tree over `runs` in list order; contiguous runs share subtrees, so
    /// list order should follow space (path order does).
    pub fn new(runs: &'a [Run]) -> Self {
        let approx: Vec<FRun> = runs.iter().map(FRun::of).collect();
        let mut nodes = Vec::new();
        if !runs.is_empty() {
            let boxes: Vec<FBox> = approx.iter().zip(runs).map(|(f, r)| FBox::of_run(f, r.len)).collect();
            Self::build(&boxes, 0, runs.len(), &mut nodes);
        }
        let scale = nodes
            .first()
            .map_or(0.0, |n: &Node| n.fbox.lo.iter().chain(&n.fbox.hi).fold(0.0f64, |m, v| m.max(v.abs())));
        Bvh { runs, approx, nodes, scale }
    }

    fn build(boxes: &[FBox], lo: usize, hi: usize, nodes: &mut Vec<Node>) -> usize {
        let id = nodes.len();
        nodes.push(Node { fbox: boxes[lo], lo, hi, kids: None });
        if hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let a = Self::build(boxes, lo, mid, nodes);
            let b = Self::build(boxes, mid, hi, nodes);
            nodes[id].fbox = nodes[a].fbox.union(&nodes[b].fbox);
            nodes[id].kids = Some((a, b));
        }
        id
    }

    /// Exact box of all centers.
    pub fn bbox(&self) -> Option<BBox> {
        self.runs.iter().map(Run::bbox).reduce(|a, b| a.union(&b))
    }

    /// Calls `f(run_a, i, run_b, j)` for every pair of centers from
    /// different runs at squared distance `<= thr2`, with `run_a < run_b`.
    /// Stops when `f` returns `false`. Pairs inside one run are skipped.
    pub fn self_pairs(&self, thr2: &Rational, f: &mut dyn FnMut(usize, usize, usize, usize) -> bool) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let cut = Cutoff::new(thr2, self.scale);
        self.self_rec(0, &cut, f)
    }

    fn self_rec(&self, n: usize, cut: &Cutoff, f: &mut dyn FnMut(usize, usize, usize, usize) -> bool) -> bool {
        match self.nodes[n].kids {
            None => true,
            Some((a, b)) => self.self_rec(a, cut, f) && self.self_rec(b, cut, f) && pair_rec(self, a, self, b, cut, f),
        }
    }

    /// Close pairs between two trees: `f(run_in_self, i, run_in_other, j)`.
    pub fn cross_pairs(&self, other: &Bvh, thr2: &Rational, f: &mut dyn FnMut(usize, usize, usize, usize) -> bool) -> bool {
        if self.nodes.is_empty() || other.nodes.is_empty() {
            return true;
        }
        let cut = Cutoff::new(thr2, self.scale.max(other.scale));
        pair_rec(self, 0, other, 0, &cut, f)
    }
}

fn pair_rec(
    ta: &Bvh,
    a: usize,
    tb: &Bvh,
    b: usize,
    cut: &Cutoff,
    f: &mut dyn FnMut(usize, usize, usize, usize) -> bool,
) -> bool {
    let (na, nb) = (&ta.nodes[a], &tb.nodes[b]);
    if na.fbox.dist(&nb.fbox) > cut.far {
        return true;
    }
    match (na.kids, nb.kids) {
        (None, None) => {
            let sa = Side { run: &ta.runs[na.lo], approx: &ta.approx[na.lo] };
            let sb = Side { run: &tb.runs[nb.lo], approx: &tb.approx[nb.lo] };
            run_pairs(&sa, 0, sa.run.len, &sb, 0, sb.run.len, cut, &mut |i, j| f(na.lo, i, nb.lo, j))
        }
        (Some((a1, a2)), None) => pair_rec(ta, a1, tb, b, cut, f) && pair_rec(ta, a2, tb, b, cut, f),
        (None, Some((b1, b2))) => pair_rec(ta, a, tb, b1, cut, f) && pair_rec(ta, a, tb, b2, cut, f),
        (Some((a1, a2)), Some((b1, b2))) => {
            if na.hi - na.lo >= nb.hi - nb.lo {
                pair_rec(ta, a1, tb, b, cut, f) && pair_rec(ta, a2, tb, b, cut, f)
            } else {
                pair_rec(ta, a, tb, b1, cut, f) && pair_rec(ta, a, tb, b2, cut, f)
            }
        }
    }
}

struct Side<'a> {
    run: &'a Run,
    approx: &'a FRun,
}

/// Close pairs between sub-runs `a[ai .. ai+al]` and `b[bi .. bi+bl]`,
/// found by splitting the longer sub-run while the envelope segments are
/// not clearly farther apart than the threshold.
#[allow(clippy::too_many_arguments)]
fn run_pairs(
    a: &Side,
    ai: usize,
    al: usize,
    b: &Side,
    bi: usize,
    bl: usize,
    cut: &Cutoff,
    f: &mut dyn FnMut(usize, usize) -> bool,
) -> bool {
    let (p0, p1) = (a.approx.get(ai), a.approx.get(ai + al - 1));
    let (q0, q1) = (b.approx.get(bi), b.approx.get(bi + bl - 1));
    let d2 = match (al, bl) {
        (1, 1) => dist_sq(&p0, &q0),
        (1, _) => point_segment_dist_sq(&p0, &q0, &q1),
        (_, 1) => point_segment_dist_sq(&q0, &p0, &p1),
        _ => segment_segment_dist_sq(&p0, &p1, &q0, &q1),
    };
    if d2.max(0.0).sqrt() > cut.far {
        return true;
    }
    if al == 1 && bl == 1 {
        if dist_sq(&a.run.get(ai), &b.run.get(bi)) > *cut.thr2 {
            return true;
        }
        return f(ai, bi);
    }
    if al >= bl {
        let h = al / 2;
        run_pairs(a, ai, h, b, bi, bl, cut, f) && run_pairs(a, ai + h, al - h, b, bi, bl, cut, f)
    } else {
        let h = bl / 2;
        run_pairs(a, ai, al, b, bi, h, cut, f) && run_pairs(a, ai, al, b, bi + h, bl - h, cut, f)
    }
}

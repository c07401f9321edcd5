//! Points, vectors and the exact orientation kernel.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// A point (or displacement) in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }
}

impl<T: Scalar> Point2<T> {
    pub fn origin() -> Self {
        Point2::new(T::zero(), T::zero())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    /// Rotation by +90 degrees.
    pub fn perp(&self) -> Self {
        Point2::new(-self.y.clone(), self.x.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Point2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64_lossy(), self.y.to_f64_lossy())
    }
}

impl<T: Scalar> Add for &Point2<T> {
    type Output = Point2<T>;
    fn add(self, o: &Point2<T>) -> Point2<T> {
        Point2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }
}

impl<T: Scalar> Sub for &Point2<T> {
    type Output = Point2<T>;
    fn sub(self, o: &Point2<T>) -> Point2<T> {
        Point2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }
}

impl<T: Scalar> Mul<&T> for &Point2<T> {
    type Output = Point2<T>;
    fn mul(self, k: &T) -> Point2<T> {
        self.scale(k)
    }
}

pub fn dist_sq<T: Scalar>(a: &Point2<T>, b: &Point2<T>) -> T {
    (a - b).norm_sq()
}

/// Twice the signed area of `(a, b, c)`; positive for a counter-clockwise turn.
pub fn orient<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> T {
    (b - a).cross(&(c - a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

pub fn orientation<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> Orientation {
    let o = orient(a, b, c);
    if o.is_positive() {
        Orientation::CounterClockwise
    } else if o.is_negative() {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

fn between<T: Scalar>(v: &T, a: &T, b: &T) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= v && v <= hi
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment<T: Scalar>(p: &Point2<T>, a: &Point2<T>, b: &Point2<T>) -> bool {
    orient(a, b, p).is_zero() && between(&p.x, &a.x, &b.x) && between(&p.y, &a.y, &b.y)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>, d: &Point2<T>) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == Orientation::Collinear && on_segment(c, a, b))
        || (o2 == Orientation::Collinear && on_segment(d, a, b))
        || (o3 == Orientation::Collinear && on_segment(a, c, d))
        || (o4 == Orientation::Collinear && on_segment(b, c, d))
}

/// The open interiors of `ab` and `cd` cross at a single point that is
/// interior to both segments.
pub fn segments_cross_properly<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>, d: &Point2<T>) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let opp = |p: &T, q: &T| (p.is_positive() && q.is_negative()) || (p.is_negative() && q.is_positive());
    opp(&o1, &o2) && opp(&o3, &o4)
}

/// Result of intersecting two closed segments over a field.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentIntersection<T> {
    Empty,
    Point(Point2<T>),
    /// Collinear overlap between the two given points.
    Overlap(Point2<T>, Point2<T>),
}

/// Exact segment intersection. `T` must be a field.
pub fn segment_intersection<T: Scalar>(
    a: &Point2<T>,
    b: &Point2<T>,
    c: &Point2<T>,
    d: &Point2<T>,
) -> SegmentIntersection<T> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(&s);
    let ca = c - a;
    if denom.is_zero() {
        if !ca.cross(&r).is_zero() {
            return SegmentIntersection::Empty;
        }
        // collinear: project on r (or s if ab degenerate)
        let rr = r.norm_sq();
        if rr.is_zero() {
            return if on_segment(a, c, d) {
                SegmentIntersection::Point(a.clone())
            } else {
                SegmentIntersection::Empty
            };
        }
        let t0 = ca.dot(&r) / rr.clone();
        let t1 = (d - a).dot(&r) / rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let zero = T::zero();
        let one = T::one();
        let start = if lo > zero { lo } else { zero };
        let end = if hi < one { hi } else { one };
        if start > end {
            return SegmentIntersection::Empty;
        }
        let p = a + &r.scale(&start);
        if start == end {
            return SegmentIntersection::Point(p);
        }
        let q = a + &r.scale(&end);
        return SegmentIntersection::Overlap(p, q);
    }
    let t = ca.cross(&s) / denom.clone();
    let u = ca.cross(&r) / denom;
    let zero = T::zero();
    let one = T::one();
    if t < zero || t > one || u < zero || u > one {
        return SegmentIntersection::Empty;
    }
    SegmentIntersection::Point(a + &r.scale(&t))
}

/// Squared distance from `p` to the closed segment `ab` (field scalars).
pub fn point_segment_dist_sq<T: Scalar>(p: &Point2<T>, a: &Point2<T>, b: &Point2<T>) -> T {
    let ab = b - a;
    let ap = p - a;
    let len = ab.norm_sq();
    if len.is_zero() {
        return ap.norm_sq();
    }
    let t = ap.dot(&ab);
    if t <= T::zero() {
        return ap.norm_sq();
    }
    if t >= len {
        return dist_sq(p, b);
    }
    // |ap x ab|^2 / |ab|^2
    let c = ap.cross(&ab);
    c.clone() * c / len
}

/// Squared distance between closed segments `ab` and `cd` (field scalars).
pub fn segment_segment_dist_sq<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>, d: &Point2<T>) -> T {
    if segments_intersect(a, b, c, d) {
        return T::zero();
    }
    let cands = [
        point_segment_dist_sq(a, c, d),
        point_segment_dist_sq(b, c, d),
        point_segment_dist_sq(c, a, b),
        point_segment_dist_sq(d, a, b),
    ];
    let mut best = cands[0].clone();
    for v in cands.into_iter().skip(1) {
        if v < best {
            best = v;
        }
    }
    best
}

/// Half-plane index used to order directions by polar angle in `[0, 2pi)`.
fn half<T: Scalar>(v: &Point2<T>) -> u8 {
    let zero = T::zero();
    if v.y > zero || (v.y == zero && v.x > zero) {
        0
    } else {
        1
    }
}

/// Compare two non-zero directions by counter-clockwise polar angle from +x.
pub fn cmp_angle<T: Scalar>(u: &Point2<T>, v: &Point2<T>) -> Ordering {
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    let c = u.cross(v);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

impl Serialize for Point2<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point2<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        Ok(Point2::new(
            parse_rational(&x).map_err(D::Error::custom)?,
            parse_rational(&y).map_err(D::Error::custom)?,
        ))
    }
}

impl Serialize for Point2<i64> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point2<i64> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(Point2::new(x, y))
    }
}

/// Integer grid point lifted to the rationals.
pub fn to_rational(p: &Point2<i64>) -> Point2<Rational> {
    Point2::new(Rational::from_i64(p.x), Rational::from_i64(p.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(x: i64, y: i64) -> Point2<i64> {
        Point2::new(x, y)
    }

    fn q(x: i64, y: i64) -> Point2<Rational> {
        Point2::new(rat(x, 1), rat(y, 1))
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::CounterClockwise);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), Orientation::Clockwise);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
    }

    #[test]
    fn segment_tests_on_integers() {
        assert!(segments_intersect(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(segments_cross_properly(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        // shared endpoint: intersect but not proper
        assert!(segments_intersect(&p(0, 0), &p(1, 0), &p(1, 0), &p(2, 3)));
        assert!(!segments_cross_properly(&p(0, 0), &p(1, 0), &p(1, 0), &p(2, 3)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)));
        // collinear overlap and collinear disjoint
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
    }

    #[test]
    fn exact_intersection_points() {
        match segment_intersection(&q(0, 0), &q(2, 2), &q(0, 2), &q(2, 0)) {
            SegmentIntersection::Point(x) => assert_eq!(x, q(1, 1)),
            other => panic!("{other:?}"),
        }
        match segment_intersection(&q(0, 0), &q(4, 0), &q(3, 0), &q(1, 0)) {
            SegmentIntersection::Overlap(a, b) => {
                assert_eq!(a, q(1, 0));
                assert_eq!(b, q(3, 0));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            segment_intersection(&q(0, 0), &q(1, 1), &q(2, 0), &q(3, -1)),
            SegmentIntersection::Empty
        );
    }

    #[test]
    fn distances() {
        assert_eq!(point_segment_dist_sq(&q(1, 1), &q(0, 0), &q(2, 0)), rat(1, 1));
        assert_eq!(point_segment_dist_sq(&q(3, 1), &q(0, 0), &q(2, 0)), rat(2, 1));
        // point (1,1) to the line through (0,0),(2,1): |2*1-1*1|^2/5
        assert_eq!(point_segment_dist_sq(&q(1, 1), &q(0, 0), &q(2, 1)), rat(1, 5));
        assert_eq!(segment_segment_dist_sq(&q(0, 0), &q(1, 0), &q(0, 2), &q(1, 2)), rat(4, 1));
        assert_eq!(segment_segment_dist_sq(&q(0, 0), &q(2, 2), &q(0, 2), &q(2, 0)), rat(0, 1));
    }

    #[test]
    fn angular_order() {
        let dirs = [p(1, 0), p(1, 1), p(0, 1), p(-1, 1), p(-1, 0), p(-1, -1), p(0, -1), p(1, -1)];
        for w in dirs.windows(2) {
            assert_eq!(cmp_angle(&w[0], &w[1]), Ordering::Less);
        }
        assert_eq!(cmp_angle(&p(2, 2), &p(1, 1)), Ordering::Equal);
    }
}

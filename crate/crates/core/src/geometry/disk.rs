//! Equal-radius closed disks and their exact intersection predicates.
//!
//! Disks are closed: two disks whose centers are exactly `2r` apart
//! intersect. All predicates are generic over [`Scalar`] and exact whenever
//! the scalar is.

use serde::{Deserialize, Serialize};

use super::point::{dist_sq, Point2};
use crate::scalar::{Rational, Scalar};

/// Which gadget (and which slot in it) produced a disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Disk `index` along the path of the edge gadget of `edge`.
    Edge { edge: usize, index: usize },
    /// Disk `index` of the ring around `vertex`.
    Vertex { vertex: usize, index: usize },
    /// Center disk of a feedback-vertex-set vertex gadget.
    FvsCenter { vertex: usize },
    /// Disk `index` of the routed path of `edge` (arc, spur and edge chain).
    FvsPath { edge: usize, index: usize },
    /// Lane disk of a weighted edge gadget.
    Lane { edge: usize, lane: usize, index: usize },
    /// Perturbed endpoint copy of a weighted edge gadget (`end` 0 at the
    /// lower-id endpoint).
    EndCopy { edge: usize, end: usize, copy: usize },
    /// Copy `copy` of ring disk `index` around `vertex`.
    Ring { vertex: usize, copy: usize, index: usize },
    /// Copy `copy` of disk `index` of the spoke joining the centroid to the ring.
    Spoke { vertex: usize, copy: usize, index: usize },
    /// Centroid disk standing for `vertex`.
    Centroid { vertex: usize },
    /// Not produced by a gadget.
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk<T> {
    pub center: Point2<T>,
    pub prov: Provenance,
}

impl<T> Disk<T> {
    pub fn new(center: Point2<T>, prov: Provenance) -> Self {
        Disk { center, prov }
    }
}

impl Serialize for Disk<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            c: &'a Point2<Rational>,
            prov: &'a Provenance,
        }
        Repr { c: &self.center, prov: &self.prov }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Disk<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            c: Point2<Rational>,
            #[serde(default = "free")]
            prov: Provenance,
        }
        fn free() -> Provenance {
            Provenance::Free
        }
        let r = Repr::deserialize(d)?;
        Ok(Disk::new(r.c, r.prov))
    }
}

/// Closed disks of radius `r` centered at `a` and `b` intersect.
pub fn disks_intersect<T: Scalar>(a: &Point2<T>, b: &Point2<T>, r: &T) -> bool {
    let two_r = r.clone() + r.clone();
    dist_sq(a, b) <= two_r.clone() * two_r
}

/// `p` lies in the closed disk of radius `r` around `c`.
pub fn point_in_disk<T: Scalar>(p: &Point2<T>, c: &Point2<T>, r: &T) -> bool {
    dist_sq(p, c) <= r.clone() * r.clone()
}

/// Exact test whether three closed radius-`r` disks share a point.
///
/// The common intersection of convex sets, when nonempty and not a whole
/// disk, has a corner where two boundary circles cross; that corner lies in
/// the third disk. Each candidate corner is `m +- sqrt(t) w` with rational
/// `m`, `w`, `t`, so membership in the third disk reduces to the sign of
/// `A + tB` style expressions with a single square root. `T` must be a field.
pub fn triple_intersection_nonempty<T: Scalar>(c: [&Point2<T>; 3], r: &T) -> bool {
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    for &(i, j, _) in &pairs {
        if !disks_intersect(c[i], c[j], r) {
            return false;
        }
    }
    // coincident centers collapse to a pairwise test, already satisfied
    for &(i, j, _) in &pairs {
        if c[i] == c[j] {
            return true;
        }
    }
    let r2 = r.clone() * r.clone();
    let two = T::one() + T::one();
    let four = two.clone() + two.clone();
    for &(i, j, k) in &pairs {
        let d = c[j] - c[i];
        let d2 = d.norm_sq();
        let m = Point2::new(
            (c[i].x.clone() + c[j].x.clone()) / two.clone(),
            (c[i].y.clone() + c[j].y.clone()) / two.clone(),
        );
        let w = d.perp();
        // crossing points m +- sqrt(t) * w, with t |w|^2 = r^2 - d2/4
        let t = r2.clone() / d2.clone() - T::one() / four.clone();
        let mk = &m - c[k];
        let a = mk.norm_sq() + (r2.clone() - d2 / four.clone()) - r2.clone();
        if a <= T::zero() {
            return true;
        }
        let b = two.clone() * mk.dot(&w);
        if b.clone() * b * t >= a.clone() * a {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn q(x: Rational, y: Rational) -> Point2<Rational> {
        Point2::new(x, y)
    }

    #[test]
    fn pairwise_boundary_cases() {
        let r = int(1);
        let o = q(int(0), int(0));
        assert!(disks_intersect(&o, &o, &r));
        assert!(disks_intersect(&o, &q(int(2), int(0)), &r), "tangency counts");
        assert!(!disks_intersect(&o, &q(int(2) + rat(1, 1_000_000), int(0)), &r));
    }

    #[test]
    fn triple_concentric() {
        let r = int(1);
        let o = q(int(0), int(0));
        assert!(triple_intersection_nonempty([&o, &o, &o], &r));
    }

    #[test]
    fn triple_chain_fails_on_outer_pair() {
        let r = int(1);
        let a = q(int(0), int(0));
        let b = q(rat(19, 10), int(0));
        let c = q(rat(38, 10), int(0));
        assert!(!triple_intersection_nonempty([&a, &b, &c], &r));
    }

    #[test]
    fn triple_pairwise_close_but_hollow() {
        // Centers pairwise within 2r, but the centroid of this nearly
        // equilateral triple is farther than r from each center.
        let r = int(1);
        let a = q(int(0), int(0));
        let b = q(int(2), int(0));
        let c = q(int(1), rat(17, 10));
        let centroid = q(int(1), rat(17, 30));
        assert!(dist_sq(&centroid, &a) > int(1));
        assert!(!triple_intersection_nonempty([&a, &b, &c], &r));
    }

    #[test]
    fn triple_with_common_point() {
        let r = int(1);
        let a = q(int(0), int(0));
        let b = q(int(1), int(0));
        let c = q(rat(1, 2), int(1));
        assert!(triple_intersection_nonempty([&a, &b, &c], &r));
    }

    #[test]
    fn triple_symmetric_in_arguments() {
        let r = int(1);
        let pts = [
            q(int(0), int(0)),
            q(rat(3, 2), rat(1, 3)),
            q(rat(2, 3), rat(7, 4)),
        ];
        let want = triple_intersection_nonempty([&pts[0], &pts[1], &pts[2]], &r);
        for perm in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            assert_eq!(
                triple_intersection_nonempty([&pts[perm[0]], &pts[perm[1]], &pts[perm[2]]], &r),
                want
            );
        }
    }

    #[test]
    fn triple_lens_inside_third() {
        // third disk contains the whole lens of the first two
        let r = int(1);
        let a = q(int(-1), int(0));
        let b = q(int(1), int(0));
        let c = q(int(0), int(0));
        assert!(triple_intersection_nonempty([&a, &b, &c], &r));
    }
}

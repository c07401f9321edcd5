//! Brute-force oracles for the two grid lemmas.
//!
//! The grid is the integer lattice in `[0, n] x [0, n]`. Everything is
//! integer arithmetic; squared distances are returned as rationals.

use serde::Serialize;

use crate::scalar::{Rational, rat};

type P = (i64, i64);

fn cross(u: P, v: P) -> i128 {
    u.0 as i128 * v.1 as i128 - u.1 as i128 * v.0 as i128
}

fn dot(u: P, v: P) -> i128 {
    u.0 as i128 * v.0 as i128 + u.1 as i128 * v.1 as i128
}

fn grid(n: u64) -> Vec<P> {
    let n = n as i64;
    (0..=n).flat_map(|x| (0..=n).map(move |y| (x, y))).collect()
}

/// A line through two grid points and a grid point off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceWitness {
    pub line: [P; 2],
    pub point: P,
}

/// Minimum squared distance between a line through two grid points and a
/// grid point not on it, with one attaining triple.
pub fn min_grid_line_point_distance_sq(n: u64) -> (Rational, DistanceWitness) {
    assert!(n >= 1, "grid needs at least one cell");
    let pts = grid(n);
    // best = c^2 / len2 kept as (c^2, len2)
    let mut best: Option<(i128, i128, DistanceWitness)> = None;
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let d = (q.0 - p.0, q.1 - p.1);
            let len2 = dot(d, d);
            for &x in &pts {
                let c = cross(d, (x.0 - p.0, x.1 - p.1));
                if c == 0 {
                    continue;
                }
                let c2 = c * c;
                let better = match &best {
                    None => true,
                    Some((bc, bl, _)) => c2 * bl < bc * len2,
                };
                if better {
                    best = Some((c2, len2, DistanceWitness { line: [p, q], point: x }));
                }
            }
        }
    }
    let (c2, len2, w) = best.expect("grid with n >= 1 has an off-line point");
    (Rational::new(c2.into(), len2.into()), w)
}

/// Two grid directions from a common apex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AngleWitness {
    pub apex: P,
    pub u: P,
    pub v: P,
    /// `tan` of the acute angle between the two lines, as `"num/den"`.
    pub tan: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AngleReport {
    pub n: u64,
    pub holds: bool,
    /// The smallest angle found by exhaustive search.
    pub witness: AngleWitness,
    /// The extreme pair used in the hand proof: directions `(n, n-1)` and
    /// `(n-1, n-2)` from the origin.
    pub proof_pair: AngleWitness,
    /// The brute-force minimum is no larger than the proof pair's angle.
    pub proof_pair_is_extreme: bool,
}

/// `tan` of the acute angle between lines along `u` and `v`, as `(num, den)`
/// with `den = 0` meaning a right angle.
fn acute_tan(u: P, v: P) -> (i128, i128) {
    (cross(u, v).abs(), dot(u, v).abs())
}

/// `t1 < t2` for tangents given as fractions, `den = 0` being infinite.
fn tan_less(t1: (i128, i128), t2: (i128, i128)) -> bool {
    match (t1.1 == 0, t2.1 == 0) {
        (true, _) => false,
        (false, true) => true,
        _ => t1.0 * t2.1 < t2.0 * t1.1,
    }
}

/// The lines make an angle strictly above `2 arctan(1/m)`:
/// `tan(angle) > 2m / (m^2 - 1)`. Right angles always exceed it.
fn exceeds_double_arctan(t: (i128, i128), m: i128) -> bool {
    t.1 == 0 || t.0 * (m * m - 1) > 2 * m * t.1
}

fn tan_string(t: (i128, i128)) -> String {
    if t.1 == 0 {
        "inf".into()
    } else {
        crate::scalar::format_rational(&Rational::new(t.0.into(), t.1.into()))
    }
}

/// Exhaustively check that any two distinct lines through a grid point and
/// other grid points meet at an angle above `2 arctan(1/(6n^2))`.
pub fn min_grid_angle_exceeds(n: u64) -> AngleReport {
    assert!(n >= 2, "the angle bound is stated for n >= 2");
    let pts = grid(n);
    let m = 6 * (n as i128) * (n as i128);
    let mut holds = true;
    let mut best: Option<((i128, i128), AngleWitness)> = None;
    for &apex in &pts {
        let dirs: Vec<P> = pts
            .iter()
            .filter(|&&q| q != apex)
            .map(|&q| (q.0 - apex.0, q.1 - apex.1))
            .collect();
        for (i, &u) in dirs.iter().enumerate() {
            for &v in &dirs[i + 1..] {
                if cross(u, v) == 0 {
                    continue; // same line
                }
                let t = acute_tan(u, v);
                holds &= exceeds_double_arctan(t, m);
                if best.as_ref().is_none_or(|(bt, _)| tan_less(t, *bt)) {
                    best = Some((t, AngleWitness { apex, u, v, tan: tan_string(t) }));
                }
            }
        }
    }
    let (best_t, witness) = best.expect("n >= 2 has two distinct lines");
    let n = n as i64;
    let (pu, pv) = ((n, n - 1), (n - 1, n - 2));
    let pt = acute_tan(pu, pv);
    AngleReport {
        n: n as u64,
        holds,
        witness,
        proof_pair: AngleWitness { apex: (0, 0), u: pu, v: pv, tan: tan_string(pt) },
        proof_pair_is_extreme: !tan_less(pt, best_t),
    }
}

/// `arctan(x) > 2 arctan(x / 3)` for rational `0 < x < sqrt(3)`, decided by
/// comparing `x` with `tan(2 arctan(x/3)) = 6x / (9 - x^2)`. Both angles lie
/// in `(0, pi/2)` there, so comparing tangents is comparing angles.
pub fn arctan_identity_holds(x: &Rational) -> bool {
    let nine = rat(9, 1);
    let x2 = x * x;
    if x2 >= rat(3, 1) || *x <= rat(0, 1) {
        return false;
    }
    *x > rat(6, 1) * x / (nine - x2)
}

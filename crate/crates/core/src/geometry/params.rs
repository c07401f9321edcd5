//! Gadget constants and the five feasibility inequalities.
//!
//! Square roots and pi never appear in a decision directly: every irrational
//! quantity is replaced by a certified rational bound whose direction makes
//! the check conservative, and the bound used is recorded on the [`ParamSet`].

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{
    ceil, ceil_u64, floor, int, pi_bounds, rat, serde_rational, sqrt_upper, Rational,
};

/// Denominator of the rational upper bound on `sqrt(2) * N` (error < 1e-7).
const SQRT2N_DEN: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamMode {
    /// The closed-form constants that provably satisfy all constraints.
    Sound,
    /// User-enlarged constants for brute-force-sized experiments.
    Toy,
}

/// User overrides accepted in toy mode. Unset fields fall back to the
/// sound-mode formulas evaluated at the overridden radius.
#[derive(Clone, Debug, Default)]
pub struct ToyOverrides {
    pub r: Option<Rational>,
    pub h: Option<Rational>,
    pub s: Option<Rational>,
    pub a: Option<Rational>,
    pub spacing: Option<Rational>,
    pub c_e: Option<u64>,
    pub c_v: Option<u64>,
}

/// All geometric constants of one reduction, as exact rationals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub mode: ParamMode,
    /// Grid size: all embedded vertices lie in `[0, n] x [0, n]`.
    pub n: u64,
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(with = "serde_rational")]
    pub h: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    #[serde(with = "serde_rational")]
    pub a: Rational,
    /// Center-to-center step along straight gadget paths.
    #[serde(with = "serde_rational")]
    pub spacing: Rational,
    pub c_e: u64,
    pub c_v: u64,
    /// Upper bound on `sqrt(2) * n` used for `c_e`.
    #[serde(with = "serde_rational")]
    pub sqrt2n_upper: Rational,
    /// Upper bound on pi used for `c_v`.
    #[serde(with = "serde_rational")]
    pub pi_upper: Rational,
}

fn upper_sqrt2n(n: u64) -> Rational {
    let n = int(n as i64);
    sqrt_upper(&(int(2) * &n * &n), SQRT2N_DEN)
}

/// `ceil((sqrt2n_upper - 2s) / 2r)`, at least 1 so that oversized toy
/// parameters still produce a report instead of an error.
fn edge_count(sqrt2n_upper: &Rational, s: &Rational, r: &Rational) -> Result<u64> {
    let q = (sqrt2n_upper - int(2) * s) / (int(2) * r);
    if !q.is_positive() {
        return Ok(1);
    }
    ceil_u64(&q)
}

/// `ceil(pi_upper * s / r)`
fn vertex_count(pi_upper: &Rational, s: &Rational, r: &Rational) -> Result<u64> {
    ceil_u64(&(pi_upper * s / r))
}

/// Build the constants for grid size `n`.
pub fn compute_params(n: u64, mode: ParamMode, overrides: &ToyOverrides) -> Result<ParamSet> {
    if n < 2 {
        if mode == ParamMode::Sound {
            return Err(Error::Restriction(format!("sound mode needs grid size >= 2, got {n}")));
        }
        if n == 0 {
            return Err(Error::Restriction("grid size must be positive".into()));
        }
    }
    let nn = int(n as i64);
    let n2 = &nn * &nn;
    let n4 = &n2 * &n2;
    let (_, pi_upper) = pi_bounds();
    let sqrt2n_upper = upper_sqrt2n(n);
    let sound_r = Rational::one() / (int(40) * &n4);
    let r = match mode {
        ParamMode::Sound => sound_r,
        ParamMode::Toy => overrides.r.clone().unwrap_or(sound_r),
    };
    if !r.is_positive() {
        return Err(Error::Restriction("radius must be positive".into()));
    }
    let pick = |o: &Option<Rational>, default: Rational| match mode {
        ParamMode::Sound => default,
        ParamMode::Toy => o.clone().unwrap_or(default),
    };
    let h = pick(&overrides.h, Rational::one() / (int(12) * &n2));
    let a = pick(&overrides.a, rat(1, 4));
    let s = pick(&overrides.s, int(6) * &r * &n2);
    let spacing = pick(&overrides.spacing, int(9) * &r / int(5));
    let c_e = match (mode, overrides.c_e) {
        (ParamMode::Toy, Some(v)) => v,
        _ => edge_count(&sqrt2n_upper, &s, &r)?,
    };
    let c_v = match (mode, overrides.c_v) {
        (ParamMode::Toy, Some(v)) => v,
        _ => vertex_count(&pi_upper, &s, &r)?,
    };
    let p = ParamSet { mode, n, r, h, s, a, spacing, c_e, c_v, sqrt2n_upper, pi_upper };
    if mode == ParamMode::Sound {
        let report = check_constraints(&p);
        if let Some(bad) = report.checks.iter().find(|c| !c.holds) {
            return Err(Error::Constraint(format!(
                "sound parameters fail constraint {} at n = {n}",
                bad.id
            )));
        }
    }
    Ok(p)
}

/// One evaluated inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    /// 1..=5 for the five gadget inequalities; 6 for `spacing < 2r`; 7 for
    /// the hallway clearance `s >= r (sqrt(36 n^4 + 1) - 1)`.
    pub id: u8,
    pub holds: bool,
    /// `rhs - lhs` of the (possibly squared) inequality as evaluated.
    #[serde(with = "serde_rational")]
    pub margin: Rational,
    pub form: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub mode: ParamMode,
    pub n: u64,
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Only the five gadget inequalities.
    pub fn core_hold(&self) -> bool {
        self.checks.iter().filter(|c| c.id <= 5).all(|c| c.holds)
    }

    pub fn get(&self, id: u8) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

fn strict(id: u8, lhs: Rational, rhs: Rational, form: &str) -> ConstraintCheck {
    ConstraintCheck { id, holds: lhs < rhs, margin: rhs - lhs, form: form.into() }
}

/// `1 / (2n^2 - 2n + 1)`: the squared minimum line/grid-point distance.
pub fn min_line_gap_sq(n: u64) -> Rational {
    let n = n as i64;
    rat(1, 2 * n * n - 2 * n + 1)
}

/// Evaluate every inequality with exact arithmetic.
///
/// Inequalities with a square root on the right are compared after squaring
/// both (non-negative) sides.
pub fn check_constraints(p: &ParamSet) -> ConstraintReport {
    let two = int(2);
    let nn = int(p.n as i64);
    let n2 = &nn * &nn;
    let gap_sq = min_line_gap_sq(p.n);
    let half_h = &p.h / &two;
    let mut checks = Vec::with_capacity(7);

    checks.push(strict(1, &two * (&p.r + &p.s), Rational::one(), "2(r+s) < 1"));
    let l2 = &p.r + &p.s + &half_h;
    checks.push(strict(
        2,
        &l2 * &l2,
        gap_sq.clone(),
        "(r+s+h/2)^2 < 1/(2n^2-2n+1)",
    ));
    checks.push(strict(3, &p.h * &p.h, gap_sq, "h^2 < 1/(2n^2-2n+1)"));
    checks.push(strict(
        4,
        half_h.clone(),
        (&p.s + &p.a) / (int(6) * &n2),
        "h/2 < (s+a)/(6n^2)",
    ));

    // (5): integer inequality with the recorded C_E
    let two_r = &two * &p.r;
    let lhs5 = Rational::from_integer(BigInt::from(p.c_e))
        - Rational::from_integer(BigInt::from(2) * ceil(&(&p.a / &two_r)));
    let rows = floor(&(&p.h / &two_r));
    let cols = floor(&((Rational::one() - &two * (&p.s + &p.a)) / &two_r - Rational::one()));
    let rhs5 = Rational::from_integer(rows * cols);
    checks.push(ConstraintCheck {
        id: 5,
        holds: lhs5 <= rhs5,
        margin: &rhs5 - &lhs5,
        form: "C_E - 2 ceil(a/2r) <= floor(h/2r) floor((1-2(s+a))/2r - 1)".into(),
    });

    checks.push(strict(6, p.spacing.clone(), two_r.clone(), "spacing < 2r"));

    // s/r + 1 >= sqrt(36 n^4 + 1), squared
    let lhs7 = &p.s / &p.r + Rational::one();
    let rhs7 = int(36) * &n2 * &n2 + Rational::one();
    let sq = &lhs7 * &lhs7;
    checks.push(ConstraintCheck {
        id: 7,
        holds: !lhs7.is_negative() && sq >= rhs7,
        margin: sq - rhs7,
        form: "(s/r+1)^2 >= 36n^4+1".into(),
    });

    ConstraintReport { mode: p.mode, n: p.n, checks }
}

/// `vertices * C_V < C_E`, needed to read off the number of kept edges from
/// an isolation solution size.
pub fn vertex_budget_below_edge_count(p: &ParamSet, vertices: usize) -> bool {
    (vertices as u64).saturating_mul(p.c_v) < p.c_e
}

/// Closed form of the edge gadget count that `compute_params` should match:
/// `ceil(20 sqrt2 n^5 - s/r)` evaluated with the same `sqrt(2) n` bound.
pub fn edge_count_closed_form(p: &ParamSet) -> Result<u64> {
    edge_count(&p.sqrt2n_upper, &p.s, &p.r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sqrt_lower;

    fn sound(n: u64) -> ParamSet {
        compute_params(n, ParamMode::Sound, &ToyOverrides::default()).unwrap()
    }

    #[test]
    fn sound_constants_at_two() {
        let p = sound(2);
        assert_eq!(p.r, rat(1, 640));
        assert_eq!(p.h, rat(1, 48));
        assert_eq!(p.a, rat(1, 4));
        assert_eq!(p.s, rat(3, 80));
        assert_eq!(&p.s / &p.r, int(24));
        assert_eq!(p.c_v, 76);
        // (2*sqrt2 - 3/40) * 320 = 881.097..
        assert_eq!(p.c_e, 882);
    }

    #[test]
    fn surrogate_s_dominates_true_hallway_offset() {
        // s >= r (sqrt(36*16+1) - 1) at n = 2, via a rational upper bound of
        // the root: 24 >= sqrt(577) - 1 iff 25 >= sqrt(577).
        let p = sound(2);
        let root_hi = sqrt_upper(&int(577), 1_000_000);
        assert!(&p.s / &p.r >= root_hi - int(1));
        assert!(check_constraints(&p).get(7).unwrap().holds);
    }

    #[test]
    fn sound_mode_passes_everywhere() {
        for n in 2..=64 {
            let p = sound(n);
            let rep = check_constraints(&p);
            assert!(rep.all_hold(), "n = {n}: {rep:?}");
        }
    }

    #[test]
    fn sqrt2n_bound_is_tight() {
        for n in [2u64, 7, 64] {
            let p = sound(n);
            let lo = sqrt_lower(&int(2 * (n * n) as i64), SQRT2N_DEN);
            assert!(&p.sqrt2n_upper - &lo <= rat(1, 1_000_000));
            assert!(&p.sqrt2n_upper * &p.sqrt2n_upper >= int(2 * (n * n) as i64));
        }
    }

    #[test]
    fn sound_rejects_tiny_grid() {
        assert!(matches!(
            compute_params(1, ParamMode::Sound, &ToyOverrides::default()),
            Err(Error::Restriction(_))
        ));
    }

    #[test]
    fn doubled_radius_shrinks_margins() {
        let p = sound(2);
        let base = check_constraints(&p);
        let mut q = p.clone();
        q.r = &p.r * int(2);
        let rep = check_constraints(&q);
        for id in [1u8, 2] {
            assert!(rep.get(id).unwrap().margin < base.get(id).unwrap().margin);
        }
    }

    #[test]
    fn zero_height_kills_cabin() {
        let mut p = sound(2);
        p.h = int(0);
        let rep = check_constraints(&p);
        assert!(!rep.get(5).unwrap().holds);
    }

    #[test]
    fn toy_report() {
        let o = ToyOverrides { r: Some(rat(1, 10)), h: Some(rat(1, 2)), ..Default::default() };
        let p = compute_params(2, ParamMode::Toy, &o).unwrap();
        let rep = check_constraints(&p);
        // s = 6 r n^2 = 12/5 makes 2(r+s) >= 1
        assert!(!rep.get(1).unwrap().holds);
        assert!(!rep.core_hold());
    }

    #[test]
    fn vertex_gadgets_fit_in_one_edge_gadget() {
        // grid of n x n holds at most (n+1)^2 vertices
        for n in 2..=16u64 {
            let p = sound(n);
            assert!(vertex_budget_below_edge_count(&p, ((n + 1) * (n + 1)) as usize));
        }
    }
}

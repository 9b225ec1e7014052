//! Minimum-energy approach with a prescribed arrival time.
//!
//! When the road is longer than cruising covers in the horizon the vehicle
//! speeds up (cases I to V, bounded by `u_max` and `v_max`), when it is
//! shorter it slows down (cases VII to X, bounded by `u_min` and `v_min`), and
//! when they match it cruises (case VI). Both families share one shape: a
//! saturated arc, a ramp of the control to zero, and a hold at the target
//! speed, any of which may be absent.

use std::fmt;

use thiserror::Error;

use crate::kinematics::{Phase, Profile};
use crate::model::Scenario;
use crate::solution::{CaseTag, Solution};
use crate::weights::Weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixedCaseId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
}

impl fmt::Display for FixedCaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One admissible closed-form case at a given arrival time.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedCase {
    pub id: FixedCaseId,
    /// End of the saturated arc, when there is one.
    pub t1: Option<f64>,
    /// Time the speed bound is reached, when it is.
    pub tau: Option<f64>,
    pub v_tp: f64,
    /// Control at the start of the manoeuvre.
    pub u_start: f64,
    pub energy: f64,
    pub profile: Profile,
}

#[derive(Clone, Copy, Debug, PartialEq, Error)]
pub enum FixedError {
    #[error("arrival time {t_p} is not after the start time {t0}")]
    NotAfterStart { t0: f64, t_p: f64 },
    #[error("stop line cannot be reached by {t_p} (shortfall {shortfall} m)")]
    Unreachable { t_p: f64, shortfall: f64 },
    #[error("arrival at {t_p} is later than the latest possible arrival {latest}")]
    TooLate { t_p: f64, latest: f64 },
}

const FEAS_TOL: f64 = 1e-9;

/// Distance to spare when driving as fast as possible until `t_p`; negative
/// means the line is out of reach.
pub fn reachability_h(s: &Scenario, t_p: f64) -> f64 {
    let lim = &s.limits;
    let horizon = t_p - s.t0;
    let to_vmax = (lim.v_max - s.v0) / lim.u_max;
    if horizon <= to_vmax {
        s.v0 * horizon + 0.5 * lim.u_max * horizon * horizon - s.l
    } else {
        lim.v_max * horizon - 0.5 * (lim.v_max - s.v0).powi(2) / lim.u_max - s.l
    }
}

/// Latest arrival: brake at `u_min` down to `v_min`, then cruise.
pub fn latest_arrival(s: &Scenario) -> f64 {
    let lim = &s.limits;
    let brake = -lim.u_min;
    let to_vmin = (s.v0 - lim.v_min) / brake;
    let brake_dist = (s.v0 * s.v0 - lim.v_min * lim.v_min) / (2.0 * brake);
    if brake_dist >= s.l {
        s.t0 + (s.v0 - (s.v0 * s.v0 - 2.0 * brake * s.l).max(0.0).sqrt()) / brake
    } else {
        s.t0 + to_vmin + (s.l - brake_dist) / lim.v_min
    }
}

/// Saturated arc, ramp, hold family for one direction of speed change.
struct Family {
    u: f64,
    v_target: f64,
    ids: [FixedCaseId; 4],
}

impl Family {
    fn sign(&self) -> f64 {
        self.u.signum()
    }
}

fn accel(s: &Scenario) -> Family {
    Family {
        u: s.limits.u_max,
        v_target: s.limits.v_max,
        ids: [FixedCaseId::II, FixedCaseId::III, FixedCaseId::IV, FixedCaseId::V],
    }
}

fn decel(s: &Scenario) -> Family {
    Family {
        u: s.limits.u_min,
        v_target: s.limits.v_min,
        ids: [FixedCaseId::VII, FixedCaseId::VIII, FixedCaseId::IX, FixedCaseId::X],
    }
}

fn enumerate(s: &Scenario, t_p: f64, fam: &Family) -> Vec<FixedCase> {
    let (u, vt, v0, l, t0) = (fam.u, fam.v_target, s.v0, s.l, s.t0);
    let sg = fam.sign();
    let horizon = t_p - t0;
    let tol_t = FEAS_TOL * horizon.max(1.0);
    let tol_v = FEAS_TOL * vt.abs().max(1.0);
    let start = s.start_state();
    let d = (vt - v0) / u;
    let mut out = Vec::new();

    // Saturate, ramp to zero, hold at the bound.
    let e = (horizon * vt - l) / u;
    let disc = 6.0 * e - 3.0 * d * d;
    if disc >= -FEAS_TOL * (d * d).max(1.0) {
        let a = d - disc.max(0.0).sqrt();
        let b = 2.0 * (d - a);
        let cruise = horizon - a - b;
        if a >= -tol_t && cruise >= -tol_t {
            let (a, b) = (a.max(0.0), b.max(0.0));
            let phases = vec![Phase::hold(u, a), Phase::ramp(u, b), Phase::hold(0.0, (horizon - a - b).max(0.0))];
            out.push(FixedCase {
                id: fam.ids[0],
                t1: Some(t0 + a),
                tau: Some(t0 + a + b),
                v_tp: vt,
                u_start: u,
                energy: u * u * a + u * u * b / 3.0,
                profile: Profile::new(start, phases),
            });
        }
    }

    // Saturate, ramp to zero at the line.
    let e = (l - v0 * horizon) / u;
    let disc = 3.0 * horizon * horizon - 6.0 * e;
    if disc >= -FEAS_TOL * horizon * horizon {
        let a = horizon - disc.max(0.0).sqrt();
        let v_tp = v0 + u * (horizon + a) / 2.0;
        if a >= -tol_t && a <= horizon + tol_t && sg * (v_tp - vt) <= tol_v {
            let a = a.clamp(0.0, horizon);
            out.push(FixedCase {
                id: fam.ids[1],
                t1: Some(t0 + a),
                tau: None,
                v_tp,
                u_start: u,
                energy: u * u * (horizon + 2.0 * a) / 3.0,
                profile: Profile::new(start, vec![Phase::hold(u, a), Phase::ramp(u, horizon - a)]),
            });
        }
    }

    // Ramp to the bound, then hold.
    let dv = vt - v0;
    if dv.abs() > 0.0 {
        let ramp = 3.0 * (horizon * vt - l) / dv;
        if ramp > 0.0 && ramp <= horizon + tol_t {
            let ramp = ramp.min(horizon);
            let u0 = 2.0 * dv / ramp;
            if sg * u0 <= sg * u * (1.0 + FEAS_TOL) {
                out.push(FixedCase {
                    id: fam.ids[2],
                    t1: None,
                    tau: Some(t0 + ramp),
                    v_tp: vt,
                    u_start: u0,
                    energy: 4.0 / 3.0 * dv * dv / ramp,
                    profile: Profile::new(start, vec![Phase::ramp(u0, ramp), Phase::hold(0.0, horizon - ramp)]),
                });
            }
        }
    }

    // A single ramp ending at the line.
    let excess = l - v0 * horizon;
    let u0 = 3.0 * excess / (horizon * horizon);
    let v_tp = v0 + 1.5 * excess / horizon;
    if sg * u0 > 0.0 && sg * u0 <= sg * u * (1.0 + FEAS_TOL) && sg * (v_tp - vt) <= tol_v {
        out.push(FixedCase {
            id: fam.ids[3],
            t1: None,
            tau: None,
            v_tp,
            u_start: u0,
            energy: 3.0 * excess * excess / horizon.powi(3),
            profile: Profile::new(start, vec![Phase::ramp(u0, horizon)]),
        });
    }
    out
}

fn full_throttle(s: &Scenario, t_p: f64) -> FixedCase {
    let lim = &s.limits;
    let horizon = t_p - s.t0;
    let sat = ((lim.v_max - s.v0) / lim.u_max).min(horizon);
    FixedCase {
        id: FixedCaseId::I,
        t1: Some(s.t0 + sat),
        tau: (sat < horizon).then_some(s.t0 + sat),
        v_tp: s.v0 + lim.u_max * sat,
        u_start: lim.u_max,
        energy: lim.u_max * lim.u_max * sat,
        profile: Profile::new(
            s.start_state(),
            vec![Phase::hold(lim.u_max, sat), Phase::hold(0.0, horizon - sat)],
        ),
    }
}

fn cruise(s: &Scenario, t_p: f64) -> FixedCase {
    FixedCase {
        id: FixedCaseId::VI,
        t1: None,
        tau: None,
        v_tp: s.v0,
        u_start: 0.0,
        energy: 0.0,
        profile: Profile::new(s.start_state(), vec![Phase::hold(0.0, t_p - s.t0)]),
    }
}

/// Admissible speed-up cases at `t_p`. Assumes the line is within reach.
pub fn solve_accel_cases(s: &Scenario, t_p: f64) -> Vec<FixedCase> {
    let mut out = Vec::new();
    if reachability_h(s, t_p).abs() <= FEAS_TOL * s.l.max(1.0) {
        out.push(full_throttle(s, t_p));
    }
    out.extend(enumerate(s, t_p, &accel(s)));
    out
}

/// Admissible slow-down cases at `t_p`. Assumes `t_p` is not too late.
pub fn solve_decel_cases(s: &Scenario, t_p: f64) -> Vec<FixedCase> {
    enumerate(s, t_p, &decel(s))
}

fn cheapest(cases: Vec<FixedCase>) -> Option<FixedCase> {
    cases.into_iter().min_by(|a, b| a.energy.total_cmp(&b.energy))
}

/// Minimum-energy profile arriving exactly at `t_p`.
pub fn solve_fixed(s: &Scenario, w: &Weights, t_p: f64) -> Result<Solution, FixedError> {
    let horizon = t_p - s.t0;
    if !(horizon > 0.0) {
        return Err(FixedError::NotAfterStart { t0: s.t0, t_p });
    }
    let excess = s.l - s.v0 * horizon;
    let case = if excess.abs() <= 1e-12 * s.l.max(1.0) {
        cruise(s, t_p)
    } else if excess > 0.0 {
        let h = reachability_h(s, t_p);
        if h < -FEAS_TOL * s.l.max(1.0) {
            return Err(FixedError::Unreachable { t_p, shortfall: -h });
        }
        cheapest(solve_accel_cases(s, t_p)).unwrap_or_else(|| full_throttle(s, t_p))
    } else {
        let latest = latest_arrival(s);
        if t_p > latest + FEAS_TOL * latest.abs().max(1.0) {
            return Err(FixedError::TooLate { t_p, latest });
        }
        cheapest(solve_decel_cases(s, t_p)).ok_or(FixedError::TooLate { t_p, latest })?
    };
    Ok(Solution::from_profile(case.profile, &s.limits, w, CaseTag::Fixed(case.id)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{LightSchedule, Limits};
    use crate::weights::compute_weights;
    use proptest::prelude::*;

    fn scenario(v0: f64, l: f64) -> Scenario {
        Scenario {
            t0: 0.0,
            v0,
            l,
            limits: Limits::new(2.78, 22.22, -2.9, 2.5),
            rho: 0.9549,
            light: LightSchedule::new(60.0, 2.0 / 3.0, 0.0),
        }
    }

    fn find(cases: &[FixedCase], id: FixedCaseId) -> &FixedCase {
        cases.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("{id} missing from {cases:?}"))
    }

    #[test]
    fn reachability() {
        assert!(reachability_h(&scenario(2.78, 2203.0), 10.0) < 0.0);
        let h = reachability_h(&scenario(4.2634, 200.0), 40.0);
        let expected = 22.22 * 40.0 - 0.5 * (22.22f64 - 4.2634).powi(2) / 2.5 - 200.0;
        assert!((h - expected).abs() < 1e-9);
    }

    #[test]
    fn latest_arrival_examples() {
        let s = scenario(2.78, 200.0);
        assert!((latest_arrival(&s) - 200.0 / 2.78).abs() < 1e-9);
        let s = scenario(22.22, 200.0);
        assert!((latest_arrival(&s) - 48.51).abs() < 0.01, "{}", latest_arrival(&s));
        let s = scenario(22.22, 20.0);
        let dt = latest_arrival(&s);
        assert!((22.22 * dt - 0.5 * 2.9 * dt * dt - 20.0).abs() < 1e-9);
    }

    #[test]
    fn brake_only_latest_arrival_is_a_decel_case() {
        let s = scenario(22.22, 60.0);
        let t = latest_arrival(&s);
        let w = compute_weights(s.rho, &s.limits, s.l);
        let sol = solve_fixed(&s, &w, t).unwrap();
        assert!((sol.profile.end_state().x - 60.0).abs() < 1e-6);
    }

    #[test]
    fn boundary_at_reachability_is_full_throttle() {
        let mut s = scenario(10.0, 400.0);
        let t_p = 20.0;
        s.l = s.l + reachability_h(&s, t_p);
        let cases = solve_accel_cases(&s, t_p);
        let full = find(&cases, FixedCaseId::I);
        assert!((full.profile.end_state().x - s.l).abs() < 1e-6);
        let w = compute_weights(s.rho, &s.limits, s.l);
        let best = solve_fixed(&s, &w, t_p).unwrap();
        assert!((best.energy - full.energy).abs() < 1e-6 * full.energy);
    }

    #[test]
    fn ramp_only_speed_up() {
        let s = scenario(4.2634, 200.0);
        let cases = solve_accel_cases(&s, 40.0);
        let v = find(&cases, FixedCaseId::V);
        assert!((v.v_tp - 5.368).abs() < 1e-3, "{}", v.v_tp);
        assert!((v.u_start - 0.0552).abs() < 1e-3, "{}", v.u_start);
        assert!((v.energy - 0.040694).abs() < 1e-5, "{}", v.energy);
        let w = compute_weights(s.rho, &s.limits, s.l);
        let sol = solve_fixed(&s, &w, 40.0).unwrap();
        assert_eq!(sol.case, CaseTag::Fixed(FixedCaseId::V));
        assert!((sol.weighted_cost - 0.5310).abs() < 5e-4, "{}", sol.weighted_cost);
    }

    #[test]
    fn ramp_then_hold_speed_up() {
        let s = scenario(17.7745, 2203.0);
        let cases = solve_accel_cases(&s, 100.0);
        let iv = find(&cases, FixedCaseId::IV);
        assert!((iv.tau.unwrap() - 12.822).abs() < 1e-3);
        assert!((iv.u_start - 0.6934).abs() < 1e-3);
        assert!((iv.energy - 2.0551).abs() < 1e-3);
    }

    #[test]
    fn saturate_ramp_hold_speed_up() {
        let s = scenario(13.4875, 2203.0);
        let cases = solve_accel_cases(&s, 100.0);
        assert!(cases.iter().all(|c| c.id != FixedCaseId::IV));
        let ii = find(&cases, FixedCaseId::II);
        assert!((ii.t1.unwrap() - 0.4936).abs() < 1e-3, "{:?}", ii.t1);
        assert!((ii.energy - 15.58).abs() < 0.01, "{}", ii.energy);
        let w = compute_weights(s.rho, &s.limits, s.l);
        let sol = solve_fixed(&s, &w, 100.0).unwrap();
        assert!((sol.weighted_cost - 0.1350).abs() < 5e-4, "{}", sol.weighted_cost);
    }

    #[test]
    fn ramp_only_slow_down() {
        let s = scenario(21.5791, 2203.0);
        let cases = solve_decel_cases(&s, 120.0);
        let x = find(&cases, FixedCaseId::X);
        assert!((x.v_tp - 16.748).abs() < 1e-3);
        assert!((x.u_start + 0.0805).abs() < 1e-4);
        assert!((x.energy - 0.2593).abs() < 1e-4);

        let s = scenario(21.5791, 200.0);
        let w = compute_weights(s.rho, &s.limits, s.l);
        let sol = solve_fixed(&s, &w, 20.0).unwrap();
        assert_eq!(sol.case, CaseTag::Fixed(FixedCaseId::X));
        assert!((sol.energy - 20.111).abs() < 1e-3);
        assert!((sol.weighted_cost - 0.2841).abs() < 5e-4);
    }

    #[test]
    fn exact_cruise() {
        let s = scenario(10.0, 200.0);
        let w = compute_weights(s.rho, &s.limits, s.l);
        let sol = solve_fixed(&s, &w, 20.0).unwrap();
        assert_eq!(sol.case, CaseTag::Fixed(FixedCaseId::VI));
        assert_eq!(sol.energy, 0.0);
    }

    #[test]
    fn latest_arrival_holds_at_v_min() {
        let s = scenario(20.0, 400.0);
        let t = latest_arrival(&s);
        let cases = solve_decel_cases(&s, t);
        assert!(cases.iter().any(|c| matches!(c.id, FixedCaseId::VII | FixedCaseId::IX)));
        let w = compute_weights(s.rho, &s.limits, s.l);
        let sol = solve_fixed(&s, &w, t).unwrap();
        assert!((sol.v_tp - 2.78).abs() < 1e-6);
    }

    #[test]
    fn errors() {
        let s = scenario(10.0, 200.0);
        let w = compute_weights(s.rho, &s.limits, s.l);
        assert!(matches!(solve_fixed(&s, &w, 0.0), Err(FixedError::NotAfterStart { .. })));
        assert!(matches!(solve_fixed(&s, &w, 3.0), Err(FixedError::Unreachable { .. })));
        assert!(matches!(solve_fixed(&s, &w, 500.0), Err(FixedError::TooLate { .. })));
    }

    #[test]
    fn mirrored_single_ramps_cost_the_same() {
        let up = scenario(12.0, 12.0 * 30.0 + 40.0);
        let down = scenario(12.0, 12.0 * 30.0 - 40.0);
        let a = find(&solve_accel_cases(&up, 30.0), FixedCaseId::V).energy;
        let b = find(&solve_decel_cases(&down, 30.0), FixedCaseId::X).energy;
        assert!((a - b).abs() <= 1e-12 * a);
    }

    fn arb_fixed() -> impl Strategy<Value = (Scenario, f64)> {
        (2.78..22.22f64, 20.0..2500.0f64, 0.0..1.0f64).prop_map(|(v0, l, frac)| {
            let s = scenario(v0, l);
            // Earliest arrival solves h = 0; search it by bisection.
            let (mut lo, mut hi) = (1e-9, l / v0 + 1.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if reachability_h(&s, mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let latest = latest_arrival(&s);
            (s, hi + frac * (latest - hi))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn every_case_is_consistent((s, t_p) in arb_fixed()) {
            let cases = if s.l > s.v0 * (t_p - s.t0) {
                solve_accel_cases(&s, t_p)
            } else {
                solve_decel_cases(&s, t_p)
            };
            prop_assert!(!cases.is_empty() || (s.l - s.v0 * (t_p - s.t0)).abs() < 1e-6);
            for c in &cases {
                let end = c.profile.end_state();
                prop_assert!((end.x - s.l).abs() <= 1e-6 * s.l, "{:?} x={}", c.id, end.x);
                prop_assert!((end.t - t_p).abs() <= 1e-9 * t_p.max(1.0));
                prop_assert!(c.energy >= 0.0);
                let pe = c.profile.energy();
                prop_assert!((pe - c.energy).abs() <= 1e-9 * c.energy.max(1e-12) + 1e-15, "{:?}", c.id);
                for p in c.profile.samples((t_p - s.t0) / 1000.0) {
                    prop_assert!(p.v >= s.limits.v_min - 1e-9 && p.v <= s.limits.v_max + 1e-9);
                    prop_assert!(p.u >= s.limits.u_min - 1e-9 && p.u <= s.limits.u_max + 1e-9);
                }
            }
            let w = compute_weights(s.rho, &s.limits, s.l);
            let best = solve_fixed(&s, &w, t_p).unwrap();
            for c in &cases {
                prop_assert!(best.energy <= c.energy + 1e-12);
            }
        }
    }
}

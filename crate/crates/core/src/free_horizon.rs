//! Optimal approach when the arrival time is free (the light is ignored).
//!
//! The optimal control never brakes. It is made of at most three arcs: full
//! throttle, a ramp decaying linearly to zero, and a coast. Which arcs appear
//! depends on the initial speed and on whether the road is long enough to
//! reach `v_max`, giving four columns.

use std::fmt;

use thiserror::Error;

use crate::kinematics::{Phase, Profile};
use crate::model::Scenario;
use crate::solution::{CaseTag, Solution};
use crate::weights::Weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeColumn {
    /// Full throttle, ramp down, cruise at `v_max`.
    FullRampCruise,
    /// Full throttle, ramp down; `v_max` is never reached.
    FullRamp,
    /// Ramp down from below `u_max`, cruise at `v_max`.
    RampCruise,
    /// A single ramp; `v_max` is never reached.
    RampOnly,
}

impl fmt::Display for FreeColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreeColumn::FullRampCruise => "C1",
            FreeColumn::FullRamp => "C2",
            FreeColumn::RampCruise => "C3",
            FreeColumn::RampOnly => "C4",
        })
    }
}

/// Column choice plus the quantities it was decided from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeCase {
    pub column: FreeColumn,
    /// Speed below which the profile starts at full throttle (m/s).
    pub threshold: f64,
    /// Cruise distance left over in the full-throttle family (m).
    pub f_val: f64,
    /// Cruise distance left over in the ramp-first family (m).
    pub g_val: f64,
}

impl FreeCase {
    /// Threshold as a fraction of `v_max`.
    pub fn threshold_ratio(&self, v_max: f64) -> f64 {
        self.threshold / v_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Error)]
pub enum FreeError {
    #[error("terminal speed equation has no root in [{lo}, {hi}]")]
    RootBracket { lo: f64, hi: f64 },
}

/// Pick the column for a scenario. Requires both weights positive.
pub fn classify_free(s: &Scenario, w: &Weights) -> FreeCase {
    let lim = &s.limits;
    let (u, vmax, v0, l) = (lim.u_max, lim.v_max, s.v0, s.l);
    let r = w.ratio();
    let threshold = (1.0 - u * u * r) * vmax;
    let f_val = l - (vmax * vmax - v0 * v0) / (2.0 * u) - u * vmax * vmax * r
        + u.powi(3) * vmax * vmax * r * r / 6.0;
    let root = ((vmax - v0) * vmax * r).max(0.0).sqrt();
    let g_val = l - 2.0 * v0 * root - 4.0 / 3.0 * (vmax - v0) * root;
    let column = if v0 < threshold {
        if f_val >= 0.0 {
            FreeColumn::FullRampCruise
        } else {
            FreeColumn::FullRamp
        }
    } else if g_val >= 0.0 {
        FreeColumn::RampCruise
    } else {
        FreeColumn::RampOnly
    };
    FreeCase {
        column,
        threshold,
        f_val,
        g_val,
    }
}

/// Terminal speed of a ramp-only profile: the root of
/// `l = ⅔(v0 + 2v)·√((v − v0)·v·rho_u/rho_t)` on `[v0, v_max]`.
pub fn solve_v2(s: &Scenario, w: &Weights) -> Result<f64, FreeError> {
    let r = w.ratio();
    let v0 = s.v0;
    let covered = |v: f64| 2.0 / 3.0 * (v0 + 2.0 * v) * ((v - v0) * v * r).max(0.0).sqrt() - s.l;
    let (mut lo, mut hi) = (v0, s.limits.v_max);
    if covered(hi) < 0.0 {
        return Err(FreeError::RootBracket { lo, hi });
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if covered(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Optimal profile and arrival time without the light constraint.
pub fn solve_free(s: &Scenario, w: &Weights) -> Solution {
    let lim = &s.limits;
    let (u, vmax, v0, l) = (lim.u_max, lim.v_max, s.v0, s.l);
    let start = s.start_state();

    if w.rho_t == 0.0 {
        let profile = Profile::new(start, vec![Phase::hold(0.0, l / v0)]);
        return Solution::from_profile(profile, lim, w, CaseTag::Coast);
    }
    if w.rho_u == 0.0 {
        let to_vmax = (vmax - v0) / u;
        let run_up = v0 * to_vmax + 0.5 * u * to_vmax * to_vmax;
        let phases = if run_up >= l {
            let dt = ((v0 * v0 + 2.0 * u * l).sqrt() - v0) / u;
            vec![Phase::hold(u, dt), Phase::hold(0.0, 0.0)]
        } else {
            vec![Phase::hold(u, to_vmax), Phase::hold(0.0, (l - run_up) / vmax)]
        };
        return Solution::from_profile(Profile::new(start, phases), lim, w, CaseTag::FullThrottle);
    }

    let mut case = classify_free(s, w);
    let r = w.ratio();
    let k = 1.0 - r * u * u;
    let v1 = ((2.0 * u * l + v0 * v0) / (1.0 + 4.0 * u * u / k * r + 8.0 / 3.0 * u.powi(4) / (k * k) * r * r)).sqrt();
    if case.column == FreeColumn::FullRamp && v1 < v0 {
        // Road too short for a saturated arc: the ramp starts below u_max.
        case.column = FreeColumn::RampOnly;
    }
    let phases = match case.column {
        FreeColumn::FullRampCruise => {
            let full = (case.threshold - v0) / u;
            let ramp = 2.0 * u * vmax * r;
            vec![
                Phase::hold(u, full),
                Phase::ramp(u, ramp),
                Phase::hold(0.0, case.f_val / vmax),
            ]
        }
        FreeColumn::FullRamp => vec![Phase::hold(u, (v1 - v0) / u), Phase::ramp(u, 2.0 * u * v1 / k * r)],
        FreeColumn::RampCruise => {
            let ramp = 2.0 * ((vmax - v0) * vmax * r).sqrt();
            let u_start = ramp / (2.0 * r * vmax);
            vec![Phase::ramp(u_start, ramp), Phase::hold(0.0, case.g_val / vmax)]
        }
        FreeColumn::RampOnly => {
            let v2 = solve_v2(s, w).expect("ramp-only column brackets its terminal speed");
            let ramp = 2.0 * ((v2 - v0) * v2 * r).sqrt();
            let u_start = ramp / (2.0 * r * v2);
            vec![Phase::ramp(u_start, ramp)]
        }
    };
    Solution::from_profile(Profile::new(start, phases), lim, w, CaseTag::Free(case.column))
}

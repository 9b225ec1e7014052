use std::fmt;

use crate::fixed_horizon::FixedCaseId;
use crate::free_horizon::FreeColumn;
use crate::kinematics::Profile;
use crate::model::Limits;
use crate::weights::Weights;

/// Which closed form produced a [`Solution`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Free arrival time, both weights positive.
    Free(FreeColumn),
    /// Free arrival time with no weight on travel time: keep the initial speed.
    Coast,
    /// Free arrival time with no weight on energy: full throttle to `v_max`.
    FullThrottle,
    /// Arrival time pinned to a green-window boundary.
    Fixed(FixedCaseId),
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Free(column) => write!(f, "free/{column}"),
            CaseTag::Coast => f.write_str("free/coast"),
            CaseTag::FullThrottle => f.write_str("free/full-throttle"),
            CaseTag::Fixed(id) => write!(f, "fixed/{id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub profile: Profile,
    /// Arrival time at the stop line.
    pub t_p: f64,
    /// Speed at arrival.
    pub v_tp: f64,
    /// First time the speed reaches `v_max`; `t_p` when it never does.
    pub tau: f64,
    /// `∫u² dt`.
    pub energy: f64,
    pub weighted_cost: f64,
    pub case: CaseTag,
}

impl Solution {
    pub(crate) fn from_profile(profile: Profile, limits: &Limits, weights: &Weights, case: CaseTag) -> Self {
        let end = profile.end_state();
        let tol = 1e-9 * limits.v_max;
        let tau = profile
            .boundary_states()
            .into_iter()
            .find(|s| s.v >= limits.v_max - tol)
            .map_or(end.t, |s| s.t);
        let energy = profile.energy();
        let t0 = profile.start().t;
        Solution {
            t_p: end.t,
            v_tp: end.v,
            tau,
            energy,
            weighted_cost: crate::planner::total_cost(weights, t0, end.t, energy),
            case,
            profile,
        }
    }
}

//! Normalisation of the time and energy terms of the objective.

use crate::model::Limits;

/// Weights of the objective `rho_t·(t_p − t0) + rho_u·∫u² dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Weights {
    pub rho_t: f64,
    pub rho_u: f64,
}

impl Weights {
    /// `rho_u / rho_t`, the quantity every closed form is written in.
    pub fn ratio(&self) -> f64 {
        self.rho_u / self.rho_t
    }
}

/// Shortest road on which the vehicle can go from `v_min` to `v_max` at full
/// throttle.
pub fn full_throttle_distance(limits: &Limits) -> f64 {
    let dv = limits.v_max - limits.v_min;
    limits.v_min * dv / limits.u_max + 0.5 * dv * dv / limits.u_max
}

/// Scale both terms by their largest possible value on a road of length `l`
/// and blend them with `rho`.
///
/// Travel time is bounded by `l / v_min`. Energy is bounded by a full-throttle
/// run from `v_min`, which either saturates at `v_max` or is cut short by the
/// end of the road.
pub fn compute_weights(rho: f64, limits: &Limits, l: f64) -> Weights {
    let rho_t = rho * limits.v_min / l;
    let energy_scale = if l >= full_throttle_distance(limits) {
        (limits.v_max - limits.v_min) * limits.u_max
    } else {
        ((limits.v_min * limits.v_min + 2.0 * limits.u_max * l).sqrt() - limits.v_min) * limits.u_max
    };
    Weights {
        rho_t,
        rho_u: (1.0 - rho) / energy_scale,
    }
}

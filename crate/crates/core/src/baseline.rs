//! Rule-based human driver used as the comparison baseline.
//!
//! The driver floors it while the light is green and the speed is below
//! `v_max`, and otherwise holds the current speed. Reaching the line on red
//! means an instant stop and a wait for the next green, with no energy charged
//! for braking or restarting.

use crate::kinematics::{Phase, Profile, Sample};
use crate::model::Scenario;
use crate::planner::total_cost;
use crate::weights::compute_weights;

#[derive(Clone, Debug, PartialEq)]
pub struct HumanRun {
    /// Motion from the start until the vehicle reaches the line.
    pub profile: Profile,
    /// Time the vehicle reaches the line.
    pub reached: f64,
    /// Time the vehicle crosses the line, after any wait.
    pub t_p: f64,
    pub energy: f64,
    pub weighted_cost: f64,
    pub waited: bool,
}

impl HumanRun {
    /// Trajectory sampled every `step` seconds up to the crossing; the wait at
    /// the line is at rest.
    pub fn trajectory(&self, step: f64) -> Vec<Sample> {
        let mut out = self.profile.samples(step);
        if self.waited {
            let mut t = self.reached + step;
            while t < self.t_p {
                out.push(Sample { t, x: self.profile.end_state().x, v: 0.0, u: 0.0 });
                t += step;
            }
            out.push(Sample { t: self.t_p, x: self.profile.end_state().x, v: 0.0, u: 0.0 });
        }
        out
    }
}

pub fn simulate_human(s: &Scenario) -> HumanRun {
    let lim = &s.limits;
    let light = &s.light;
    let (mut t, mut x, mut v) = (s.t0, 0.0, s.v0);
    let mut phases = Vec::new();
    let mut energy = 0.0;
    let tol_v = 1e-12 * lim.v_max;

    loop {
        let left = s.l - x;
        if left <= 1e-12 * s.l.max(1.0) {
            break;
        }
        let green_until = light.green_end_after(t).filter(|&end| end - t > 1e-12 * t.abs().max(1.0));
        let (u, until) = match green_until {
            Some(end) if v < lim.v_max - tol_v => (lim.u_max, end.min(t + (lim.v_max - v) / lim.u_max)),
            Some(end) => (0.0, end),
            None => (0.0, light.next_green_start(t)),
        };
        let mut dt = until - t;
        let covered = v * dt + 0.5 * u * dt * dt;
        let arrives = covered >= left;
        if arrives {
            dt = if u > 0.0 {
                ((v * v + 2.0 * u * left).sqrt() - v) / u
            } else {
                left / v
            };
        }
        phases.push(Phase::hold(u, dt));
        energy += u * u * dt;
        t += dt;
        v += u * dt;
        if arrives {
            break;
        }
        x += covered;
        if u > 0.0 && v >= lim.v_max - tol_v {
            v = lim.v_max;
        }
    }

    let profile = Profile::new(s.start_state(), phases);
    let reached = profile.end_state().t;
    let waited = !light.is_green(reached);
    let t_p = if waited { light.next_green_start(reached) } else { reached };
    let w = compute_weights(s.rho, lim, s.l);
    HumanRun {
        weighted_cost: total_cost(&w, s.t0, t_p, energy),
        profile,
        reached,
        t_p,
        energy,
        waited,
    }
}

/// Relative improvement of `av` over `hd`; negative when the baseline is
/// cheaper.
pub fn improvement(hd: f64, av: f64) -> f64 {
    (hd - av) / hd
}

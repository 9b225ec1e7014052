//! Double-integrator propagation for the two control primitives used by every
//! optimal profile: a constant control and a control decaying linearly to
//! zero.

use thiserror::Error;

use crate::model::VehicleState;

/// Advance `state` under the constant control `u` for `dt` seconds.
///
/// Returns the new state and the energy `∫u² dt` spent.
pub fn propagate_hold(state: VehicleState, u: f64, dt: f64) -> (VehicleState, f64) {
    let next = VehicleState {
        t: state.t + dt,
        x: state.x + state.v * dt + 0.5 * u * dt * dt,
        v: state.v + u * dt,
    };
    (next, u * u * dt)
}

/// Advance `state` under `u(s) = u_start·(dt − s)/dt`, `s ∈ [0, dt]`.
///
/// A zero-length ramp leaves the state unchanged.
pub fn propagate_ramp(state: VehicleState, u_start: f64, dt: f64) -> (VehicleState, f64) {
    if dt <= 0.0 {
        return (state, 0.0);
    }
    let slope = u_start / dt;
    let dt2 = dt * dt;
    let dt3 = dt2 * dt;
    let next = VehicleState {
        t: state.t + dt,
        x: state.x + state.v * dt + slope * dt3 / 3.0,
        v: state.v + 0.5 * slope * dt2,
    };
    (next, slope * slope * dt3 / 3.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhaseKind {
    /// Constant control.
    Hold { u: f64 },
    /// Control starting at `u_start` and decreasing linearly in magnitude to
    /// zero at the end of the phase.
    RampToZero { u_start: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Phase {
    pub kind: PhaseKind,
    pub dt: f64,
}

impl Phase {
    pub fn hold(u: f64, dt: f64) -> Self {
        Phase {
            kind: PhaseKind::Hold { u },
            dt,
        }
    }

    pub fn ramp(u_start: f64, dt: f64) -> Self {
        Phase {
            kind: PhaseKind::RampToZero { u_start },
            dt,
        }
    }

    /// Control at phase-local time `s`.
    pub fn control_at(&self, s: f64) -> f64 {
        match self.kind {
            PhaseKind::Hold { u } => u,
            PhaseKind::RampToZero { u_start } => {
                if self.dt <= 0.0 {
                    0.0
                } else {
                    u_start * (self.dt - s) / self.dt
                }
            }
        }
    }

    /// Slope of the control, `du/dt`.
    pub fn control_slope(&self) -> f64 {
        match self.kind {
            PhaseKind::Hold { .. } => 0.0,
            PhaseKind::RampToZero { u_start } if self.dt > 0.0 => -u_start / self.dt,
            PhaseKind::RampToZero { .. } => 0.0,
        }
    }

    /// State and energy at the end of the phase.
    pub fn propagate(&self, state: VehicleState) -> (VehicleState, f64) {
        match self.kind {
            PhaseKind::Hold { u } => propagate_hold(state, u, self.dt),
            PhaseKind::RampToZero { u_start } => propagate_ramp(state, u_start, self.dt),
        }
    }

    /// State at phase-local time `s ∈ [0, dt]`.
    pub fn state_at(&self, state: VehicleState, s: f64) -> VehicleState {
        match self.kind {
            PhaseKind::Hold { u } => propagate_hold(state, u, s).0,
            PhaseKind::RampToZero { u_start } => {
                if self.dt <= 0.0 {
                    return state;
                }
                let c = u_start / self.dt;
                VehicleState {
                    t: state.t + s,
                    x: state.x + state.v * s + c * (self.dt * s * s / 2.0 - s * s * s / 6.0),
                    v: state.v + c * (self.dt * s - s * s / 2.0),
                }
            }
        }
    }
}

/// Position, speed and control at one instant of a profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub v: f64,
    pub u: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Error)]
#[error("time {t} outside profile span [{start}, {end}]")]
pub struct OutOfSpan {
    pub t: f64,
    pub start: f64,
    pub end: f64,
}

/// Piecewise control history starting from a known state.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    start: VehicleState,
    phases: Vec<Phase>,
}

impl Profile {
    pub fn new(start: VehicleState, phases: Vec<Phase>) -> Self {
        Profile { start, phases }
    }

    pub fn start(&self) -> VehicleState {
        self.start
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn arrival_time(&self) -> f64 {
        self.start.t + self.phases.iter().map(|p| p.dt).sum::<f64>()
    }

    /// State at the start of each phase, followed by the final state.
    pub fn boundary_states(&self) -> Vec<VehicleState> {
        let mut out = Vec::with_capacity(self.phases.len() + 1);
        let mut state = self.start;
        out.push(state);
        for phase in &self.phases {
            state = phase.propagate(state).0;
            out.push(state);
        }
        out
    }

    pub fn end_state(&self) -> VehicleState {
        self.phases
            .iter()
            .fold(self.start, |state, phase| phase.propagate(state).0)
    }

    /// `∫u² dt` over the whole profile.
    pub fn energy(&self) -> f64 {
        let mut state = self.start;
        let mut energy = 0.0;
        for phase in &self.phases {
            let (next, e) = phase.propagate(state);
            state = next;
            energy += e;
        }
        energy
    }

    /// Closed-form state and control at absolute time `t`.
    ///
    /// At an interior phase boundary the control of the later phase is
    /// reported; at the arrival time the control of the last phase.
    pub fn sample(&self, t: f64) -> Result<Sample, OutOfSpan> {
        let end = self.arrival_time();
        let slack = 1e-9 * end.abs().max(1.0);
        if !(t >= self.start.t - slack && t <= end + slack) {
            return Err(OutOfSpan {
                t,
                start: self.start.t,
                end,
            });
        }
        let mut state = self.start;
        let last_live = self.phases.iter().rposition(|p| p.dt > 0.0);
        for (i, phase) in self.phases.iter().enumerate() {
            if phase.dt <= 0.0 {
                continue;
            }
            let local = t - state.t;
            if local < phase.dt || Some(i) == last_live {
                let s = local.clamp(0.0, phase.dt);
                let at = phase.state_at(state, s);
                return Ok(Sample {
                    t,
                    x: at.x,
                    v: at.v,
                    u: phase.control_at(s),
                });
            }
            state = phase.propagate(state).0;
        }
        // Every phase is empty: the profile is a single instant.
        Ok(Sample {
            t,
            x: state.x,
            v: state.v,
            u: 0.0,
        })
    }

    /// Uniform samples every `step` seconds, always including the arrival.
    pub fn samples(&self, step: f64) -> Vec<Sample> {
        let end = self.arrival_time();
        let n = ((end - self.start.t) / step).floor() as usize;
        let mut out: Vec<Sample> = (0..=n)
            .map(|i| self.start.t + i as f64 * step)
            .filter(|&t| t < end)
            .map(|t| self.sample(t).expect("inside span"))
            .collect();
        out.push(self.sample(end).expect("inside span"));
        out
    }
}

//! Scenario description: vehicle limits, the traffic light schedule and the
//! initial state of the approach.

use std::fmt;

use thiserror::Error;

/// Speed and acceleration bounds of the vehicle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Limits {
    /// Minimum allowed speed (m/s), strictly positive.
    pub v_min: f64,
    /// Maximum allowed speed (m/s).
    pub v_max: f64,
    /// Maximum deceleration (m/s²), negative.
    pub u_min: f64,
    /// Maximum acceleration (m/s²), positive.
    pub u_max: f64,
}

impl Limits {
    pub const fn new(v_min: f64, v_max: f64, u_min: f64, u_max: f64) -> Self {
        Limits {
            v_min,
            v_max,
            u_min,
            u_max,
        }
    }

    /// Clamp a speed into `[v_min, v_max]`.
    pub fn clamp_speed(&self, v: f64) -> f64 {
        v.clamp(self.v_min, self.v_max)
    }
}

/// Fixed-time signal: green on `[offset + kT, offset + kT + D·T]`, red otherwise.
///
/// Both endpoints of a green window are green.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LightSchedule {
    /// Cycle length `T` (s).
    pub period: f64,
    /// Green fraction `D` of the cycle, in `(0, 1)`.
    pub duty: f64,
    /// Start of the green window with index 0 (s).
    pub offset: f64,
}

/// Answer of [`LightSchedule::red_window_bounds`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WindowQuery {
    Green,
    Red {
        /// End of the latest green window before the query time, if that
        /// window is not before the first window of the schedule.
        prev_green_end: Option<f64>,
        /// Start of the next green window.
        next_green_start: f64,
    },
}

impl LightSchedule {
    pub const fn new(period: f64, duty: f64, offset: f64) -> Self {
        LightSchedule {
            period,
            duty,
            offset,
        }
    }

    /// Length of a green window (s).
    pub fn green_time(&self) -> f64 {
        self.duty * self.period
    }

    // Absolute slack used at window edges so that instants computed as
    // `offset + k·T + D·T` test green despite rounding.
    fn edge_eps(&self, t: f64) -> f64 {
        1e-12 * self.period.max(t.abs()).max(self.offset.abs()).max(1.0)
    }

    /// Index of the cycle containing `t` and the start time of that cycle.
    fn cycle(&self, t: f64) -> (f64, f64) {
        let k = ((t - self.offset) / self.period).floor();
        (k, self.offset + k * self.period)
    }

    pub fn is_green(&self, t: f64) -> bool {
        let eps = self.edge_eps(t);
        let (_, start) = self.cycle(t);
        let into = t - start;
        into <= self.green_time() + eps || (start + self.period) - t <= eps
    }

    pub fn red_window_bounds(&self, t: f64) -> WindowQuery {
        if self.is_green(t) {
            return WindowQuery::Green;
        }
        let (k, start) = self.cycle(t);
        let prev_green_end = (k >= 0.0).then(|| start + self.green_time());
        WindowQuery::Red {
            prev_green_end,
            next_green_start: start + self.period,
        }
    }

    /// Start of the first green window beginning at or after `t`.
    pub fn next_green_start(&self, t: f64) -> f64 {
        let (_, start) = self.cycle(t);
        if t - start <= self.edge_eps(t) {
            start
        } else {
            start + self.period
        }
    }

    /// End of the green window containing `t`; `None` when `t` is red.
    pub fn green_end_after(&self, t: f64) -> Option<f64> {
        if !self.is_green(t) {
            return None;
        }
        let (_, start) = self.cycle(t);
        let eps = self.edge_eps(t);
        if (start + self.period) - t <= eps {
            Some(start + self.period + self.green_time())
        } else {
            Some(start + self.green_time())
        }
    }
}

/// Instantaneous vehicle state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VehicleState {
    pub t: f64,
    pub x: f64,
    pub v: f64,
}

impl VehicleState {
    pub const fn new(t: f64, x: f64, v: f64) -> Self {
        VehicleState { t, x, v }
    }
}

/// One approach problem: start at `x = 0` with speed `v0` at time `t0` and
/// cross the stop line at `x = l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scenario {
    pub t0: f64,
    pub v0: f64,
    pub l: f64,
    pub limits: Limits,
    /// Trade-off between travel time (`rho = 1`) and energy (`rho = 0`).
    pub rho: f64,
    pub light: LightSchedule,
}

/// A single broken invariant found by [`Scenario::validate`].
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NotFinite(&'static str),
    NonPositiveMinSpeed,
    SpeedBoundsOrder,
    DecelerationNotNegative,
    AccelerationNotPositive,
    NonPositiveDistance,
    SpeedBelowMin,
    SpeedAboveMax,
    RhoOutOfRange,
    NonPositivePeriod,
    DutyOutOfRange,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotFinite(key) => write!(f, "{key} is not a finite number"),
            Violation::NonPositiveMinSpeed => f.write_str("v_min must be positive"),
            Violation::SpeedBoundsOrder => f.write_str("v_min must be below v_max"),
            Violation::DecelerationNotNegative => f.write_str("u_min must be negative"),
            Violation::AccelerationNotPositive => f.write_str("u_max must be positive"),
            Violation::NonPositiveDistance => f.write_str("l must be positive"),
            Violation::SpeedBelowMin => f.write_str("v0 is below v_min"),
            Violation::SpeedAboveMax => f.write_str("v0 exceeds v_max"),
            Violation::RhoOutOfRange => f.write_str("rho must be in [0,1]"),
            Violation::NonPositivePeriod => f.write_str("period must be positive"),
            Violation::DutyOutOfRange => f.write_str("duty must be in (0,1)"),
        }
    }
}

/// Every invariant violated by a scenario.
#[derive(Clone, Debug, PartialEq, Error)]
#[error("invalid scenario: {}", join(.violations))]
pub struct ScenarioError {
    pub violations: Vec<Violation>,
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Scenario {
    /// Returns the scenario unchanged if every invariant holds.
    pub fn validate(self) -> Result<Scenario, ScenarioError> {
        let mut violations = Vec::new();
        let numbers = [
            ("t0", self.t0),
            ("v0", self.v0),
            ("l", self.l),
            ("v_min", self.limits.v_min),
            ("v_max", self.limits.v_max),
            ("u_min", self.limits.u_min),
            ("u_max", self.limits.u_max),
            ("rho", self.rho),
            ("light.period", self.light.period),
            ("light.duty", self.light.duty),
            ("light.offset", self.light.offset),
        ];
        for (key, value) in numbers {
            if !value.is_finite() {
                violations.push(Violation::NotFinite(key));
            }
        }
        if !violations.is_empty() {
            return Err(ScenarioError { violations });
        }

        let lim = &self.limits;
        if lim.v_min <= 0.0 {
            violations.push(Violation::NonPositiveMinSpeed);
        }
        if lim.v_min >= lim.v_max {
            violations.push(Violation::SpeedBoundsOrder);
        }
        if lim.u_min >= 0.0 {
            violations.push(Violation::DecelerationNotNegative);
        }
        if lim.u_max <= 0.0 {
            violations.push(Violation::AccelerationNotPositive);
        }
        if self.l <= 0.0 {
            violations.push(Violation::NonPositiveDistance);
        }
        if self.v0 < lim.v_min {
            violations.push(Violation::SpeedBelowMin);
        }
        if self.v0 > lim.v_max {
            violations.push(Violation::SpeedAboveMax);
        }
        if !(0.0..=1.0).contains(&self.rho) {
            violations.push(Violation::RhoOutOfRange);
        }
        if self.light.period <= 0.0 {
            violations.push(Violation::NonPositivePeriod);
        }
        if !(self.light.duty > 0.0 && self.light.duty < 1.0) {
            violations.push(Violation::DutyOutOfRange);
        }

        if violations.is_empty() {
            Ok(self)
        } else {
            Err(ScenarioError { violations })
        }
    }

    pub fn start_state(&self) -> VehicleState {
        VehicleState::new(self.t0, 0.0, self.v0)
    }

    /// The remaining problem seen from `state`, an intermediate point of an
    /// approach that started from this scenario.
    ///
    /// The speed is clamped into the limits to absorb rounding.
    pub fn advanced_to(&self, state: VehicleState) -> Scenario {
        Scenario {
            t0: state.t,
            v0: self.limits.clamp_speed(state.v),
            l: self.l - state.x,
            ..*self
        }
    }

    pub fn with_rho(&self, rho: f64) -> Scenario {
        Scenario { rho, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::new(2.78, 22.22, -2.9, 2.5)
    }

    fn scenario() -> Scenario {
        Scenario {
            t0: 0.0,
            v0: 10.0,
            l: 200.0,
            limits: limits(),
            rho: 0.9549,
            light: LightSchedule::new(60.0, 2.0 / 3.0, 0.0),
        }
    }

    #[test]
    fn green_at_window_start() {
        let light = LightSchedule::new(60.0, 2.0 / 3.0, 0.0);
        assert!(light.is_green(0.0));
    }

    #[test]
    fn window_end_is_inclusive() {
        let light = LightSchedule::new(60.0, 2.0 / 3.0, 0.0);
        assert!(light.is_green(40.0));
        assert!(!light.is_green(40.0 + 1e-9));
        assert!(!light.is_green(60.0 - 1e-9));
        assert!(light.is_green(60.0));
    }

    #[test]
    fn offset_shifts_windows() {
        let light = LightSchedule::new(60.0, 1.0 / 3.0, 40.0);
        assert!(!light.is_green(12.1860));
        assert!(light.is_green(40.0));
        assert!(light.is_green(60.0));
        assert!(!light.is_green(60.5));
    }

    #[test]
    fn negative_phase_is_normalized() {
        let light = LightSchedule::new(60.0, 1.0 / 3.0, 40.0);
        // (−5 − 40) mod 60 = 15, inside the 20 s green window.
        assert!(light.is_green(-5.0));
        assert!(!light.is_green(-30.0));
    }

    #[test]
    fn red_window_bounds_examples() {
        let light = LightSchedule::new(60.0, 2.0 / 3.0, 0.0);
        match light.red_window_bounds(50.0) {
            WindowQuery::Red {
                prev_green_end,
                next_green_start,
            } => {
                assert!((prev_green_end.unwrap() - 40.0).abs() < 1e-9);
                assert!((next_green_start - 60.0).abs() < 1e-9);
            }
            WindowQuery::Green => panic!("t=50 is red"),
        }
        assert_eq!(light.red_window_bounds(30.0), WindowQuery::Green);

        let delayed = LightSchedule::new(60.0, 1.0 / 3.0, 40.0);
        match delayed.red_window_bounds(12.186) {
            WindowQuery::Red {
                prev_green_end,
                next_green_start,
            } => {
                assert_eq!(prev_green_end, None);
                assert!((next_green_start - 40.0).abs() < 1e-9);
            }
            WindowQuery::Green => panic!("t=12.186 is red"),
        }
    }

    #[test]
    fn green_end_after_reports_window_end() {
        let light = LightSchedule::new(60.0, 2.0 / 3.0, 0.0);
        assert!((light.green_end_after(10.0).unwrap() - 40.0).abs() < 1e-9);
        assert!((light.green_end_after(60.0).unwrap() - 100.0).abs() < 1e-9);
        assert_eq!(light.green_end_after(50.0), None);
        assert!((light.next_green_start(50.0) - 60.0).abs() < 1e-9);
        assert!((light.next_green_start(60.0) - 60.0).abs() < 1e-9);
    }

    #[test]
    fn reference_scenario_validates() {
        assert!(scenario().validate().is_ok());
    }

    #[test]
    fn speed_above_max_is_reported() {
        let err = Scenario {
            v0: 25.0,
            ..scenario()
        }
        .validate()
        .unwrap_err();
        assert_eq!(err.violations, vec![Violation::SpeedAboveMax]);
        assert!(err.to_string().contains("v0 exceeds v_max"));
    }

    #[test]
    fn duty_must_be_open_interval() {
        let mut s = scenario();
        s.light.duty = 1.0;
        let err = s.validate().unwrap_err();
        assert!(err.to_string().contains("duty must be in (0,1)"));
        s.light.duty = 0.99999;
        assert!(s.validate().is_ok());
    }

    #[test]
    fn all_violations_are_collected() {
        let s = Scenario {
            v0: 1.0,
            l: -3.0,
            rho: 1.5,
            ..scenario()
        };
        let err = s.validate().unwrap_err();
        assert_eq!(
            err.violations,
            vec![
                Violation::NonPositiveDistance,
                Violation::SpeedBelowMin,
                Violation::RhoOutOfRange
            ]
        );
    }

    #[test]
    fn non_finite_fields_are_rejected() {
        let s = Scenario {
            v0: f64::NAN,
            ..scenario()
        };
        let err = s.validate().unwrap_err();
        assert_eq!(err.violations, vec![Violation::NotFinite("v0")]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn is_green_is_periodic(
                period in 10.0f64..120.0,
                duty in 0.05f64..0.95,
                offset in -100.0f64..100.0,
                t in -500.0f64..500.0,
            ) {
                let light = LightSchedule::new(period, duty, offset);
                // Skip instants within rounding distance of a window edge.
                let phase = (t - offset).rem_euclid(period);
                let edge = duty * period;
                prop_assume!((phase - edge).abs() > 1e-6 && phase > 1e-6 && period - phase > 1e-6);
                prop_assert_eq!(light.is_green(t), light.is_green(t + period));
            }

            #[test]
            fn red_bounds_bracket_the_red_interval(
                period in 10.0f64..120.0,
                duty in 0.05f64..0.95,
                offset in -100.0f64..100.0,
                t in 0.0f64..500.0,
            ) {
                let light = LightSchedule::new(period, duty, offset);
                if let WindowQuery::Red { prev_green_end, next_green_start } = light.red_window_bounds(t) {
                    prop_assert!(next_green_start > t);
                    prop_assert!(light.is_green(next_green_start));
                    if let Some(prev) = prev_green_end {
                        prop_assert!(prev < t);
                        prop_assert!(light.is_green(prev));
                    }
                    let lo = prev_green_end.unwrap_or(next_green_start - period * (1.0 - duty));
                    for i in 1..20 {
                        let s = lo + (next_green_start - lo) * i as f64 / 20.0;
                        prop_assert!(!light.is_green(s));
                    }
                }
            }
        }
    }
}

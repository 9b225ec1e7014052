//! Brute-force dynamic-programming check of the closed forms.
//!
//! Time is cut into equal steps with a constant control on each. The only
//! state is the speed, on a uniform grid with linear interpolation of the
//! value function; the distance constraint enters through a multiplier `mu`
//! (stage cost `u²·h − mu·Δx`) that is tuned until a forward rollout ends on
//! the stop line. The rollout uses the exact kinematics with the speed kept
//! continuous, so its energy is that of a genuinely feasible trajectory and
//! bounds the true optimum from above. The small remaining miss at the line
//! is corrected to first order with `mu`, the marginal energy per metre.
//!
//! Nothing here calls the analytical solvers except [`crosscheck`], which
//! compares the two.

use std::collections::HashMap;

use thiserror::Error;

use crate::kinematics::Sample;
use crate::model::Scenario;
use crate::planner::{plan, PlanError};
use crate::weights::Weights;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// Time step (s).
    pub dt: f64,
    /// Speed grid spacing (m/s).
    pub dv: f64,
    /// Tolerance on the final position (m).
    pub dx: f64,
    /// Number of uniform control levels on `[u_min, u_max]`.
    pub control_levels: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            dt: 0.05,
            dv: 0.02,
            dx: 0.25,
            control_levels: 59,
        }
    }
}

impl GridSpec {
    pub fn new(dt: f64, dv: f64, dx: f64, control_levels: usize) -> Result<Self, OracleError> {
        let g = GridSpec {
            dt,
            dv,
            dx,
            control_levels,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<(), OracleError> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(self.dt) && positive(self.dv) && positive(self.dx)) || self.control_levels < 3 {
            return Err(OracleError::InvalidGrid(*self));
        }
        Ok(())
    }

    /// Both resolutions halved.
    pub fn refined(&self) -> Self {
        GridSpec {
            dt: self.dt / 2.0,
            dv: self.dv / 2.0,
            ..*self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum OracleError {
    #[error("grid needs positive finite steps and at least 3 control levels: {0:?}")]
    InvalidGrid(GridSpec),
    #[error("arrival time {t_p} is not after the start time {t0}")]
    NotAfterStart { t0: f64, t_p: f64 },
    #[error("distance {l} m is outside the range [{min}, {max}] m coverable on the grid")]
    InfeasibleTerminal { l: f64, min: f64, max: f64 },
    #[error("multiplier search stalled {residual} m from the line")]
    NoConvergence { residual: f64 },
    #[error(transparent)]
    Plan(#[from] PlanError),
}

/// Result of the fixed-arrival DP.
#[derive(Clone, Debug, PartialEq)]
pub struct DpFixed {
    /// `Σ u²·h` along the rollout.
    pub energy: f64,
    /// Distance covered by the rollout.
    pub distance: f64,
    pub mu: f64,
    pub steps: usize,
    /// Rollout states at each step boundary, with the control applied next.
    pub trajectory: Vec<Sample>,
}

impl DpFixed {
    /// Energy adjusted to first order for the stop-line miss, using `mu` as
    /// the marginal energy per metre.
    pub fn energy_at(&self, l: f64) -> f64 {
        self.energy + self.mu * (l - self.distance)
    }
}

/// Result of the free-arrival DP.
#[derive(Clone, Debug, PartialEq)]
pub struct DpFree {
    pub weighted_cost: f64,
    pub arrival: f64,
    pub fixed: DpFixed,
}

struct Grid<'a> {
    s: &'a Scenario,
    h: f64,
    steps: usize,
    dv: f64,
    nodes: usize,
    levels: Vec<f64>,
}

impl<'a> Grid<'a> {
    fn new(s: &'a Scenario, steps: usize, h: f64, g: &GridSpec) -> Self {
        let lim = &s.limits;
        let span = lim.v_max - lim.v_min;
        let nodes = ((span / g.dv).ceil() as usize).max(1) + 1;
        let du = (lim.u_max - lim.u_min) / (g.control_levels - 1) as f64;
        let mut levels: Vec<f64> = (0..g.control_levels).map(|k| lim.u_min + du * k as f64).collect();
        levels.push(0.0);
        Grid {
            s,
            h,
            steps,
            dv: span / (nodes - 1) as f64,
            nodes,
            levels,
        }
    }

    fn speed(&self, j: usize) -> f64 {
        self.s.limits.v_min + self.dv * j as f64
    }

    // Linear interpolation of `value` at speed `v`.
    fn interp(&self, value: &[f64], v: f64) -> f64 {
        let pos = ((v - self.s.limits.v_min) / self.dv).clamp(0.0, (self.nodes - 1) as f64);
        let i = (pos.floor() as usize).min(self.nodes - 2);
        let frac = pos - i as f64;
        value[i] + (value[i + 1] - value[i]) * frac
    }

    /// Best control at speed `v` given the value at the next step, and the
    /// cost-to-go excluding the `−mu·v·h` term, which does not depend on `u`.
    ///
    /// The per-segment minimisation already covers every control in reach, so
    /// the uniform levels can only tie with it; they are tried in the rollout
    /// alone.
    fn best(&self, v: f64, next: &[f64], mu: f64, with_levels: bool) -> (f64, f64) {
        let lim = &self.s.limits;
        let h = self.h;
        let lo = lim.u_min.max((lim.v_min - v) / h).min(0.0);
        let hi = lim.u_max.min((lim.v_max - v) / h).max(0.0);
        let stage = |u: f64| u * u * h - 0.5 * mu * u * h * h;
        let mut best_u = 0.0;
        let mut best_c = stage(0.0) + self.interp(next, v);
        let mut consider = |u: f64, c: f64| {
            if c < best_c {
                best_c = c;
                best_u = u;
            }
        };

        // Piecewise quadratic in u: minimise exactly on each segment in reach.
        let vmin = lim.v_min;
        let ilo = (((v + lo * h - vmin) / self.dv).floor().max(0.0) as usize).min(self.nodes - 2);
        let ihi = (((v + hi * h - vmin) / self.dv).ceil().max(1.0) as usize).min(self.nodes - 1);
        for i in ilo..ihi {
            let vi = self.speed(i);
            let slope = (next[i + 1] - next[i]) / self.dv;
            let ua = lo.max((vi - v) / h);
            let ub = hi.min((vi + self.dv - v) / h);
            if ua > ub {
                continue;
            }
            let u = (0.25 * mu * h - 0.5 * slope).clamp(ua, ub);
            consider(u, stage(u) + next[i] + slope * (v + u * h - vi));
        }
        for &u in self.levels.iter().filter(|_| with_levels) {
            if u >= lo && u <= hi {
                consider(u, stage(u) + self.interp(next, v + u * h));
            }
        }
        (best_u, best_c)
    }

    /// Backward pass: the value function at every step.
    fn values(&self, mu: f64) -> Vec<Vec<f64>> {
        let mut all = Vec::with_capacity(self.steps + 1);
        let mut next = vec![0.0; self.nodes];
        for _ in 0..self.steps {
            let cur: Vec<f64> = (0..self.nodes)
                .map(|j| {
                    let v = self.speed(j);
                    self.best(v, &next, mu, false).1 - mu * v * self.h
                })
                .collect();
            all.push(std::mem::replace(&mut next, cur));
        }
        all.push(next);
        all.reverse();
        all
    }

    fn rollout(&self, mu: f64) -> DpFixed {
        let values = self.values(mu);
        let h = self.h;
        let lim = &self.s.limits;
        let (mut x, mut v, mut energy) = (0.0, self.s.v0, 0.0);
        let mut trajectory = Vec::with_capacity(self.steps + 1);
        for n in 0..self.steps {
            let (u, _) = self.best(v, &values[n + 1], mu, true);
            trajectory.push(Sample {
                t: self.s.t0 + n as f64 * h,
                x,
                v,
                u,
            });
            x += v * h + 0.5 * u * h * h;
            v = (v + u * h).clamp(lim.v_min, lim.v_max);
            energy += u * u * h;
        }
        trajectory.push(Sample {
            t: self.s.t0 + self.steps as f64 * h,
            x,
            v,
            u: 0.0,
        });
        DpFixed {
            energy,
            distance: x,
            mu,
            steps: self.steps,
            trajectory,
        }
    }

    /// Distance covered by driving flat out (`sign = 1`) or braking as hard as
    /// allowed (`sign = −1`) for the whole horizon.
    fn extreme_distance(&self, sign: f64) -> f64 {
        let lim = &self.s.limits;
        let (mut x, mut v) = (0.0, self.s.v0);
        for _ in 0..self.steps {
            let u = if sign > 0.0 {
                lim.u_max.min((lim.v_max - v) / self.h)
            } else {
                lim.u_min.max((lim.v_min - v) / self.h)
            };
            x += v * self.h + 0.5 * u * self.h * self.h;
            v += u * self.h;
        }
        x
    }

    /// Tune `mu` so the rollout ends on the line.
    fn solve(&self, guess: Option<f64>, dx: f64) -> Result<DpFixed, OracleError> {
        let l = self.s.l;
        let horizon = self.h * self.steps as f64;
        let (min, max) = (self.extreme_distance(-1.0), self.extreme_distance(1.0));
        if l < min - dx || l > max + dx {
            return Err(OracleError::InfeasibleTerminal { l, min, max });
        }
        let tol = dx.min(1e-3);
        let coast = self.s.v0 * horizon;
        if (l - coast).abs() <= tol {
            return Ok(self.rollout(0.0));
        }

        // The rollout distance increases with mu; bracket the root first.
        let scale = 6.0 * (l - coast) / horizon.powi(3);
        let mut a = guess.unwrap_or(scale);
        let mut fa_run = self.rollout(a);
        if (fa_run.distance - l).abs() <= tol {
            return Ok(fa_run);
        }
        let up = fa_run.distance < l;
        let mut step = if guess.is_some() { 0.05 * a.abs().max(scale.abs()) } else { a.abs() };
        let mut b_run;
        loop {
            let b = if up { a + step } else { a - step };
            b_run = self.rollout(b);
            if (b_run.distance - l).abs() <= tol {
                return Ok(b_run);
            }
            if (b_run.distance < l) != up {
                break;
            }
            a = b;
            fa_run = b_run;
            step *= 2.0;
            if step > 1e12 {
                return self.accept(fa_run, dx);
            }
        }

        // Illinois regula falsi between the bracket ends.
        let (mut lo, mut hi) = if up { (fa_run, b_run) } else { (b_run, fa_run) };
        let (mut flo, mut fhi) = (lo.distance - l, hi.distance - l);
        let mut side = 0i8;
        for _ in 0..100 {
            let mu = (lo.mu * fhi - hi.mu * flo) / (fhi - flo);
            let mu = if mu.is_finite() && mu > lo.mu && mu < hi.mu { mu } else { 0.5 * (lo.mu + hi.mu) };
            let run = self.rollout(mu);
            let f = run.distance - l;
            if f.abs() <= tol || hi.mu - lo.mu <= 1e-14 * hi.mu.abs().max(1e-12) {
                return self.accept(run, dx);
            }
            if f < 0.0 {
                lo = run;
                flo = f;
                if side == -1 {
                    fhi *= 0.5;
                }
                side = -1;
            } else {
                hi = run;
                fhi = f;
                if side == 1 {
                    flo *= 0.5;
                }
                side = 1;
            }
        }
        let best = if flo.abs() < fhi.abs() { lo } else { hi };
        self.accept(best, dx)
    }

    fn accept(&self, run: DpFixed, dx: f64) -> Result<DpFixed, OracleError> {
        let residual = run.distance - self.s.l;
        if residual.abs() <= dx {
            Ok(run)
        } else {
            Err(OracleError::NoConvergence { residual })
        }
    }
}

fn steps_for(horizon: f64, dt: f64) -> usize {
    ((horizon / dt).round() as usize).max(1)
}

/// Minimum energy to reach the line exactly at `t_p`.
pub fn dp_solve_fixed(s: &Scenario, t_p: f64, g: &GridSpec) -> Result<DpFixed, OracleError> {
    g.check()?;
    let horizon = t_p - s.t0;
    if !(horizon > 0.0) {
        return Err(OracleError::NotAfterStart { t0: s.t0, t_p });
    }
    // A coarse pass finds the multiplier cheaply; the fine pass refines it.
    let coarse = GridSpec {
        dt: g.dt * 2.0,
        dv: g.dv * 4.0,
        ..*g
    };
    let steps = steps_for(horizon, coarse.dt);
    let guess = Grid::new(s, steps, horizon / steps as f64, &coarse)
        .solve(None, g.dx)
        .ok()
        .map(|r| r.mu);
    let steps = steps_for(horizon, g.dt);
    Grid::new(s, steps, horizon / steps as f64, g).solve(guess, g.dx)
}

/// Minimum weighted cost over arrival times on the step grid up to
/// `t0 + horizon`.
pub fn dp_solve_free(s: &Scenario, w: &Weights, g: &GridSpec, horizon: f64) -> Result<DpFree, OracleError> {
    g.check()?;
    // Locate the optimum on a coarse grid, then search a narrow window of
    // arrival times on the requested one.
    let coarse = GridSpec {
        dt: g.dt * 2.0,
        dv: g.dv * 4.0,
        ..*g
    };
    let (first, last) = step_range(s, &coarse, horizon)?;
    let around = FreeSearch::new(s, w, &coarse).minimise(first, last).map(|(k, _)| k as f64 * coarse.dt);
    let (first, last) = step_range(s, g, horizon)?;
    let (first, last) = match around {
        Some(t) => {
            let window = steps_for(1.0, g.dt).max(4);
            let centre = steps_for(t, g.dt);
            (centre.saturating_sub(window).max(first), (centre + window).min(last))
        }
        None => (first, last),
    };
    let mut search = FreeSearch::new(s, w, g);
    let (k, cost) = search
        .minimise(first, last)
        .ok_or(OracleError::InfeasibleTerminal { l: s.l, min: 0.0, max: 0.0 })?;
    let fixed = search.runs.remove(&k).and_then(Result::ok).expect("minimiser was evaluated");
    Ok(DpFree {
        weighted_cost: cost,
        arrival: s.t0 + k as f64 * g.dt,
        fixed,
    })
}

/// Step counts with the line within reach: at least flat out, at most
/// braking all the way.
fn step_range(s: &Scenario, g: &GridSpec, horizon: f64) -> Result<(usize, usize), OracleError> {
    let h = g.dt;
    let max_steps = steps_for(horizon, h);
    let probe = |k: usize, sign: f64| Grid::new(s, k, h, g).extreme_distance(sign);
    let max = probe(max_steps, 1.0);
    if max < s.l - g.dx {
        return Err(OracleError::InfeasibleTerminal { l: s.l, min: 0.0, max });
    }
    let (mut lo, mut hi) = (1usize, max_steps);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if probe(mid, 1.0) >= s.l - g.dx {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let first = lo;
    let mut hi = max_steps;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if probe(mid, -1.0) <= s.l + g.dx {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok((first, lo))
}

struct FreeSearch<'a> {
    s: &'a Scenario,
    w: &'a Weights,
    g: &'a GridSpec,
    runs: HashMap<usize, Result<DpFixed, OracleError>>,
    last_mu: Option<f64>,
}

impl<'a> FreeSearch<'a> {
    fn new(s: &'a Scenario, w: &'a Weights, g: &'a GridSpec) -> Self {
        FreeSearch {
            s,
            w,
            g,
            runs: HashMap::new(),
            last_mu: None,
        }
    }

    fn cost(&mut self, k: usize) -> f64 {
        let h = self.g.dt;
        if !self.runs.contains_key(&k) {
            let run = Grid::new(self.s, k, h, self.g).solve(self.last_mu, self.g.dx);
            if let Ok(r) = &run {
                self.last_mu = Some(r.mu);
            }
            self.runs.insert(k, run);
        }
        match &self.runs[&k] {
            Ok(run) => self.w.rho_t * k as f64 * h + self.w.rho_u * run.energy,
            Err(_) => f64::INFINITY,
        }
    }

    /// Golden-section search over `[a, b]`, finished by a scan.
    fn minimise(&mut self, mut a: usize, mut b: usize) -> Option<(usize, f64)> {
        const FRAC: f64 = 0.618_033_988_749_894_9;
        let inner = |a: usize, b: usize| ((b - a) as f64 * FRAC).round() as usize;
        if b > a + 3 {
            let mut c = b - inner(a, b);
            let mut d = (a + inner(a, b)).max(c + 1);
            let (mut fc, mut fd) = (self.cost(c), self.cost(d));
            while b > a + 3 {
                if fc <= fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = (b - inner(a, b)).min(d - 1).max(a);
                    fc = self.cost(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = (a + inner(a, b)).max(c + 1).min(b);
                    fd = self.cost(d);
                }
            }
        }
        (a..=b)
            .map(|k| (k, self.cost(k)))
            .filter(|(_, c)| c.is_finite())
            .min_by(|x, y| x.1.total_cmp(&y.1))
    }
}

/// Side-by-side comparison of the analytical plan and the DP at the same
/// arrival time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrosscheckReport {
    pub t_p: f64,
    pub analytic_energy: f64,
    /// DP energy corrected to the exact road length.
    pub dp_energy: f64,
    /// DP energy of the rollout as driven.
    pub dp_raw_energy: f64,
    pub analytic_cost: f64,
    pub dp_cost: f64,
    /// `dp_cost − analytic_cost`.
    pub abs_gap: f64,
    pub rel_gap: f64,
    /// DP final position minus the road length.
    pub distance_error: f64,
    /// Allowance for discretisation in the one-sided energy bound.
    pub slack: f64,
    pub gap_ok: bool,
    pub energy_gap_ok: bool,
    pub bound_ok: bool,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.gap_ok && self.energy_gap_ok && self.bound_ok
    }
}

/// Constant of the energy slack `C·(dt + dv)`. Over the reference scenarios
/// and a seeded random batch the corrected DP energy never fell below the
/// analytical one by more than 1e-8 on the default grid.
pub const SLACK_CONSTANT: f64 = 0.01;
/// Largest accepted cost gap, relative.
pub const REL_GAP_TOL: f64 = 0.02;
/// Largest accepted cost gap, absolute.
pub const ABS_GAP_TOL: f64 = 0.05;
/// Largest accepted energy gap, absolute, for energies near zero.
pub const ABS_ENERGY_TOL: f64 = 0.01;

/// Judge an analytical `(t_p, energy)` against a DP run at the same `t_p`.
pub fn compare(w: &Weights, t0: f64, t_p: f64, analytic_energy: f64, dp: &DpFixed, l: f64, g: &GridSpec) -> CrosscheckReport {
    let dp_energy = dp.energy_at(l);
    let analytic_cost = w.rho_t * (t_p - t0) + w.rho_u * analytic_energy;
    let dp_cost = w.rho_t * (t_p - t0) + w.rho_u * dp_energy;
    let abs_gap = dp_cost - analytic_cost;
    let rel_gap = if analytic_cost != 0.0 { abs_gap / analytic_cost } else { 0.0 };
    let slack = SLACK_CONSTANT * (g.dt + g.dv);
    CrosscheckReport {
        t_p,
        analytic_energy,
        dp_energy,
        dp_raw_energy: dp.energy,
        analytic_cost,
        dp_cost,
        abs_gap,
        rel_gap,
        distance_error: dp.distance - l,
        slack,
        gap_ok: abs_gap.abs() <= ABS_GAP_TOL.max(REL_GAP_TOL * analytic_cost.abs()),
        energy_gap_ok: (dp_energy - analytic_energy).abs() <= ABS_ENERGY_TOL.max(REL_GAP_TOL * analytic_energy),
        bound_ok: dp_energy + slack >= analytic_energy,
    }
}

/// Plan analytically, rerun the chosen arrival time through the DP and
/// compare.
pub fn crosscheck(s: &Scenario, g: &GridSpec) -> Result<CrosscheckReport, OracleError> {
    let out = plan(s)?;
    let dp = dp_solve_fixed(s, out.chosen.t_p, g)?;
    Ok(compare(&out.weights, s.t0, out.chosen.t_p, out.chosen.energy, &dp, s.l, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{LightSchedule, Limits};
    use crate::weights::compute_weights;

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

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.05, 0.02, 0.25, 2).is_err());
        assert!(GridSpec::new(0.0, 0.02, 0.25, 5).is_err());
        assert!(GridSpec::new(0.05, 0.02, 0.25, 3).is_ok());
    }

    #[test]
    fn cruise_costs_nothing() {
        let s = scenario(10.0, 200.0);
        let run = dp_solve_fixed(&s, 20.0, &GridSpec::default()).unwrap();
        assert!(run.energy <= 1e-6);
        assert!((run.distance - 200.0).abs() <= 0.25);
    }

    #[test]
    fn unreachable_terminal_is_reported() {
        let s = scenario(2.78, 2203.0);
        assert!(matches!(
            dp_solve_fixed(&s, 10.0, &GridSpec::default()),
            Err(OracleError::InfeasibleTerminal { .. })
        ));
    }

    #[test]
    fn slow_down_energy() {
        let s = scenario(21.5791, 200.0);
        let run = dp_solve_fixed(&s, 20.0, &GridSpec::default()).unwrap();
        assert!((run.energy - 20.111).abs() <= 0.02 * 20.111, "{}", run.energy);
        assert!((run.distance - 200.0).abs() <= 0.25);
        let last = run.trajectory.last().unwrap();
        assert!((last.t - 20.0).abs() < 1e-9);
        for p in &run.trajectory {
            assert!(p.u >= -2.9 - 1e-12 && p.u <= 2.5 + 1e-12);
            assert!(p.v >= 2.78 - 1e-9 && p.v <= 22.22 + 1e-9);
        }
    }

    #[test]
    fn gentle_speed_up_energy() {
        let s = scenario(4.2634, 200.0);
        let run = dp_solve_fixed(&s, 40.0, &GridSpec::default()).unwrap();
        assert!((run.energy - 0.0407).abs() <= 0.01, "{}", run.energy);
    }

    #[test]
    fn free_arrival() {
        let s = scenario(4.2634, 200.0);
        let w = compute_weights(s.rho, &s.limits, s.l);
        let run = dp_solve_free(&s, &w, &GridSpec::default(), 60.0).unwrap();
        assert!((run.arrival - 12.1860).abs() <= 0.2, "{}", run.arrival);

        let s = scenario(18.6182, 200.0);
        let w = compute_weights(s.rho, &s.limits, s.l);
        let run = dp_solve_free(&s, &w, &GridSpec::default(), 40.0).unwrap();
        assert!((run.weighted_cost - 0.126255).abs() <= 0.02 * 0.126255, "{}", run.weighted_cost);
    }

    #[test]
    fn free_arrival_without_time_pressure_coasts() {
        let s = scenario(10.0, 100.0).with_rho(0.0);
        let w = compute_weights(0.0, &s.limits, s.l);
        let run = dp_solve_free(&s, &w, &GridSpec::default(), 30.0).unwrap();
        assert!(run.weighted_cost <= 1e-3, "{}", run.weighted_cost);
    }

    #[test]
    fn corrupted_energy_is_flagged() {
        let s = scenario(21.5791, 200.0);
        let g = GridSpec::default();
        let dp = dp_solve_fixed(&s, 20.0, &g).unwrap();
        let w = compute_weights(s.rho, &s.limits, s.l);
        let honest = compare(&w, 0.0, 20.0, 20.111, &dp, s.l, &g);
        assert!(honest.passed(), "{honest:?}");
        let corrupted = compare(&w, 0.0, 20.0, 20.111 * 1.1, &dp, s.l, &g);
        assert!(!corrupted.passed(), "{corrupted:?}");
    }
}

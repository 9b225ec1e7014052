//! Two-step approach planning: solve with a free arrival time, and if that
//! arrival falls in a red window, re-solve pinned to the nearest green
//! boundaries on either side and keep the cheaper one.

use std::fmt;

use thiserror::Error;

use crate::fixed_horizon::{solve_fixed, FixedError};
use crate::free_horizon::solve_free;
use crate::model::{Scenario, ScenarioError, WindowQuery};
use crate::solution::Solution;
use crate::weights::{compute_weights, Weights};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// The free optimum already arrives on green.
    FreeGreen,
    /// Arrive at the end of the green window before the free arrival.
    PrevGreenEnd,
    /// Arrive at the start of the green window after the free arrival.
    NextGreenStart,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::FreeGreen => "free-green",
            Branch::PrevGreenEnd => "prev-green-end",
            Branch::NextGreenStart => "next-green-start",
        })
    }
}

/// A pinned arrival time that was evaluated during repair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub branch: Branch,
    pub t_p: f64,
    /// Weighted cost, or the reason the arrival time is infeasible.
    pub cost: Result<f64, FixedError>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanOutcome {
    pub branch: Branch,
    pub chosen: Solution,
    /// Optimum without the light; a lower bound on `chosen`.
    pub free: Solution,
    pub weights: Weights,
    /// Empty when the free optimum is green.
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum PlanError {
    #[error(transparent)]
    InvalidScenario(#[from] ScenarioError),
    #[error("no green arrival is feasible: {candidates:?}")]
    NoFeasiblePlan { candidates: Vec<Candidate> },
}

/// `rho_t·(t_p − t0) + rho_u·energy`.
pub fn total_cost(w: &Weights, t0: f64, t_p: f64, energy: f64) -> f64 {
    w.rho_t * (t_p - t0) + w.rho_u * energy
}

/// Plan an approach with the weights derived from the scenario.
pub fn plan(s: &Scenario) -> Result<PlanOutcome, PlanError> {
    let s = s.validate()?;
    plan_with_weights(&s, compute_weights(s.rho, &s.limits, s.l))
}

/// Plan with explicit weights, e.g. to replan mid-approach with the weights
/// chosen at the start.
pub fn plan_with_weights(s: &Scenario, weights: Weights) -> Result<PlanOutcome, PlanError> {
    let s = s.validate()?;
    let free = solve_free(&s, &weights);
    let (prev, next) = match s.light.red_window_bounds(free.t_p) {
        WindowQuery::Green => {
            return Ok(PlanOutcome {
                branch: Branch::FreeGreen,
                chosen: free.clone(),
                free,
                weights,
                candidates: Vec::new(),
            })
        }
        WindowQuery::Red {
            prev_green_end,
            next_green_start,
        } => (prev_green_end, next_green_start),
    };

    let mut candidates = Vec::new();
    let mut best: Option<(Branch, Solution)> = None;
    let pinned = prev
        .filter(|&t| t > s.t0)
        .map(|t| (Branch::PrevGreenEnd, t))
        .into_iter()
        .chain([(Branch::NextGreenStart, next)]);
    for (branch, t_p) in pinned {
        let result = solve_fixed(&s, &weights, t_p);
        candidates.push(Candidate {
            branch,
            t_p,
            cost: result.as_ref().map(|sol| sol.weighted_cost).map_err(|e| *e),
        });
        if let Ok(sol) = result {
            // Candidates arrive in time order, so a tie keeps the earlier one.
            if best.as_ref().is_none_or(|(_, b)| sol.weighted_cost < b.weighted_cost) {
                best = Some((branch, sol));
            }
        }
    }

    match best {
        Some((branch, chosen)) => Ok(PlanOutcome {
            branch,
            chosen,
            free,
            weights,
            candidates,
        }),
        None => Err(PlanError::NoFeasiblePlan { candidates }),
    }
}

//! Time and energy optimal approach of a single vehicle to a signalised
//! intersection.
//!
//! [`planner::plan`] is the entry point. It solves the free-arrival problem in
//! closed form and, when that arrival falls in a red window, re-solves with the
//! arrival pinned to a neighbouring green boundary.

pub mod baseline;
pub mod fixed_horizon;
pub mod free_horizon;
pub mod kinematics;
pub mod model;
pub mod oracle;
pub mod planner;
pub mod solution;
pub mod weights;

pub use baseline::{improvement, simulate_human, HumanRun};
pub use fixed_horizon::{latest_arrival, reachability_h, solve_fixed, FixedCase, FixedCaseId, FixedError};
pub use free_horizon::{classify_free, solve_free, FreeCase, FreeColumn};
pub use kinematics::{Phase, PhaseKind, Profile, Sample};
pub use model::{LightSchedule, Limits, Scenario, ScenarioError, VehicleState, Violation, WindowQuery};
pub use planner::{plan, plan_with_weights, total_cost, Branch, Candidate, PlanError, PlanOutcome};
pub use solution::{CaseTag, Solution};
pub use weights::{compute_weights, Weights};

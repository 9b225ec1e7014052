use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use ecoand::oracle::{crosscheck, GridSpec, OracleError};
use ecoand::{improvement, plan, simulate_human, PlanError, Sample, Scenario};
use thiserror::Error;

use crate::scenario_file::{parse_scenario, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Plan(PlanError),
    #[error(transparent)]
    Oracle(OracleError),
    #[error("oracle gap check failed")]
    GapViolation,
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Plan(PlanError::NoFeasiblePlan { .. }) | CliError::Oracle(OracleError::Plan(PlanError::NoFeasiblePlan { .. })) => 2,
            CliError::GapViolation => 3,
            _ => 1,
        }
    }
}

impl From<PlanError> for CliError {
    fn from(e: PlanError) -> Self {
        CliError::Plan(e)
    }
}

pub fn load(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    parse_scenario(&text).map_err(|source| CliError::Parse { path: path.to_owned(), source })
}

/// `x` with 9 significant digits in positional notation.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = (8 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_trajectory(out: &mut dyn Write, samples: &[Sample]) -> io::Result<()> {
    writeln!(out, "t,x,v,u")?;
    for s in samples {
        writeln!(out, "{},{},{},{}", sig9(s.t), sig9(s.x), sig9(s.v), sig9(s.u))?;
    }
    Ok(())
}

pub fn cmd_plan(out: &mut dyn Write, s: &Scenario, trajectory: Option<(&Path, f64)>) -> Result<(), CliError> {
    let outcome = plan(s)?;
    let chosen = &outcome.chosen;
    writeln!(out, "branch    {}", outcome.branch)?;
    writeln!(out, "case      {}", chosen.case)?;
    writeln!(out, "t_p       {}", sig9(chosen.t_p))?;
    writeln!(out, "v(t_p)    {}", sig9(chosen.v_tp))?;
    writeln!(out, "energy    {}", sig9(chosen.energy))?;
    writeln!(out, "cost      {}", sig9(chosen.weighted_cost))?;
    writeln!(
        out,
        "free      t_p {} cost {} ({})",
        sig9(outcome.free.t_p),
        sig9(outcome.free.weighted_cost),
        if s.light.is_green(outcome.free.t_p) { "green" } else { "red" }
    )?;
    writeln!(out, "phases")?;
    for p in chosen.profile.phases() {
        writeln!(out, "  {:?} for {} s", p.kind, sig9(p.dt))?;
    }
    if !outcome.candidates.is_empty() {
        writeln!(out, "candidates")?;
        for c in &outcome.candidates {
            let cost = match &c.cost {
                Ok(v) => sig9(*v),
                Err(e) => format!("infeasible: {e}"),
            };
            writeln!(out, "  {:<17} t_p {:<12} {cost}", c.branch.to_string(), sig9(c.t_p))?;
        }
    }
    if let Some((path, step)) = trajectory {
        if !(step > 0.0) {
            return Err(CliError::Usage(format!("--step must be positive, got {step}")));
        }
        let mut file = fs::File::create(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        write_trajectory(&mut file, &chosen.profile.samples(step))
            .map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    }
    Ok(())
}

pub fn cmd_sweep(out: &mut dyn Write, s: &Scenario, rho_min: f64, rho_max: f64, steps: usize) -> Result<(), CliError> {
    if !(0.0 <= rho_min && rho_min < rho_max && rho_max <= 1.0) {
        return Err(CliError::Usage(format!(
            "need 0 <= rho-min < rho-max <= 1, got {rho_min} and {rho_max}"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    writeln!(out, "rho,t_p,energy,cost")?;
    for i in 0..steps {
        let rho = if i + 1 == steps {
            rho_max
        } else {
            rho_min + (rho_max - rho_min) * i as f64 / (steps - 1) as f64
        };
        let outcome = plan(&s.with_rho(rho))?;
        let c = &outcome.chosen;
        writeln!(out, "{},{},{},{}", sig9(rho), sig9(c.t_p), sig9(c.energy), sig9(c.weighted_cost))?;
    }
    Ok(())
}

pub fn cmd_compare(out: &mut dyn Write, s: &Scenario) -> Result<(), CliError> {
    let av = plan(s)?;
    let hd = simulate_human(s);
    writeln!(out, "          t_p          energy       cost")?;
    writeln!(
        out,
        "human     {:<12} {:<12} {}{}",
        sig9(hd.t_p),
        sig9(hd.energy),
        sig9(hd.weighted_cost),
        if hd.waited { "  (waited at the line)" } else { "" }
    )?;
    writeln!(
        out,
        "planned   {:<12} {:<12} {}",
        sig9(av.chosen.t_p),
        sig9(av.chosen.energy),
        sig9(av.chosen.weighted_cost)
    )?;
    let gain = improvement(hd.weighted_cost, av.chosen.weighted_cost);
    writeln!(out, "improvement {:.2}%", 100.0 * gain)?;
    Ok(())
}

pub fn cmd_verify(out: &mut dyn Write, s: &Scenario, grid: GridSpec) -> Result<(), CliError> {
    let grid = GridSpec::new(grid.dt, grid.dv, grid.dx, grid.control_levels).map_err(CliError::Oracle)?;
    let r = crosscheck(s, &grid).map_err(CliError::Oracle)?;
    writeln!(out, "grid              dt {} dv {} dx {} levels {}", grid.dt, grid.dv, grid.dx, grid.control_levels)?;
    writeln!(out, "t_p               {}", sig9(r.t_p))?;
    writeln!(out, "energy analytic   {}", sig9(r.analytic_energy))?;
    writeln!(out, "energy dp         {} (raw {})", sig9(r.dp_energy), sig9(r.dp_raw_energy))?;
    writeln!(out, "cost analytic     {}", sig9(r.analytic_cost))?;
    writeln!(out, "cost dp           {}", sig9(r.dp_cost))?;
    writeln!(out, "gap               {} ({:.3e} relative)", sig9(r.abs_gap), r.rel_gap)?;
    writeln!(out, "line miss         {} m", sig9(r.distance_error))?;
    writeln!(out, "slack             {}", sig9(r.slack))?;
    let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
    writeln!(out, "cost gap          {}", verdict(r.gap_ok))?;
    writeln!(out, "energy gap        {}", verdict(r.energy_gap_ok))?;
    writeln!(out, "one-sided bound   {}", verdict(r.bound_ok))?;
    if r.passed() {
        Ok(())
    } else {
        Err(CliError::GapViolation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::GapViolation.exit_code(), 3);
        assert_eq!(CliError::Plan(PlanError::NoFeasiblePlan { candidates: vec![] }).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(0.530961234567), "0.530961235");
        assert_eq!(sig9(40.0), "40.0000000");
        assert_eq!(sig9(9.9999999999), "10.0000000");
        assert_eq!(sig9(-1.7369), "-1.73690000");
        assert_eq!(sig9(12345678912.0), "12345678912");
        assert_eq!(sig9(0.0), "0");
    }
}

//! Flat `key = value` scenario files.
//!
//! ```text
//! # comment
//! v0 = 10.8869
//! l = 200
//! light.period = 60
//! ```
//!
//! All keys are required except `t0` and `light.offset`, which default to 0.

use ecoand::{LightSchedule, Limits, Scenario, ScenarioError};
use thiserror::Error;

pub const KEYS: [&str; 11] = [
    "t0",
    "v0",
    "l",
    "v_min",
    "v_max",
    "u_min",
    "u_max",
    "rho",
    "light.period",
    "light.duty",
    "light.offset",
];

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected `key = value`, found `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` given twice (first on line {first})")]
    Duplicate { line: usize, key: String, first: usize },
    #[error("line {line}: `{key}` is not a number: `{value}`")]
    Number { line: usize, key: String, value: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] ScenarioError),
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let mut values: [Option<(f64, usize)>; KEYS.len()] = [None; KEYS.len()];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ParseError::Syntax { line, text: content.to_owned() });
        };
        let (key, value) = (key.trim(), value.trim());
        let slot = KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| ParseError::UnknownKey { line, key: key.to_owned() })?;
        if let Some((_, first)) = values[slot] {
            return Err(ParseError::Duplicate { line, key: key.to_owned(), first });
        }
        let number = value.parse::<f64>().map_err(|_| ParseError::Number {
            line,
            key: key.to_owned(),
            value: value.to_owned(),
        })?;
        values[slot] = Some((number, line));
    }

    let get = |key: &'static str| -> Result<f64, ParseError> {
        let slot = KEYS.iter().position(|k| *k == key).expect("known key");
        match (values[slot], key) {
            (Some((v, _)), _) => Ok(v),
            (None, "t0" | "light.offset") => Ok(0.0),
            (None, _) => Err(ParseError::Missing(key)),
        }
    };
    let s = Scenario {
        t0: get("t0")?,
        v0: get("v0")?,
        l: get("l")?,
        limits: Limits::new(get("v_min")?, get("v_max")?, get("u_min")?, get("u_max")?),
        rho: get("rho")?,
        light: LightSchedule::new(get("light.period")?, get("light.duty")?, get("light.offset")?),
    };
    Ok(s.validate()?)
}

//! Run configuration shared by the command line and the C interface.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::engine::TSchedule;
use crate::error::{Error, Result};
use crate::gmfh::{GmfhOptions, DEFAULT_MAX_LEVELS};
use crate::numerics::jacobi::DEFAULT_MAX_SWEEPS;

/// Worker cap. All reductions are evaluated in a fixed order, so results do not
/// depend on this setting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Threads {
    #[default]
    Auto,
    Count(usize),
}

impl fmt::Display for Threads {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threads::Auto => write!(f, "auto"),
            Threads::Count(n) => write!(f, "{n}"),
        }
    }
}

impl std::str::FromStr for Threads {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Threads::Count(n)),
            _ => Err(Error::Parse(format!("threads must be a positive integer or \"auto\", got {s:?}"))),
        }
    }
}

impl Serialize for Threads {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Threads::Auto => s.serialize_str("auto"),
            Threads::Count(n) => s.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Threads {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(usize),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(0) => Err(serde::de::Error::custom("threads must be positive")),
            Raw::N(n) => Ok(Threads::Count(n)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Expansion residual bound for conjugated elements, relative to `1 + ‖W‖`.
    pub tolerance: f64,
    pub t_schedule: TSchedule,
    pub max_sweeps: usize,
    pub max_levels: usize,
    pub threads: Threads,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: 1e-10,
            t_schedule: TSchedule::default(),
            max_sweeps: DEFAULT_MAX_SWEEPS,
            max_levels: DEFAULT_MAX_LEVELS,
            threads: Threads::Auto,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: RunConfig = serde_json::from_str(text)?;
        c.check()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidInput(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_sweeps == 0 || self.max_levels == 0 {
            return Err(Error::InvalidInput("max_sweeps and max_levels must be positive".into()));
        }
        self.t_schedule.check()
    }

    pub fn gmfh_options(&self) -> GmfhOptions {
        GmfhOptions { max_sweeps: self.max_sweeps, max_levels: self.max_levels, ..GmfhOptions::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_partial_files() {
        let c = RunConfig::from_json("{}").unwrap();
        assert_eq!(c, RunConfig::default());
        let c = RunConfig::from_json(r#"{"threads": "auto", "seed": 7, "t_schedule": {"cap": 32}}"#).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.t_schedule.cap, 32.0);
        assert_eq!(c.t_schedule.t0, 1.0);
        let c = RunConfig::from_json(r#"{"threads": 2}"#).unwrap();
        assert_eq!(c.threads, Threads::Count(2));
        assert!(RunConfig::from_json(r#"{"tolerance": -1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"t_schedule": {"t0": 8, "cap": 4}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"threads": 0}"#).is_err());
    }
}

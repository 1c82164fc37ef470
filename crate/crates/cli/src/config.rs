//! Run configuration: defaults, an optional `key=value` file, then flags.

use std::str::FromStr;
use std::time::Duration;

use gracelab::search::SearchBudget;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OutputFormat {
    Text,
    #[default]
    Json,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(CliError::Usage(format!("unknown output format `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub graceful: SearchBudget,
    pub total: SearchBudget,
    pub prime: SearchBudget,
    pub optimal: SearchBudget,
}

impl Default for Budgets {
    fn default() -> Self {
        let b = SearchBudget::default();
        Budgets {
            graceful: b,
            total: b,
            prime: b,
            optimal: b,
        }
    }
}

impl Budgets {
    fn all_mut(&mut self) -> [&mut SearchBudget; 4] {
        [&mut self.graceful, &mut self.total, &mut self.prime, &mut self.optimal]
    }

    fn solver_mut(&mut self, name: &str) -> Option<&mut SearchBudget> {
        match name {
            "graceful" => Some(&mut self.graceful),
            "total" => Some(&mut self.total),
            "prime" => Some(&mut self.prime),
            "optimal" => Some(&mut self.optimal),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub jobs: usize,
    pub slow_tier: bool,
    pub budgets: Budgets,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            slow_tier: false,
            budgets: Budgets::default(),
            output: OutputFormat::default(),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("bad value `{value}` for `{key}`")))
}

fn set_budget(b: &mut SearchBudget, field: &str, key: &str, value: &str) -> Result<(), CliError> {
    match field {
        "max_nodes" => b.max_nodes = parse(key, value)?,
        "max_wall_ms" => b.max_wall = Duration::from_millis(parse(key, value)?),
        _ => return Err(CliError::Usage(format!("unknown config key `{key}`"))),
    }
    Ok(())
}

impl RunConfig {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn merge_text(&mut self, text: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "jobs" => self.jobs = parse(key, value)?,
            "slow_tier" => self.slow_tier = parse(key, value)?,
            "output" => self.output = value.parse()?,
            "max_nodes" | "max_wall_ms" => {
                for b in self.budgets.all_mut() {
                    set_budget(b, key, key, value)?;
                }
            }
            _ => {
                let (solver, field) = key
                    .split_once('.')
                    .ok_or_else(|| CliError::Usage(format!("unknown config key `{key}`")))?;
                let b = self
                    .budgets
                    .solver_mut(solver)
                    .ok_or_else(|| CliError::Usage(format!("unknown solver in `{key}`")))?;
                set_budget(b, field, key, value)?;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.jobs == 0 {
            return Err(CliError::Usage("jobs must be at least 1".into()));
        }
        let b = self.budgets;
        for budget in [b.graceful, b.total, b.prime, b.optimal] {
            SearchBudget::new(budget.max_nodes, budget.max_wall)?;
        }
        Ok(())
    }
}

//! Append-only JSONL catalogue of per-class results.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use gracelab::canon::CanonicalKey;
use gracelab::census::{CensusEntry, Property};
use gracelab::labeling::{self, Labeling};
use gracelab::search::{SearchStats, Status};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalogueEntry {
    pub key: CanonicalKey,
    pub property: Property,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Labeling>,
    pub stats: SearchStats,
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl CatalogueEntry {
    pub fn from_census(e: &CensusEntry, timestamp: u64) -> Self {
        CatalogueEntry {
            key: e.key,
            property: e.property,
            status: e.status,
            witness: e.witness.clone(),
            stats: e.stats,
            tool_version: TOOL_VERSION.into(),
            timestamp,
        }
    }

    /// Checks the witness against the class representative.
    pub fn validate(&self) -> Result<(), String> {
        match (&self.witness, self.status) {
            (None, Status::Found) => Err("found entry without a witness".into()),
            (Some(_), Status::Exhausted | Status::BudgetExceeded) => {
                Err("witness on an entry that was not found".into())
            }
            (Some(w), Status::Found) => {
                let g = self.key.representative();
                match labeling::check(&g, w, self.property.kind()) {
                    Ok(v) if v.ok => Ok(()),
                    Ok(v) => Err(format!("witness fails re-validation: {:?}", v.violations)),
                    Err(e) => Err(e.to_string()),
                }
            }
            (None, _) => Ok(()),
        }
    }
}

pub fn now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// Parses a catalogue file; a missing file is an empty catalogue.
pub fn load(path: &Path) -> Result<Vec<CatalogueEntry>, CliError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(CliError::io(path, e)),
    };
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| CliError::Schema {
                line: i + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub entries: usize,
    /// `(line, reason)` for each failing entry.
    pub invalid: Vec<(usize, String)>,
}

/// Re-checks every witness and the `(key, property)` uniqueness rule.
pub fn validate(entries: &[CatalogueEntry]) -> ValidationReport {
    let mut seen = BTreeMap::new();
    let mut invalid = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        if let Err(reason) = e.validate() {
            invalid.push((i + 1, reason));
        }
        if let Some(first) = seen.insert((e.key, e.property), i + 1) {
            invalid.push((i + 1, format!("duplicates line {first}")));
        }
    }
    ValidationReport {
        entries: entries.len(),
        invalid,
    }
}

/// Appends entries whose `(key, property)` is new and returns how many were
/// written. A differing status for a stored pair is an error and nothing
/// is written.
pub fn append(path: &Path, entries: &[CatalogueEntry]) -> Result<usize, CliError> {
    let existing = load(path)?;
    let report = validate(&existing);
    if let Some((line, reason)) = report.invalid.first() {
        return Err(CliError::Schema {
            line: *line,
            reason: reason.clone(),
        });
    }
    let mut index: BTreeMap<(CanonicalKey, Property), Status> =
        existing.iter().map(|e| ((e.key, e.property), e.status)).collect();
    let mut fresh = Vec::new();
    for e in entries {
        e.validate().map_err(|reason| CliError::Schema { line: 0, reason })?;
        match index.get(&(e.key, e.property)) {
            Some(&s) if s == e.status => {}
            Some(&s) => {
                return Err(CliError::Conflict {
                    key: e.key.to_string(),
                    property: e.property.to_string(),
                    stored: s,
                    new: e.status,
                })
            }
            None => {
                index.insert((e.key, e.property), e.status);
                fresh.push(e);
            }
        }
    }
    if fresh.is_empty() {
        return Ok(0);
    }
    let mut text = String::new();
    for e in &fresh {
        text.push_str(&serde_json::to_string(e)?);
        text.push('\n');
    }
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))?;
    Ok(fresh.len())
}

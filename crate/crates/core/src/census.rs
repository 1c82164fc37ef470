//! Per-class solver runs over an enumerated universe.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::CanonicalKey;
use crate::enumerate::{enumerate_keyed, Bounds, Universe};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{self, Labeling, LabelingKind};
use crate::search::{self, SearchBudget, SearchOutcome, SearchStats, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Property {
    Graceful,
    Total,
    Prime,
}

impl Property {
    pub fn kind(self) -> LabelingKind {
        match self {
            Property::Graceful => LabelingKind::Graceful,
            Property::Total => LabelingKind::TotalLabeling,
            Property::Prime => LabelingKind::Prime,
        }
    }

    pub fn solve(self, g: &Graph, budget: SearchBudget) -> Result<SearchOutcome> {
        match self {
            Property::Graceful => search::find_graceful(g, budget),
            Property::Total => search::find_total(g, budget),
            Property::Prime => search::find_prime(g, budget, false),
        }
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graceful" => Ok(Property::Graceful),
            "total" | "supergraceful" => Ok(Property::Total),
            "prime" => Ok(Property::Prime),
            _ => Err(Error::Parse(format!("unknown property `{s}`"))),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Graceful => "graceful",
            Property::Total => "total",
            Property::Prime => "prime",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub key: CanonicalKey,
    pub property: Property,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Labeling>,
    pub stats: SearchStats,
}

impl CensusEntry {
    pub fn graph(&self) -> Graph {
        self.key.representative()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub classes: usize,
    pub found: usize,
    pub exhausted: usize,
    pub budget_exceeded: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusFailure {
    pub key: CanonicalKey,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub universe: String,
    pub entries: Vec<CensusEntry>,
    pub summary: CensusSummary,
    pub failures: Vec<CensusFailure>,
}

impl CensusReport {
    pub fn with_status(&self, status: Status) -> impl Iterator<Item = &CensusEntry> {
        self.entries.iter().filter(move |e| e.status == status)
    }

    pub fn to_jsonl(&self) -> String {
        self.entries
            .iter()
            .map(|e| serde_json::to_string(e).expect("entries serialize") + "\n")
            .collect()
    }
}

/// Runs `property` on every class of `universe` at each order. Classes are
/// solved in parallel; the report is ordered by order, then key.
pub fn census_run(
    universe: Universe,
    orders: impl IntoIterator<Item = usize>,
    bounds: Bounds,
    property: Property,
    budget: SearchBudget,
) -> Result<CensusReport> {
    let orders: Vec<usize> = orders.into_iter().collect();
    let mut graphs = Vec::new();
    for &n in &orders {
        graphs.extend(enumerate_keyed(universe, n, bounds)?);
    }
    graphs.sort_by_key(|(k, _)| *k);
    census_over(&describe(universe, &orders, bounds), graphs, property, budget)
}

/// Census over an explicit, already deduplicated list of classes.
pub fn census_over(
    universe: &str,
    graphs: Vec<(CanonicalKey, Graph)>,
    property: Property,
    budget: SearchBudget,
) -> Result<CensusReport> {
    let results: Vec<Result<(CensusEntry, Option<String>)>> = graphs
        .par_iter()
        .map(|(key, g)| {
            let out = property.solve(g, budget)?;
            let defect = match &out.witness {
                Some(w) if !labeling::holds(g, w, property.kind()) => {
                    Some("witness fails re-validation".to_string())
                }
                _ => None,
            };
            let entry = CensusEntry {
                key: *key,
                property,
                status: out.status,
                witness: out.witness,
                stats: out.stats,
            };
            Ok((entry, defect))
        })
        .collect();
    let mut entries = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    let mut summary = CensusSummary::default();
    for r in results {
        let (entry, defect) = r?;
        summary.classes += 1;
        match entry.status {
            Status::Found => summary.found += 1,
            Status::Exhausted => summary.exhausted += 1,
            Status::BudgetExceeded => {
                summary.budget_exceeded += 1;
                failures.push(CensusFailure {
                    key: entry.key,
                    reason: "budget exceeded".into(),
                });
            }
        }
        if let Some(reason) = defect {
            failures.push(CensusFailure {
                key: entry.key,
                reason,
            });
        }
        entries.push(entry);
    }
    Ok(CensusReport {
        universe: universe.to_string(),
        entries,
        summary,
        failures,
    })
}

fn describe(universe: Universe, orders: &[usize], bounds: Bounds) -> String {
    let orders: Vec<String> = orders.iter().map(|n| n.to_string()).collect();
    let mut s = format!("{universe} orders {}", orders.join(","));
    if let Some(m) = bounds.min_edges {
        s += &format!(" minEdges {m}");
    }
    if let Some(m) = bounds.max_edges {
        s += &format!(" maxEdges {m}");
    }
    s
}

//! Census-backed audits of the small-order catalogue claims.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, CanonicalKey};
use crate::census::{census_run, CensusReport, Property};
use crate::classify::is_eulerian;
use crate::conditions::critical_audit;
use crate::enumerate::{enumerate_keyed, Bounds, Universe};
use crate::error::{Error, Result};
use crate::families::{complete, cycle, h_family, HProduct};
use crate::graph::Graph;
use crate::search::{attractive_labels, find_graceful, Element, SearchBudget, Status};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub key: CanonicalKey,
    pub status: Status,
}

fn named(name: &str, g: &Graph, status: Status) -> Result<NamedCheck> {
    Ok(NamedCheck {
        name: name.into(),
        key: canonical_key(g)?,
        status,
    })
}

/// `K_4` plus two degree-2 nodes attached to disjoint pairs of its nodes.
pub fn k4_with_legs() -> Graph {
    Graph::new(
        6,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1), (5, 2), (5, 3)],
    )
    .expect("fixed edge list")
}

/// Two triangles sharing one node.
pub fn bowtie() -> Graph {
    Graph::new(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).expect("fixed edge list")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonGracefulAudit {
    pub max_order: usize,
    pub classes: usize,
    /// Every connected class the graceful search exhausts.
    pub non_graceful: Vec<CanonicalKey>,
    pub named: Vec<NamedCheck>,
    /// Exhausted classes outside the named list.
    pub unnamed: Vec<CanonicalKey>,
    pub named_all_non_graceful: bool,
    pub h_join: NamedCheck,
    pub budget_exceeded: usize,
}

pub fn small_non_graceful(max_order: usize, budget: SearchBudget) -> Result<NonGracefulAudit> {
    let r = census_run(Universe::ConnectedGraphs, 1..=max_order, Bounds::default(), Property::Graceful, budget)?;
    let non_graceful: Vec<CanonicalKey> = r.with_status(Status::Exhausted).map(|e| e.key).collect();
    let status_of = |k: CanonicalKey| r.entries.iter().find(|e| e.key == k).map(|e| e.status);
    let mut list = Vec::new();
    for (name, g) in [
        ("C5", cycle(5)?),
        ("K5", complete(5)?),
        ("C6", cycle(6)?),
        ("K6", complete(6)?),
        ("K4 with two legs", k4_with_legs()),
    ] {
        if g.order() > max_order {
            continue;
        }
        let k = canonical_key(&g)?;
        list.push(named(name, &g, status_of(k).unwrap_or(Status::BudgetExceeded))?);
    }
    let named_keys: BTreeSet<CanonicalKey> = list.iter().map(|n| n.key).collect();
    let h = h_family(2, 2, 2, HProduct::Join)?;
    let h_join = named("H(2,2,2) join", &h, find_graceful(&h, budget)?.status)?;
    Ok(NonGracefulAudit {
        max_order,
        classes: r.summary.classes,
        unnamed: non_graceful.iter().filter(|k| !named_keys.contains(k)).copied().collect(),
        named_all_non_graceful: list.iter().all(|n| n.status == Status::Exhausted),
        non_graceful,
        named: list,
        h_join,
        budget_exceeded: r.summary.budget_exceeded,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustedSet {
    pub universe: String,
    pub classes: usize,
    pub exhausted: Vec<CanonicalKey>,
    pub budget_exceeded: usize,
}

impl From<CensusReport> for ExhaustedSet {
    fn from(r: CensusReport) -> Self {
        ExhaustedSet {
            exhausted: r.with_status(Status::Exhausted).map(|e| e.key).collect(),
            universe: r.universe,
            classes: r.summary.classes,
            budget_exceeded: r.summary.budget_exceeded,
        }
    }
}

/// Classes of order `1..=max_order` with no total labeling.
pub fn supergraceful_catalogue(universe: Universe, max_order: usize, budget: SearchBudget) -> Result<ExhaustedSet> {
    Ok(census_run(universe, 1..=max_order, Bounds::default(), Property::Total, budget)?.into())
}

pub fn unicyclic_census(property: Property, max_order: usize, budget: SearchBudget) -> Result<ExhaustedSet> {
    Ok(census_run(Universe::Unicyclic, 3..=max_order, Bounds::default(), property, budget)?.into())
}

/// The stated minimum size of a non-graceful eulerian graph of order `p`.
pub fn eulerian_chi_claim(p: usize) -> Option<usize> {
    match p % 4 {
        1 | 2 if p >= 5 => Some(p),
        0 | 3 if p >= 8 => Some(p + 2),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianMinimum {
    pub order: usize,
    pub claimed: Option<usize>,
    pub computed: Option<usize>,
    pub witnesses: Vec<CanonicalKey>,
    pub searched_up_to: usize,
}

/// Fewest edges of a non-graceful eulerian graph of order `p`, searching
/// sizes up to `max_edges`.
pub fn eulerian_minimum(p: usize, max_edges: usize, budget: SearchBudget) -> Result<EulerianMinimum> {
    let r = census_run(Universe::EulerianFiltered, [p], Bounds::max_edges(max_edges), Property::Graceful, budget)?;
    if r.summary.budget_exceeded > 0 {
        return Err(Error::BudgetExceeded);
    }
    let computed = r.with_status(Status::Exhausted).map(|e| e.key.size()).min();
    Ok(EulerianMinimum {
        order: p,
        claimed: eulerian_chi_claim(p),
        computed,
        witnesses: r
            .with_status(Status::Exhausted)
            .filter(|e| Some(e.key.size()) == computed)
            .map(|e| e.key)
            .collect(),
        searched_up_to: max_edges,
    })
}

/// Whether `h` is isomorphic to a subgraph (not necessarily induced) of `g`.
pub fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
        let i = map.len();
        if i == h.order() {
            return true;
        }
        for v in 0..g.order() {
            if used >> v & 1 == 1 || g.degree(v) < h.degree(i) {
                continue;
            }
            if (0..i).all(|j| !h.has_edge(i, j) || g.has_edge(v, map[j])) {
                map.push(v);
                if extend(g, h, map, used | 1 << v) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    h.order() <= g.order() && h.size() <= g.size() && extend(g, h, &mut Vec::new(), 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianCriticalAudit {
    pub order: usize,
    pub eulerian: usize,
    pub non_graceful: usize,
    /// Eulerian classes containing none of C5, C6 and the bowtie.
    pub pattern_free: Vec<CanonicalKey>,
    pub critical: Vec<CanonicalKey>,
}

/// Searches the eulerian graphs of order `p` for critical ones. Graphs
/// holding a C5, C6 or bowtie are skipped as non-critical; the rest go
/// through the full subgraph audit.
pub fn eulerian_critical(p: usize, budget: SearchBudget) -> Result<EulerianCriticalAudit> {
    let graphs = enumerate_keyed(Universe::EulerianFiltered, p, Bounds::default())?;
    let patterns = [cycle(5)?, cycle(6)?, bowtie()];
    let mut non_graceful = 0;
    let mut pattern_free = Vec::new();
    let mut critical = Vec::new();
    for (k, g) in &graphs {
        debug_assert!(is_eulerian(g));
        let graceful = match find_graceful(g, budget)?.status {
            Status::Found => true,
            Status::Exhausted => false,
            Status::BudgetExceeded => return Err(Error::BudgetExceeded),
        };
        non_graceful += usize::from(!graceful);
        let proper_pattern = patterns
            .iter()
            .any(|h| (h.order(), h.size()) != (g.order(), g.size()) && contains_subgraph(g, h));
        if proper_pattern {
            continue;
        }
        pattern_free.push(*k);
        if !graceful && critical_audit(g, budget)?.holds {
            critical.push(*k);
        }
    }
    Ok(EulerianCriticalAudit {
        order: p,
        eulerian: graphs.len(),
        non_graceful,
        pattern_free,
        critical,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractTable {
    #[serde(with = "crate::graph6::as_string")]
    pub graph: Graph,
    /// Node labels each node can carry in some graceful labeling.
    pub node_labels: Vec<Vec<usize>>,
    /// Whether every node carries every label in `1..=q`.
    pub all_attractive: bool,
    /// The same over `0..=q`.
    pub all_attractive_from_zero: bool,
}

pub fn attract_table(g: &Graph, budget: SearchBudget) -> Result<AttractTable> {
    let q = g.size();
    let node_labels = (0..g.order())
        .map(|v| attractive_labels(g, Element::Node(v), budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(AttractTable {
        graph: g.clone(),
        all_attractive: node_labels.iter().all(|l| (1..=q).all(|i| l.contains(&i))),
        all_attractive_from_zero: node_labels.iter().all(|l| l.len() == q + 1),
        node_labels,
    })
}

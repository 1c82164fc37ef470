//! Node labelings, induced edge labels, label profiles and labeling predicates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::graph::Graph;

/// Node label per node index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn new(values: Vec<usize>) -> Self {
        Labeling(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_label(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn min_label(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn edge_label(&self, u: usize, v: usize) -> usize {
        self.0[u].abs_diff(self.0[v])
    }

    /// Edge labels in the order of [`Graph::edges`].
    pub fn edge_labels(&self, g: &Graph) -> Vec<usize> {
        g.edges().iter().map(|&(u, v)| self.edge_label(u, v)).collect()
    }

    /// The node carrying `label`, if any.
    pub fn node_with(&self, label: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == label)
    }

    pub fn ensure_total(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.order() {
            return Err(Error::LabelingSize {
                got: self.0.len(),
                order: g.order(),
            });
        }
        Ok(())
    }

    /// `u:label` lines.
    pub fn to_text(&self) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(u, l)| format!("{u}:{l}\n"))
            .collect()
    }

    pub fn parse_text(text: &str, order: usize) -> Result<Labeling> {
        let mut values = vec![None; order];
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (u, l) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `node:label`, got `{line}`")))?;
            let u: usize = u
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad node `{u}`")))?;
            let l: usize = l
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad label `{l}`")))?;
            if u >= order {
                return Err(Error::NodeOutOfRange { node: u, order });
            }
            if values[u].replace(l).is_some() {
                return Err(Error::Parse(format!("node {u} labeled twice")));
            }
        }
        let got = values.iter().filter(|v| v.is_some()).count();
        if got != order {
            return Err(Error::LabelingSize { got, order });
        }
        Ok(Labeling(values.into_iter().map(Option::unwrap).collect()))
    }
}

impl From<Vec<usize>> for Labeling {
    fn from(v: Vec<usize>) -> Self {
        Labeling(v)
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelProfile {
    pub q0: usize,
    pub nodes: BTreeSet<usize>,
    /// Sorted, with multiplicity.
    pub edges: Vec<usize>,
    pub repeated_edges: Vec<usize>,
    pub node_gaps: Vec<usize>,
    pub edge_gaps: Vec<usize>,
    /// Non-adjacent pairs by label difference; empty differences omitted.
    pub r: BTreeMap<usize, Vec<(usize, usize)>>,
}

impl LabelProfile {
    pub fn r(&self, e: usize) -> &[(usize, usize)] {
        self.r.get(&e).map_or(&[], Vec::as_slice)
    }
}

pub fn profile(g: &Graph, phi: &Labeling) -> Result<LabelProfile> {
    phi.ensure_total(g)?;
    let q0 = phi.max_label();
    let nodes: BTreeSet<usize> = phi.values().iter().copied().collect();
    let mut edges = phi.edge_labels(g);
    edges.sort_unstable();
    let mut repeated_edges: Vec<usize> = edges.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
    repeated_edges.dedup();
    let present: BTreeSet<usize> = edges.iter().copied().collect();
    let node_gaps = (0..=q0).filter(|x| !nodes.contains(x)).collect();
    let edge_gaps = (1..=q0).filter(|x| !present.contains(x)).collect();
    let mut r: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let p = g.order();
    for u in 0..p {
        for v in u + 1..p {
            if !g.has_edge(u, v) {
                let e = phi.edge_label(u, v);
                if e > 0 {
                    r.entry(e).or_default().push((u, v));
                }
            }
        }
    }
    Ok(LabelProfile {
        q0,
        nodes,
        edges,
        repeated_edges,
        node_gaps,
        edge_gaps,
        r,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum LabelingKind {
    Graceful,
    TotalLabeling,
    Semitotal { slack: usize },
    Prime,
    Alpha,
    EdgeDistinct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "type")]
pub enum Violation {
    RepeatedNodeLabel { label: usize, nodes: Vec<usize> },
    LabelOutOfRange { node: usize, label: usize, min: usize, max: usize },
    RepeatedEdgeLabel { label: usize, edges: Vec<(usize, usize)> },
    MissingEdgeLabel { label: usize },
    NodeEdgeCollision { label: usize, node: usize, edge: (usize, usize) },
    NotCoprime { u: usize, v: usize, labels: (usize, usize) },
    NoAlphaBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: LabelingKind,
    pub ok: bool,
    pub violations: Vec<Violation>,
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn repeated_nodes(phi: &Labeling) -> Vec<Violation> {
    let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &l) in phi.values().iter().enumerate() {
        by_label.entry(l).or_default().push(v);
    }
    by_label
        .into_iter()
        .filter(|(_, n)| n.len() > 1)
        .map(|(label, nodes)| Violation::RepeatedNodeLabel { label, nodes })
        .collect()
}

fn range(phi: &Labeling, min: usize, max: usize) -> Vec<Violation> {
    phi.values()
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l < min || l > max)
        .map(|(node, &label)| Violation::LabelOutOfRange { node, label, min, max })
        .collect()
}

fn repeated_edges(g: &Graph, phi: &Labeling) -> Vec<Violation> {
    let mut by_label: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for &(u, v) in g.edges() {
        by_label.entry(phi.edge_label(u, v)).or_default().push((u, v));
    }
    by_label
        .into_iter()
        .filter(|(_, e)| e.len() > 1)
        .map(|(label, edges)| Violation::RepeatedEdgeLabel { label, edges })
        .collect()
}

/// Largest `k` such that every edge has one endpoint label `<= k` and the
/// other `> k`.
pub fn alpha_boundary(g: &Graph, phi: &Labeling) -> Option<usize> {
    let low = g.edges().iter().map(|&(u, v)| phi.get(u).min(phi.get(v))).max()?;
    let high = g.edges().iter().map(|&(u, v)| phi.get(u).max(phi.get(v))).min()?;
    (low < high).then_some(low)
}

pub fn check(g: &Graph, phi: &Labeling, kind: LabelingKind) -> Result<Verdict> {
    phi.ensure_total(g)?;
    let p = g.order();
    let q = g.size();
    let mut violations = Vec::new();
    match kind {
        LabelingKind::Graceful | LabelingKind::Alpha => {
            violations.extend(repeated_nodes(phi));
            violations.extend(range(phi, 0, q));
            violations.extend(repeated_edges(g, phi));
            let present: BTreeSet<usize> = phi.edge_labels(g).into_iter().collect();
            violations.extend(
                (1..=q)
                    .filter(|l| !present.contains(l))
                    .map(|label| Violation::MissingEdgeLabel { label }),
            );
            if kind == LabelingKind::Alpha && violations.is_empty() && q > 0 && alpha_boundary(g, phi).is_none() {
                violations.push(Violation::NoAlphaBoundary);
            }
        }
        LabelingKind::TotalLabeling | LabelingKind::Semitotal { .. } => {
            let slack = match kind {
                LabelingKind::Semitotal { slack } => slack,
                _ => 0,
            };
            violations.extend(repeated_nodes(phi));
            violations.extend(range(phi, 1, p + q + slack));
            violations.extend(repeated_edges(g, phi));
            for &(u, v) in g.edges() {
                let e = phi.edge_label(u, v);
                if let Some(node) = phi.node_with(e) {
                    violations.push(Violation::NodeEdgeCollision {
                        label: e,
                        node,
                        edge: (u, v),
                    });
                }
            }
        }
        LabelingKind::Prime => {
            violations.extend(repeated_nodes(phi));
            violations.extend(range(phi, 1, p));
            for &(u, v) in g.edges() {
                let (a, b) = (phi.get(u), phi.get(v));
                if gcd(a, b) != 1 {
                    violations.push(Violation::NotCoprime { u, v, labels: (a, b) });
                }
            }
        }
        LabelingKind::EdgeDistinct => {
            violations.extend(repeated_nodes(phi));
            violations.extend(repeated_edges(g, phi));
        }
    }
    Ok(Verdict {
        kind,
        ok: violations.is_empty(),
        violations,
    })
}

pub fn holds(g: &Graph, phi: &Labeling, kind: LabelingKind) -> bool {
    check(g, phi, kind).map(|v| v.ok).unwrap_or(false)
}

pub fn is_graceful(g: &Graph, phi: &Labeling) -> bool {
    holds(g, phi, LabelingKind::Graceful)
}

pub fn complementary(g: &Graph, phi: &Labeling, base: usize) -> Result<Labeling> {
    phi.ensure_total(g)?;
    if base < phi.max_label() {
        return precondition(format!(
            "base {base} is below the largest label {}",
            phi.max_label()
        ));
    }
    Ok(Labeling(phi.values().iter().map(|&x| base - x).collect()))
}

pub fn shift_subset(phi: &Labeling, subset: &[usize], c: usize) -> Labeling {
    let mut v = phi.0.clone();
    for &x in subset {
        v[x] += c;
    }
    Labeling(v)
}

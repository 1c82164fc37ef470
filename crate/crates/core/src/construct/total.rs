//! Total and semitotal labelings: apex graphs, pendant growth and
//! embeddings into totally labeled hosts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{checked, verified, EmbeddingResult};
use crate::classify::is_tree;
use crate::error::{precondition, Error, Result};
use crate::families::{complete, join};
use crate::graph::Graph;
use crate::labeling::{self, Labeling, LabelingKind};

fn require_total(g: &Graph, mu: &Labeling) -> Result<()> {
    if !labeling::check(g, mu, LabelingKind::TotalLabeling)?.ok {
        return precondition("input labeling is not total");
    }
    Ok(())
}

/// `K_1 + G` with the apex labeled 0; apex edges take the node labels of
/// `mu`.
pub fn apex_graceful(g: &Graph, mu: &Labeling) -> Result<(Graph, Labeling)> {
    require_total(g, mu)?;
    let h = join(g, &complete(1)?)?;
    let mut labels = mu.values().to_vec();
    labels.push(0);
    checked(h.order(), h.edges(), labels, LabelingKind::Graceful)
}

/// Shifts a graceful labeling of a tree by its order.
pub fn tree_total_from_graceful(t: &Graph, phi: &Labeling) -> Result<Labeling> {
    if !is_tree(t) {
        return precondition("input must be a tree");
    }
    if !labeling::check(t, phi, LabelingKind::Graceful)?.ok {
        return precondition("input labeling is not graceful");
    }
    let p = t.order();
    let mu = Labeling::new(phi.values().iter().map(|&x| x + p).collect());
    verified(t, &mu, LabelingKind::TotalLabeling)?;
    Ok(mu)
}

/// Smallest range `1..=top` consistent with the labeling, and the slack.
fn semitotal_range(g: &Graph, phi: &Labeling) -> Result<(usize, usize)> {
    phi.ensure_total(g)?;
    let pq = g.order() + g.size();
    let top = phi.max_label().max(pq);
    let slack = top - pq;
    if !labeling::check(g, phi, LabelingKind::Semitotal { slack })?.ok {
        return precondition("input labeling is not semitotal");
    }
    Ok((top, slack))
}

/// Complements every label except the full-degree node `u`, which keeps
/// the top value, so node and edge labels at `u` swap roles.
pub fn semitotal_normalize(g: &Graph, phi: &Labeling, u: usize) -> Result<Labeling> {
    let (top, slack) = semitotal_range(g, phi)?;
    let p = g.order();
    if u >= p {
        return Err(Error::NodeOutOfRange { node: u, order: p });
    }
    if g.degree(u) + 1 != p {
        return precondition(format!("node {u} is not adjacent to every other node"));
    }
    if phi.get(u) != top {
        return precondition(format!("node {u} does not carry the top value {top}"));
    }
    let covered = phi.node_with(top - 1).is_some() || phi.edge_labels(g).contains(&(top - 1));
    if !covered {
        return precondition(format!("value {} is neither a node nor an edge label", top - 1));
    }
    if phi.node_with(1).is_some() {
        return Ok(phi.clone());
    }
    let mu = Labeling::new((0..p).map(|x| if x == u { top } else { top - phi.get(x) }).collect());
    verified(g, &mu, LabelingKind::Semitotal { slack })?;
    Ok(mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PendantMode {
    /// Graceful input; pendants at the 0-node labeled `q+1, q+2, …`.
    Graceful,
    /// Total input with node label 1; pendants at the 1-node labeled
    /// `p+q+2, p+q+4, …`.
    Total,
    /// Total input with smallest node label `a`; each step adds `a`
    /// pendants at the `a`-node.
    TotalStep,
}

/// Grows `t` rounds of pendants according to `mode`.
pub fn grow_pendants(g: &Graph, phi: &Labeling, mode: PendantMode, t: usize) -> Result<(Graph, Labeling)> {
    let (kind, anchor_label, step) = match mode {
        PendantMode::Graceful => {
            if !labeling::check(g, phi, LabelingKind::Graceful)?.ok {
                return precondition("input labeling is not graceful");
            }
            (LabelingKind::Graceful, 0, 1)
        }
        PendantMode::Total => {
            require_total(g, phi)?;
            (LabelingKind::TotalLabeling, 1, 1)
        }
        PendantMode::TotalStep => {
            require_total(g, phi)?;
            let a = phi.min_label();
            (LabelingKind::TotalLabeling, a, a)
        }
    };
    let anchor = phi
        .node_with(anchor_label)
        .ok_or_else(|| Error::Precondition(format!("no node is labeled {anchor_label}")))?;
    let mut labels = phi.values().to_vec();
    let mut edges = g.edges().to_vec();
    for _ in 0..t {
        let base = match kind {
            LabelingKind::Graceful => edges.len(),
            _ => labels.len() + edges.len(),
        };
        for j in 1..=step {
            let l = match mode {
                PendantMode::Graceful => base + 1,
                PendantMode::Total => base + 2,
                PendantMode::TotalStep => base + step + j,
            };
            labels.push(l);
            edges.push((anchor, labels.len() - 1));
        }
    }
    checked(labels.len(), &edges, labels, kind)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SupergracefulMode {
    /// Isolated nodes carry the missing values.
    Isolated,
    /// New nodes `top+2, top+4, …` hang from the 1-node; each missing value
    /// is realized by one extra edge to an anchor of matching parity.
    Connected,
}

/// Embeds a semitotally labeled graph into a totally labeled host that
/// contains it as an induced subgraph.
pub fn embed_supergraceful(g: &Graph, phi: &Labeling, mode: SupergracefulMode) -> Result<EmbeddingResult> {
    let (top, _) = semitotal_range(g, phi)?;
    let p = g.order();
    let mut present: BTreeSet<usize> = phi.values().iter().copied().collect();
    present.extend(phi.edge_labels(g));
    let missing: Vec<usize> = (1..=top).filter(|x| !present.contains(x)).collect();
    let mut labels = phi.values().to_vec();
    let mut edges = g.edges().to_vec();
    match mode {
        SupergracefulMode::Isolated => labels.extend(&missing),
        SupergracefulMode::Connected => {
            let one = phi
                .node_with(1)
                .ok_or_else(|| Error::Precondition("no node is labeled 1".into()))?;
            if !g.is_connected() {
                return precondition("guest must be connected");
            }
            let mut extra: Vec<(usize, usize)> = Vec::new();
            let mut rounds = 0;
            for parity in 0..2 {
                let class: Vec<usize> = missing.iter().copied().filter(|x| (top - x) % 2 == parity).collect();
                let Some(&low) = class.first() else { continue };
                let anchor = (0..p)
                    .filter(|&a| a != one && phi.get(a) % 2 == parity && phi.get(a) + low > top)
                    .min_by_key(|&a| phi.get(a))
                    .ok_or_else(|| {
                        Error::Infeasible(format!("no anchor of parity {parity} reaches past {top}"))
                    })?;
                for x in class {
                    let i = (phi.get(anchor) + x - top) / 2;
                    rounds = rounds.max(i);
                    extra.push((i, anchor));
                }
            }
            for i in 1..=rounds {
                labels.push(top + 2 * i);
                edges.push((one, labels.len() - 1));
            }
            edges.extend(extra.into_iter().map(|(i, a)| (p + i - 1, a)));
        }
    }
    let host = Graph::new(labels.len(), &edges)?;
    let r = EmbeddingResult {
        host,
        host_labeling: Labeling::new(labels),
        injection: (0..p).collect(),
        induced: true,
    };
    r.verify(g, LabelingKind::TotalLabeling)?;
    if mode == SupergracefulMode::Connected && !r.host.is_connected() {
        return Err(Error::SelfCheck("host is not connected".into()));
    }
    Ok(r)
}

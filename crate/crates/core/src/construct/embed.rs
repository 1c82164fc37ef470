//! Embeddings of arbitrary graphs into graceful hosts.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::EmbeddingResult;
use crate::canon::canonical_key;
use crate::error::{precondition, Error, Result};
use crate::families::complete;
use crate::graph::Graph;
use crate::labeling::{self, Labeling, LabelingKind};
use crate::search::{find_optimal, SearchBudget};

/// Largest guest order for [`EmbedStrategy::CompleteHost`].
pub const COMPLETE_HOST_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EmbedStrategy {
    /// Close each missing edge label from the 0-node, adding a pendant when
    /// the label is not a node label.
    FreeLabel,
    /// Optimally label `K_p` and hang one pendant per missing label.
    CompleteHost,
    /// Pendant construction keeping the guest induced.
    Induced,
}

impl std::str::FromStr for EmbedStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "freeLabel" => Ok(EmbedStrategy::FreeLabel),
            "completeHost" => Ok(EmbedStrategy::CompleteHost),
            "induced" => Ok(EmbedStrategy::Induced),
            _ => Err(Error::Parse(format!("unknown embedding strategy `{s}`"))),
        }
    }
}

fn finish(guest: &Graph, host: Graph, labels: Vec<usize>, injection: Vec<usize>) -> Result<EmbeddingResult> {
    let induced = EmbeddingResult::compute_induced(&host, guest, &injection);
    let r = EmbeddingResult {
        host,
        host_labeling: Labeling::new(labels),
        injection,
        induced,
    };
    r.verify(guest, LabelingKind::Graceful)?;
    Ok(r)
}

fn optimal_labeling(g: &Graph, budget: SearchBudget) -> Result<Labeling> {
    Ok(find_optimal(g, budget)?.witness)
}

/// Embeds `g` into a graceful host using `strategy`.
pub fn embed_graceful(g: &Graph, strategy: EmbedStrategy, budget: SearchBudget) -> Result<EmbeddingResult> {
    let p = g.order();
    let identity: Vec<usize> = (0..p).collect();
    match strategy {
        EmbedStrategy::FreeLabel => free_label_host(g, &optimal_labeling(g, budget)?),
        EmbedStrategy::CompleteHost => {
            if p > COMPLETE_HOST_CAP {
                return Err(Error::CapExceeded {
                    what: "complete-host embedding order",
                    cap: COMPLETE_HOST_CAP,
                    got: p,
                });
            }
            let kp = complete(p)?;
            let phi = optimal_labeling(&kp, budget)?;
            let prof = labeling::profile(&kp, &phi)?;
            let zero = phi.node_with(0).expect("optimal labeling uses 0");
            let mut labels = phi.values().to_vec();
            let mut edges = kp.edges().to_vec();
            for &e in &prof.edge_gaps {
                labels.push(e);
                edges.push((zero, labels.len() - 1));
            }
            finish(g, Graph::new(labels.len(), &edges)?, labels, identity)
        }
        EmbedStrategy::Induced => {
            let phi = optimal_labeling(g, budget)?;
            let prof = labeling::profile(g, &phi)?;
            let u = phi.node_with(0).expect("optimal labeling uses 0");
            let (q1, d): (Vec<usize>, Vec<usize>) = prof.edge_gaps.iter().partition(|e| !prof.nodes.contains(e));
            let m = d.last().copied().unwrap_or(0);
            let top = phi.max_label();
            // the largest label x with x + m > top is the top label itself
            let v = (0..p)
                .filter(|&x| phi.get(x) + m > top)
                .max_by_key(|&x| phi.get(x))
                .unwrap_or(u);
            let mut labels = phi.values().to_vec();
            let mut edges = g.edges().to_vec();
            for &e in &q1 {
                labels.push(e);
                edges.push((u, labels.len() - 1));
            }
            let first = labels.len();
            for j in 1..=m {
                labels.push(phi.get(v) + j);
                edges.push((u, labels.len() - 1));
            }
            for &di in &d {
                edges.push((first + di - 1, v));
            }
            finish(g, Graph::new(labels.len(), &edges)?, labels, identity)
        }
    }
}

/// Closes each missing edge label of an edge-distinct labeling from the
/// 0-node: by an edge when the label is a node label, by a pendant otherwise.
pub fn free_label_host(g: &Graph, phi: &Labeling) -> Result<EmbeddingResult> {
    if !labeling::check(g, phi, LabelingKind::EdgeDistinct)?.ok {
        return precondition("labeling must be edge-distinct");
    }
    let zero = phi
        .node_with(0)
        .ok_or_else(|| Error::Precondition("no node is labeled 0".into()))?;
    let prof = labeling::profile(g, phi)?;
    let mut labels = phi.values().to_vec();
    let mut edges = g.edges().to_vec();
    for &x in &prof.edge_gaps {
        match phi.node_with(x) {
            Some(v) => edges.push((zero, v)),
            None => {
                labels.push(x);
                edges.push((zero, labels.len() - 1));
            }
        }
    }
    finish(g, Graph::new(labels.len(), &edges)?, labels, (0..g.order()).collect())
}

/// All minimal-order hosts extending a fixed optimal labeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalEmbedding {
    pub order: usize,
    pub hosts: Vec<EmbeddingResult>,
    pub all_connected: bool,
}

/// Exhaustive search, by increasing number of added nodes, for graceful
/// hosts that keep `phi` on the guest, keep the guest induced and realize
/// each missing edge label exactly once.
pub fn embed_graceful_optimal(g: &Graph, phi: &Labeling, max_added: usize) -> Result<OptimalEmbedding> {
    if !labeling::check(g, phi, LabelingKind::EdgeDistinct)?.ok || phi.node_with(0).is_none() {
        return precondition("labeling must be edge-distinct and use 0");
    }
    let p = g.order();
    let prof = labeling::profile(g, phi)?;
    let top = prof.q0;
    if top > 127 {
        return Err(Error::CapExceeded {
            what: "embedding label range",
            cap: 127,
            got: top,
        });
    }
    if prof.edge_gaps.is_empty() {
        let r = EmbeddingResult {
            host: g.clone(),
            host_labeling: phi.clone(),
            injection: (0..p).collect(),
            induced: true,
        };
        r.verify(g, LabelingKind::Graceful)?;
        return Ok(OptimalEmbedding {
            order: p,
            all_connected: g.is_connected(),
            hosts: vec![r],
        });
    }
    let missing: Vec<usize> = prof.edge_gaps.iter().rev().copied().collect();
    for k in 1..=max_added.min(prof.node_gaps.len()) {
        let mut found: BTreeMap<Vec<(usize, usize)>, (Graph, Vec<usize>)> = BTreeMap::new();
        for subset in combinations(&prof.node_gaps, k) {
            let mut labels = phi.values().to_vec();
            labels.extend(&subset);
            let mut s = HostSearch {
                p,
                labels: &labels,
                edges: g.edges().to_vec(),
                missing: &missing,
                out: Vec::new(),
            };
            s.rec(0);
            for edges in s.out {
                let host = Graph::new(labels.len(), &edges)?;
                if (p..labels.len()).any(|w| host.degree(w) == 0) {
                    continue;
                }
                let mut key: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(a, b)| (labels[a].min(labels[b]), labels[a].max(labels[b])))
                    .collect();
                key.sort_unstable();
                found.entry(key).or_insert((host, labels.clone()));
            }
        }
        if found.is_empty() {
            continue;
        }
        let mut hosts = Vec::new();
        for (_, (host, labels)) in found {
            let r = EmbeddingResult {
                host,
                host_labeling: Labeling::new(labels),
                injection: (0..p).collect(),
                induced: true,
            };
            r.verify(g, LabelingKind::Graceful)?;
            hosts.push((canonical_key(&r.host)?, r));
        }
        hosts.sort_by(|a, b| (a.0, &a.1.host_labeling).cmp(&(b.0, &b.1.host_labeling)));
        let hosts: Vec<EmbeddingResult> = hosts.into_iter().map(|(_, r)| r).collect();
        return Ok(OptimalEmbedding {
            order: p + k,
            all_connected: hosts.iter().all(|r| r.host.is_connected()),
            hosts,
        });
    }
    if max_added >= prof.node_gaps.len() {
        Err(Error::Infeasible("no host extends this labeling".into()))
    } else {
        Err(Error::BudgetExceeded)
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

struct HostSearch<'a> {
    p: usize,
    labels: &'a [usize],
    edges: Vec<(usize, usize)>,
    missing: &'a [usize],
    out: Vec<Vec<(usize, usize)>>,
}

impl HostSearch<'_> {
    fn rec(&mut self, i: usize) {
        let Some(&e) = self.missing.get(i) else {
            self.out.push(self.edges.clone());
            return;
        };
        let n = self.labels.len();
        for b in self.p..n {
            for a in 0..b {
                if self.labels[a].abs_diff(self.labels[b]) == e && !self.edges.contains(&(a, b)) {
                    self.edges.push((a, b));
                    self.rec(i + 1);
                    self.edges.pop();
                }
            }
        }
    }
}

/// Merges every host component without guest nodes into the rest: labels
/// are shifted down to start at 0 and nodes with equal labels identified.
pub fn merge_components(guest: &Graph, r: &EmbeddingResult) -> Result<EmbeddingResult> {
    let host = &r.host;
    let phi = &r.host_labeling;
    let guest_nodes: u64 = r.injection.iter().fold(0, |m, &h| m | 1 << h);
    let mut keep: Vec<usize> = Vec::new();
    let mut others: Vec<Vec<usize>> = Vec::new();
    for comp in host.components() {
        if comp.iter().any(|&v| guest_nodes >> v & 1 == 1) {
            keep.extend(comp);
        } else {
            others.push(comp);
        }
    }
    keep.sort_unstable();
    let mut index = vec![usize::MAX; host.order()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mut labels: Vec<usize> = keep.iter().map(|&v| phi.get(v)).collect();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(a, b) in host.edges() {
        if index[a] != usize::MAX {
            edges.insert((index[a], index[b]));
        }
    }
    for comp in others {
        let low = comp.iter().map(|&v| phi.get(v)).min().expect("components are non-empty");
        let mut at: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        for &v in &comp {
            let l = phi.get(v) - low;
            index[v] = *at.entry(l).or_insert_with(|| {
                labels.push(l);
                labels.len() - 1
            });
        }
        for &(a, b) in host.edges() {
            if comp.contains(&a) {
                let (x, y) = (index[a].min(index[b]), index[a].max(index[b]));
                if !edges.insert((x, y)) {
                    return Err(Error::Infeasible(format!("merge duplicates the edge ({x}, {y})")));
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let merged = Graph::new(labels.len(), &edges)?;
    let labeling = Labeling::new(labels);
    if !labeling::is_graceful(&merged, &labeling) {
        return Err(Error::Infeasible("merged labeling is not graceful".into()));
    }
    let injection: Vec<usize> = r.injection.iter().map(|&h| index[h]).collect();
    finish(guest, merged, labeling.into_values(), injection)
}

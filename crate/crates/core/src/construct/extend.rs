//! Extensions of a gracefully labeled graph that keep the labeling graceful.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::checked;
use crate::classify::{cycles, is_tree};
use crate::error::{precondition, Error, Result};
use crate::families::{coalesce, coalesce_map};
use crate::graph::Graph;
use crate::labeling::{self, alpha_boundary, Labeling, LabelingKind};

/// A labeled component. Nodes whose label already occurs in the base are
/// identified with the base node carrying it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub graph: Graph,
    pub labeling: Labeling,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AttachmentSpec {
    /// `(node, c)`: raise the label of `node` by `c`.
    pub increments: Vec<(usize, usize)>,
    pub components: Vec<Attachment>,
    /// Base non-edges to insert.
    pub insertions: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendBounds {
    pub max_new_nodes: usize,
    pub max_outputs: usize,
}

/// Largest number of new nodes the extension search may add.
pub const NEW_NODE_CAP: usize = 8;

impl Default for ExtendBounds {
    fn default() -> Self {
        ExtendBounds {
            max_new_nodes: NEW_NODE_CAP,
            max_outputs: 1000,
        }
    }
}

/// Largest number of outputs an R-set product may produce.
const PRODUCT_CAP: usize = 100_000;

fn require_graceful(g: &Graph, phi: &Labeling) -> Result<()> {
    if !labeling::check(g, phi, LabelingKind::Graceful)?.ok {
        return precondition("input labeling is not graceful");
    }
    Ok(())
}

fn require_alpha(g: &Graph, phi: &Labeling) -> Result<usize> {
    if !labeling::check(g, phi, LabelingKind::Alpha)?.ok {
        return precondition("input labeling is not an alpha labeling");
    }
    alpha_boundary(g, phi).map_or_else(|| precondition("graph has no edges"), Ok)
}

fn apply_increments(g: &Graph, phi: &Labeling, increments: &[(usize, usize)]) -> Result<Labeling> {
    let mut values = phi.values().to_vec();
    for &(v, c) in increments {
        if v >= g.order() {
            return Err(Error::NodeOutOfRange {
                node: v,
                order: g.order(),
            });
        }
        values[v] += c;
    }
    let out = Labeling::new(values);
    let distinct: BTreeSet<usize> = out.values().iter().copied().collect();
    if distinct.len() != out.len() {
        return Err(Error::Infeasible("increments collide two node labels".into()));
    }
    let mut edges = out.edge_labels(g);
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Infeasible(format!("increments repeat edge label {}", w[0])));
    }
    Ok(out)
}

fn realization_error(labels: &[usize], edges: &[(usize, usize)]) -> Option<Error> {
    let top = labels.iter().copied().max().unwrap_or(0);
    let mut count = vec![0usize; top + 1];
    for &(u, v) in edges {
        count[labels[u].abs_diff(labels[v])] += 1;
    }
    (1..=top).find_map(|e| match count[e] {
        1 => None,
        0 => Some(Error::Infeasible(format!("edge label {e} is not realized"))),
        k => Some(Error::Infeasible(format!("edge label {e} is realized {k} times"))),
    })
}

/// Applies a manual attachment spec to `(g, phi)`.
pub fn general_extend(g: &Graph, phi: &Labeling, spec: &AttachmentSpec) -> Result<(Graph, Labeling)> {
    require_graceful(g, phi)?;
    let phi = apply_increments(g, phi, &spec.increments)?;
    let base: BTreeSet<usize> = phi.values().iter().copied().collect();
    let mut labels = phi.values().to_vec();
    let mut at: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(v, &l)| (l, v)).collect();
    let mut edges = g.edges().to_vec();
    for &(a, b) in &spec.insertions {
        if a >= g.order() || b >= g.order() {
            return Err(Error::NodeOutOfRange {
                node: a.max(b),
                order: g.order(),
            });
        }
        if a == b || g.has_edge(a, b) {
            return precondition(format!("({a}, {b}) is not a base non-edge"));
        }
        edges.push((a, b));
    }
    let mut seen: Vec<BTreeSet<usize>> = Vec::new();
    for (i, comp) in spec.components.iter().enumerate() {
        comp.labeling.ensure_total(&comp.graph)?;
        let own: BTreeSet<usize> = comp.labeling.values().iter().copied().collect();
        if own.len() != comp.labeling.len() {
            return precondition(format!("component {i} repeats a node label"));
        }
        if own.intersection(&base).count() != 1 {
            return precondition(format!("component {i} must share exactly one label with the base"));
        }
        if seen.iter().any(|s| s.intersection(&own).count() > 1) {
            return precondition(format!("component {i} shares more than one label with another component"));
        }
        let map: Vec<usize> = comp
            .labeling
            .values()
            .iter()
            .map(|&l| {
                *at.entry(l).or_insert_with(|| {
                    labels.push(l);
                    labels.len() - 1
                })
            })
            .collect();
        edges.extend(comp.graph.edges().iter().map(|&(u, v)| (map[u], map[v])));
        seen.push(own);
    }
    let mut pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    pairs.sort_unstable();
    if pairs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Infeasible("an edge is inserted twice".into()));
    }
    if let Some(e) = realization_error(&labels, &edges) {
        return Err(e);
    }
    checked(labels.len(), &edges, labels, LabelingKind::Graceful)
}

/// Bounded search for extensions after `increments`: each missing edge label
/// is closed by a base non-edge or by a new pendant node, so attached
/// components are trees.
pub fn general_extend_search(
    g: &Graph,
    phi: &Labeling,
    increments: &[(usize, usize)],
    bounds: ExtendBounds,
) -> Result<Vec<(Graph, Labeling)>> {
    require_graceful(g, phi)?;
    if bounds.max_new_nodes > NEW_NODE_CAP {
        return Err(Error::CapExceeded {
            what: "new nodes in extension search",
            cap: NEW_NODE_CAP,
            got: bounds.max_new_nodes,
        });
    }
    let phi = apply_increments(g, phi, increments)?;
    let top = phi.max_label();
    if top > 127 {
        return Err(Error::CapExceeded {
            what: "extension label range",
            cap: 127,
            got: top,
        });
    }
    let mut used_edges = 0u128;
    for e in phi.edge_labels(g) {
        used_edges |= 1 << e;
    }
    let missing: Vec<usize> = (1..=top).rev().filter(|&e| used_edges >> e & 1 == 0).collect();
    let mut s = ExtendSearch {
        g,
        top,
        labels: phi.values().to_vec(),
        used_nodes: phi.values().iter().fold(0u128, |m, &l| m | 1 << l),
        edges: g.edges().to_vec(),
        missing,
        bounds,
        found: BTreeSet::new(),
        out: Vec::new(),
    };
    s.rec(0)?;
    Ok(s.out)
}

struct ExtendSearch<'a> {
    g: &'a Graph,
    top: usize,
    labels: Vec<usize>,
    used_nodes: u128,
    edges: Vec<(usize, usize)>,
    missing: Vec<usize>,
    bounds: ExtendBounds,
    found: BTreeSet<Vec<(usize, usize)>>,
    out: Vec<(Graph, Labeling)>,
}

impl ExtendSearch<'_> {
    fn full(&self) -> bool {
        self.out.len() >= self.bounds.max_outputs
    }

    fn rec(&mut self, i: usize) -> Result<()> {
        if self.full() {
            return Ok(());
        }
        let Some(&e) = self.missing.get(i) else {
            let mut key: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (self.labels[u], self.labels[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            key.sort_unstable();
            if self.found.insert(key) {
                let r = checked(self.labels.len(), &self.edges, self.labels.clone(), LabelingKind::Graceful)?;
                self.out.push(r);
            }
            return Ok(());
        };
        let p = self.g.order();
        for a in 0..p {
            for b in a + 1..p {
                if self.labels[a].abs_diff(self.labels[b]) == e && !self.edges.contains(&(a, b)) {
                    self.edges.push((a, b));
                    self.rec(i + 1)?;
                    self.edges.pop();
                }
            }
        }
        if self.labels.len() - p < self.bounds.max_new_nodes {
            for x in 0..self.labels.len() {
                let lx = self.labels[x];
                for l in [lx.checked_sub(e), Some(lx + e)].into_iter().flatten() {
                    if l > self.top || self.used_nodes >> l & 1 == 1 {
                        continue;
                    }
                    let w = self.labels.len();
                    self.labels.push(l);
                    self.used_nodes |= 1 << l;
                    self.edges.push((x, w));
                    self.rec(i + 1)?;
                    self.edges.pop();
                    self.used_nodes &= !(1 << l);
                    self.labels.pop();
                }
            }
        }
        Ok(())
    }
}

/// How the gap left by raising the upper side is closed.
#[derive(Clone, Copy, Debug)]
pub enum AlphaClose<'a> {
    /// Edges from the 0-node to the nodes labeled `1..=c`.
    Edges,
    /// Coalesce a gracefully labeled tree of order `c + 1`, shifted so it
    /// shares exactly one label with the base.
    Tree { tree: &'a Graph, labeling: &'a Labeling },
}

/// Raises the labels above the alpha boundary by `c`, vacating edge labels
/// `1..=c`, and closes the gap.
pub fn shifted_alpha_extend(
    g: &Graph,
    phi: &Labeling,
    c: usize,
    close: AlphaClose<'_>,
) -> Result<Vec<(Graph, Labeling)>> {
    let lambda = require_alpha(g, phi)?;
    if c == 0 {
        return Ok(vec![(g.clone(), phi.clone())]);
    }
    let p = g.order();
    let q = g.size();
    let upper: Vec<usize> = (0..p).filter(|&v| phi.get(v) > lambda).collect();
    let shifted = labeling::shift_subset(phi, &upper, c);
    let lower = p - upper.len();
    match close {
        AlphaClose::Edges => {
            if c >= lower {
                return precondition(format!("gap {c} must be below the lower side size {lower}"));
            }
            let zero = shifted.node_with(0).expect("alpha labeling uses 0");
            let mut edges = g.edges().to_vec();
            for i in 1..=c {
                match shifted.node_with(i) {
                    Some(v) if i <= lambda => edges.push((zero, v)),
                    _ => return Err(Error::Infeasible(format!("no lower node labeled {i}"))),
                }
            }
            Ok(vec![checked(p, &edges, shifted.into_values(), LabelingKind::Graceful)?])
        }
        AlphaClose::Tree { tree, labeling: mu } => {
            if tree.order() != c + 1 || !is_tree(tree) {
                return precondition(format!("attachment must be a tree of order {}", c + 1));
            }
            if !labeling::holds(tree, mu, LabelingKind::Graceful) {
                return precondition("attachment tree is not graceful");
            }
            let base: BTreeSet<usize> = shifted.values().iter().copied().collect();
            let mut out = Vec::new();
            for s in 0..=q {
                let shared: Vec<usize> = (0..tree.order()).filter(|&w| base.contains(&(mu.get(w) + s))).collect();
                let &[w] = shared.as_slice() else { continue };
                let u = shifted.node_with(mu.get(w) + s).expect("shared label is a base label");
                let h = coalesce(g, u, tree, w)?;
                let map = coalesce_map(p, u, tree.order(), w);
                let mut labels = shifted.values().to_vec();
                labels.resize(h.order(), 0);
                for x in 0..tree.order() {
                    labels[map[x]] = mu.get(x) + s;
                }
                out.push(checked(h.order(), h.edges(), labels, LabelingKind::Graceful)?);
            }
            if out.is_empty() {
                return Err(Error::Infeasible("no shift shares exactly one label".into()));
            }
            Ok(out)
        }
    }
}

/// A same-order graph built by raising the top label and closing one gap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnicyclicOutput {
    #[serde(with = "crate::graph6::as_string")]
    pub graph: Graph,
    pub labeling: Labeling,
    /// Nodes joined by the closing edge.
    pub pair: (usize, usize),
    pub cycle_len: usize,
}

fn tree_top_pair(t: &Graph, phi: &Labeling) -> Result<(usize, usize)> {
    if !is_tree(t) || t.order() < 2 {
        return precondition("input must be a tree with at least one edge");
    }
    require_graceful(t, phi)?;
    let p = t.order();
    let u = phi.node_with(0).expect("graceful tree uses 0");
    let v = phi.node_with(p - 1).expect("graceful tree uses p-1");
    Ok((u, v))
}

/// Closes each vacated label by a non-adjacent pair; every combination of
/// choices is returned together with the chosen pairs.
fn complete_from_r(g: &Graph, phi: &Labeling) -> Result<Vec<(Graph, Labeling, Vec<(usize, usize)>)>> {
    let prof = labeling::profile(g, phi)?;
    if let Some(&e) = prof.repeated_edges.first() {
        return Err(Error::Infeasible(format!("edge label {e} repeats after the bump")));
    }
    let mut choices: Vec<&[(usize, usize)]> = Vec::new();
    for &e in &prof.edge_gaps {
        let r = prof.r(e);
        if r.is_empty() {
            return Err(Error::Infeasible(format!("no non-adjacent pair realizes label {e}")));
        }
        choices.push(r);
    }
    let total = choices.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.len()));
    match total {
        Some(t) if t <= PRODUCT_CAP => {}
        _ => {
            return Err(Error::CapExceeded {
                what: "completion combinations",
                cap: PRODUCT_CAP,
                got: total.unwrap_or(usize::MAX),
            })
        }
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let chosen: Vec<(usize, usize)> = pick.iter().zip(&choices).map(|(&i, r)| r[i]).collect();
        let mut edges = g.edges().to_vec();
        edges.extend(&chosen);
        let (h, l) = checked(g.order(), &edges, phi.values().to_vec(), LabelingKind::Graceful)?;
        out.push((h, l, chosen));
        let mut k = 0;
        loop {
            if k == pick.len() {
                return Ok(out);
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Raises the label of the `p − 1` node of a graceful tree by `c` and
/// completes the vacated edge labels in every possible way.
pub fn bump_top_and_complete(t: &Graph, phi: &Labeling, c: usize) -> Result<Vec<(Graph, Labeling)>> {
    let (_, v) = tree_top_pair(t, phi)?;
    let p = t.order();
    if c == 0 {
        return Ok(vec![(t.clone(), phi.clone())]);
    }
    if c + 2 > p {
        return precondition(format!("bump {c} exceeds p - 2 = {}", p.saturating_sub(2)));
    }
    let bumped = labeling::shift_subset(phi, &[v], c);
    Ok(complete_from_r(t, &bumped)?
        .into_iter()
        .map(|(h, l, _)| (h, l))
        .collect())
}

fn unicyclic(h: Graph, l: Labeling, pair: (usize, usize)) -> UnicyclicOutput {
    let cs = cycles(&h);
    debug_assert_eq!(cs.len(), 1);
    UnicyclicOutput {
        cycle_len: cs[0].len(),
        graph: h,
        labeling: l,
        pair,
    }
}

/// Bumps the top label by one and adds every edge realizing the vacated
/// label.
pub fn unicyclic_from_tree(t: &Graph, phi: &Labeling) -> Result<Vec<UnicyclicOutput>> {
    let (u, v) = tree_top_pair(t, phi)?;
    if t.neighbors(v).all(|x| x == u) {
        return precondition("the top node has no neighbour besides the 0-node");
    }
    let bumped = labeling::shift_subset(phi, &[v], 1);
    Ok(complete_from_r(t, &bumped)?
        .into_iter()
        .map(|(h, l, pairs)| unicyclic(h, l, pairs[0]))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AlphaShift {
    /// Raise every upper label by one; label 1 is vacated.
    ShiftAllB,
    /// Raise every upper label except the largest.
    ShiftBExceptMax,
}

/// Shifts part of the upper side of an alpha-labeled tree and closes the
/// single vacated label with the first non-adjacent pair.
pub fn alpha_unicyclic(t: &Graph, phi: &Labeling, shift: AlphaShift) -> Result<UnicyclicOutput> {
    if !is_tree(t) {
        return precondition("input must be a tree");
    }
    let lambda = require_alpha(t, phi)?;
    let top = phi.max_label();
    let upper: Vec<usize> = (0..t.order())
        .filter(|&v| phi.get(v) > lambda && (shift == AlphaShift::ShiftAllB || phi.get(v) != top))
        .collect();
    let shifted = labeling::shift_subset(phi, &upper, 1);
    let distinct: BTreeSet<usize> = shifted.values().iter().copied().collect();
    if distinct.len() != t.order() {
        return Err(Error::Infeasible("shift collides two node labels".into()));
    }
    let prof = labeling::profile(t, &shifted)?;
    if !prof.repeated_edges.is_empty() || prof.edge_gaps.len() != 1 || prof.q0 != t.order() {
        return Err(Error::Infeasible(format!(
            "shift must vacate exactly one edge label, vacated {:?}",
            prof.edge_gaps
        )));
    }
    let gap = prof.edge_gaps[0];
    let &(a, b) = prof
        .r(gap)
        .iter()
        .min_by_key(|&&(a, b)| (shifted.get(a).min(shifted.get(b)), a, b))
        .ok_or_else(|| Error::Infeasible(format!("no closing pair for label {gap}")))?;
    let (h, l) = checked(t.order(), &[t.edges(), &[(a, b)]].concat(), shifted.into_values(), LabelingKind::Graceful)?;
    Ok(unicyclic(h, l, (a, b)))
}

fn lower_side(g: &Graph, phi: &Labeling) -> Result<(usize, Vec<usize>)> {
    let lambda = require_alpha(g, phi)?;
    let lower: Vec<usize> = (0..g.order()).filter(|&v| phi.get(v) <= lambda).collect();
    if lower.len() != lambda + 1 {
        return precondition("lower side labels must be exactly 0..|A|-1");
    }
    Ok((lambda, lower))
}

/// Adds `copies` copies of the upper side, copy `i` labeled with the upper
/// labels raised by `i * q`.
pub fn replicate_partition(t: &Graph, phi: &Labeling, copies: usize) -> Result<(Graph, Labeling)> {
    let (lambda, _) = lower_side(t, phi)?;
    let p = t.order();
    let q = t.size();
    let upper: Vec<usize> = (0..p).filter(|&v| phi.get(v) > lambda).collect();
    let mut labels = phi.values().to_vec();
    let mut edges = t.edges().to_vec();
    for i in 1..=copies {
        for &b in &upper {
            let w = labels.len();
            labels.push(phi.get(b) + i * q);
            edges.extend(t.neighbors(b).map(|a| (a, w)));
        }
    }
    checked(labels.len(), &edges, labels, LabelingKind::Graceful)
}

/// Identifies the lower sides of two alpha-labeled graphs by label; the
/// upper labels of the second are raised by the size of the first.
pub fn glue_alpha(g: &Graph, phi: &Labeling, h: &Graph, psi: &Labeling) -> Result<(Graph, Labeling)> {
    let (lg, _) = lower_side(g, phi)?;
    let (lh, _) = lower_side(h, psi)?;
    if lg != lh {
        return precondition(format!("lower label sets differ: 0..={lg} vs 0..={lh}"));
    }
    let q = g.size();
    let mut labels = phi.values().to_vec();
    let mut edges = g.edges().to_vec();
    let mut map = vec![0usize; h.order()];
    for x in 0..h.order() {
        map[x] = if psi.get(x) <= lh {
            phi.node_with(psi.get(x)).expect("lower labels match")
        } else {
            labels.push(psi.get(x) + q);
            labels.len() - 1
        };
    }
    edges.extend(h.edges().iter().map(|&(a, b)| (map[a], map[b])));
    checked(labels.len(), &edges, labels, LabelingKind::Alpha)
}

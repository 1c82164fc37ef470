//! Generators of gracefully labeled trees: one pair per difference, and
//! closure under difference-preserving edge exchanges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, CanonicalKey};
use crate::enumerate::free_trees;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;
use crate::search::{attract, AttractOutcome, Element, SearchBudget};

/// Largest order for selection enumeration and censuses.
pub const SELECTION_CAP: usize = 9;
/// Largest order for exchange closure.
pub const EXCHANGE_CAP: usize = 8;

fn cap(what: &'static str, limit: usize, p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidOrder { got: 0, max: limit });
    }
    if p > limit {
        return Err(Error::CapExceeded { what, cap: limit, got: p });
    }
    Ok(())
}

/// A graph whose nodes are the labels `0..=n` themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledTree {
    pub n: usize,
    /// Sorted pairs `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        LabeledTree { n, edges }
    }

    pub fn graph(&self) -> Graph {
        Graph::new(self.n + 1, &self.edges).expect("label pairs form a simple graph")
    }

    /// Node `v` carries label `v`.
    pub fn labeling(&self) -> Labeling {
        Labeling::new((0..=self.n).collect())
    }

    /// Image under `x -> n - x`.
    pub fn reflected(&self) -> LabeledTree {
        LabeledTree::new(self.n, self.edges.iter().map(|&(a, b)| (self.n - b, self.n - a)).collect())
    }
}

/// One pair `(i, i + d)` per difference `d = 1..=n`; stored as the lower
/// endpoints indexed by `d - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Selection {
    pub low: Vec<usize>,
}

impl Selection {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.low.iter().enumerate().map(|(k, &i)| (i, i + k + 1)).collect()
    }

    pub fn tree(&self) -> LabeledTree {
        LabeledTree::new(self.low.len(), self.pairs())
    }
}

impl Serialize for Selection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Selection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(usize, usize)> = Vec::deserialize(d)?;
        let mut low = Vec::with_capacity(pairs.len());
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if b < a || b - a != k + 1 {
                return Err(serde::de::Error::custom(format!("pair {k} does not have difference {}", k + 1)));
            }
            low.push(a);
        }
        Ok(Selection { low })
    }
}

fn acyclic(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Every selection in lexicographic order of the lower endpoints, with a
/// tree flag. The pair for the largest difference is forced to `(0, n)`.
pub fn diff_rep_enumerate(p: usize) -> Result<Vec<(Selection, bool)>> {
    cap("selection enumeration order", SELECTION_CAP, p)?;
    let n = p - 1;
    let mut out = Vec::new();
    let mut low = vec![0usize; n];
    loop {
        let sel = Selection { low: low.clone() };
        let tree = acyclic(n, &sel.pairs());
        out.push((sel, tree));
        // odometer over d = n-1 .. 1, the last position varying fastest
        let mut k = n;
        loop {
            if k <= 1 {
                return Ok(out);
            }
            k -= 1;
            let d = k;
            if low[d - 1] < n - d {
                low[d - 1] += 1;
                for (j, x) in low.iter_mut().enumerate().skip(d) {
                    if j + 1 < n {
                        *x = 0;
                    }
                }
                break;
            }
        }
    }
}

/// Labeled trees reachable from the star centred at 0 by exchanging an edge
/// for a non-edge of the same difference while staying a tree.
pub fn exchange_closure(p: usize) -> Result<BTreeSet<LabeledTree>> {
    cap("exchange closure order", EXCHANGE_CAP, p)?;
    let n = p - 1;
    let start = LabeledTree::new(n, (1..=n).map(|d| (0, d)).collect());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for (idx, &(i, j)) in t.edges.iter().enumerate() {
            let d = j - i;
            for k in 0..=n - d {
                let incoming = (k, k + d);
                if incoming == (i, j) {
                    continue;
                }
                let mut edges = t.edges.clone();
                edges[idx] = incoming;
                if !acyclic(n, &edges) {
                    continue;
                }
                let next = LabeledTree::new(n, edges);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionCount {
    pub selections: usize,
    pub tree_selections: usize,
    /// Whether every selection is a tree.
    pub agree: bool,
}

pub fn labeling_count_audit(p: usize) -> Result<SelectionCount> {
    let all = diff_rep_enumerate(p)?;
    let trees = all.iter().filter(|(_, t)| *t).count();
    Ok(SelectionCount {
        selections: all.len(),
        tree_selections: trees,
        agree: all.len() == trees,
    })
}

fn tree_selections(p: usize) -> Result<Vec<LabeledTree>> {
    Ok(diff_rep_enumerate(p)?
        .into_iter()
        .filter(|(_, t)| *t)
        .map(|(s, _)| s.tree())
        .collect())
}

fn all_tree_keys(p: usize) -> Result<BTreeSet<CanonicalKey>> {
    free_trees(p).iter().map(canonical_key).collect()
}

fn class_keys<'a>(trees: impl IntoParallelIterator<Item = &'a LabeledTree>) -> Result<BTreeSet<CanonicalKey>> {
    trees.into_par_iter().map(|t| canonical_key(&t.graph())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCensus {
    pub order: usize,
    pub covered: usize,
    pub total: usize,
    pub uncovered: Vec<CanonicalKey>,
}

/// Projects the tree selections to isomorphism classes and compares with
/// the full list of trees of order `p`.
pub fn graceful_tree_census(p: usize) -> Result<TreeCensus> {
    let trees = tree_selections(p)?;
    let covered = class_keys(&trees)?;
    let all = all_tree_keys(p)?;
    Ok(TreeCensus {
        order: p,
        covered: covered.intersection(&all).count(),
        total: all.len(),
        uncovered: all.difference(&covered).copied().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub order: usize,
    pub exchange_count: usize,
    pub selection_count: usize,
    pub equal: bool,
    /// Tree selections the exchange process never reaches.
    pub unreached: Vec<LabeledTree>,
    /// Exchange outputs that are not tree selections (always empty).
    pub extra: Vec<LabeledTree>,
    pub classes_covered: usize,
    pub classes_total: usize,
}

pub fn coverage_audit(p: usize) -> Result<CoverageReport> {
    let reached = exchange_closure(p)?;
    let selected: BTreeSet<LabeledTree> = tree_selections(p)?.into_iter().collect();
    let classes = class_keys(&reached)?;
    let all = all_tree_keys(p)?;
    Ok(CoverageReport {
        order: p,
        exchange_count: reached.len(),
        selection_count: selected.len(),
        equal: reached == selected,
        unreached: selected.difference(&reached).cloned().collect(),
        extra: reached.difference(&selected).cloned().collect(),
        classes_covered: classes.intersection(&all).count(),
        classes_total: all.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeAttract {
    pub key: CanonicalKey,
    /// 0-attractiveness of each node of the key's representative.
    pub attractive: Vec<bool>,
    pub attractive_endnode: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractSurvey {
    pub order: usize,
    pub trees: Vec<TreeAttract>,
    pub has_repelling_node: bool,
    pub all_have_attractive_endnode: bool,
}

/// Marks which nodes of every tree of order `p` can carry label 0.
pub fn tree_attract_survey(p: usize, budget: SearchBudget) -> Result<AttractSurvey> {
    cap("attract survey order", SELECTION_CAP, p)?;
    let mut keyed: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    for t in free_trees(p) {
        keyed.insert(canonical_key(&t)?, t);
    }
    let trees: Vec<TreeAttract> = keyed
        .par_iter()
        .map(|(key, _)| {
            let g = key.representative();
            let mut attractive = Vec::with_capacity(p);
            for v in 0..p {
                match attract(&g, Element::Node(v), 0, budget)? {
                    AttractOutcome::Attractive { .. } => attractive.push(true),
                    AttractOutcome::BudgetExceeded => return Err(Error::BudgetExceeded),
                    _ => attractive.push(false),
                }
            }
            let attractive_endnode = (0..p).any(|v| g.degree(v) <= 1 && attractive[v]);
            Ok(TreeAttract {
                key: *key,
                attractive,
                attractive_endnode,
            })
        })
        .collect::<Result<_>>()?;
    Ok(AttractSurvey {
        order: p,
        has_repelling_node: trees.iter().any(|t| t.attractive.contains(&false)),
        all_have_attractive_endnode: trees.iter().all(|t| t.attractive_endnode),
        trees,
    })
}

/// Smallest order in `2..=max_p` with a tree having a 0-repelling node,
/// and whether every tree surveyed has a 0-attractive endnode.
pub fn repelling_threshold(max_p: usize, budget: SearchBudget) -> Result<(Option<usize>, bool)> {
    let mut first = None;
    let mut endnodes = true;
    for p in 2..=max_p {
        let s = tree_attract_survey(p, budget)?;
        if s.has_repelling_node && first.is_none() {
            first = Some(p);
        }
        endnodes &= s.all_have_attractive_endnode;
    }
    Ok((first, endnodes))
}

//! Isomorph-free enumeration of small graphs, free trees and unicyclic graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonical_key, CanonicalKey};
use crate::classify::is_eulerian;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ALL_GRAPHS_CAP: usize = 7;
pub const ALL_GRAPHS_BOUNDED_CAP: usize = 8;
pub const TREE_CAP: usize = 15;
pub const UNICYCLIC_CAP: usize = 9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Universe {
    AllGraphs,
    #[default]
    ConnectedGraphs,
    Trees,
    Unicyclic,
    EulerianFiltered,
}

impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "allGraphs" | "all" => Universe::AllGraphs,
            "connectedGraphs" | "connected" => Universe::ConnectedGraphs,
            "trees" => Universe::Trees,
            "unicyclic" => Universe::Unicyclic,
            "eulerianFiltered" | "eulerian" => Universe::EulerianFiltered,
            other => return Err(Error::Parse(format!("unknown universe `{other}`"))),
        })
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Universe::AllGraphs => "allGraphs",
            Universe::ConnectedGraphs => "connectedGraphs",
            Universe::Trees => "trees",
            Universe::Unicyclic => "unicyclic",
            Universe::EulerianFiltered => "eulerianFiltered",
        })
    }
}

/// Optional size window applied to the enumerated classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub min_edges: Option<usize>,
    pub max_edges: Option<usize>,
}

impl Bounds {
    pub fn max_edges(max: usize) -> Self {
        Bounds {
            min_edges: None,
            max_edges: Some(max),
        }
    }

    fn admits(&self, q: usize) -> bool {
        self.min_edges.is_none_or(|m| q >= m) && self.max_edges.is_none_or(|m| q <= m)
    }
}

/// One canonical representative per isomorphism class, sorted by key.
pub fn enumerate(kind: Universe, order: usize, bounds: Bounds) -> Result<Vec<Graph>> {
    Ok(enumerate_keyed(kind, order, bounds)?
        .into_iter()
        .map(|(_, g)| g)
        .collect())
}

pub fn enumerate_keyed(
    kind: Universe,
    order: usize,
    bounds: Bounds,
) -> Result<Vec<(CanonicalKey, Graph)>> {
    if order == 0 {
        return Err(Error::InvalidOrder {
            got: 0,
            max: crate::graph::MAX_ORDER,
        });
    }
    let out = match kind {
        Universe::AllGraphs | Universe::ConnectedGraphs | Universe::EulerianFiltered => {
            let cap = if bounds.max_edges.is_some() {
                ALL_GRAPHS_BOUNDED_CAP
            } else {
                ALL_GRAPHS_CAP
            };
            check_cap("graph enumeration order", cap, order)?;
            let all = augment_all(order, bounds.max_edges)?;
            all.into_iter()
                .filter(|(_, g)| match kind {
                    Universe::AllGraphs => true,
                    Universe::ConnectedGraphs => g.is_connected(),
                    _ => is_eulerian(g),
                })
                .collect()
        }
        Universe::Trees => {
            check_cap("tree enumeration order", TREE_CAP, order)?;
            let mut v: Vec<_> = free_trees(order)
                .into_iter()
                .map(|t| keyed(&t))
                .collect::<Result<_>>()?;
            v.sort_by_key(|a| a.0);
            v
        }
        Universe::Unicyclic => {
            check_cap("unicyclic enumeration order", UNICYCLIC_CAP, order)?;
            unicyclic(order)?
        }
    };
    Ok(out.into_iter().filter(|(_, g)| bounds.admits(g.size())).collect())
}

fn check_cap(what: &'static str, cap: usize, got: usize) -> Result<()> {
    if got > cap {
        Err(Error::CapExceeded { what, cap, got })
    } else {
        Ok(())
    }
}

fn keyed(g: &Graph) -> Result<(CanonicalKey, Graph)> {
    let key = canonical_key(g)?;
    Ok((key, key.representative()))
}

/// Canonical augmentation by single edges, level by level.
///
/// A child `P + e` is kept when its canonical edge (the edge whose canonical
/// endpoint positions `(max, min)` are lexicographically largest) deletes back
/// to the class of `P`. Siblings with equal keys are merged.
fn augment_all(order: usize, max_edges: Option<usize>) -> Result<Vec<(CanonicalKey, Graph)>> {
    let top = order * (order - 1) / 2;
    let top = max_edges.map_or(top, |m| m.min(top));
    let mut level = vec![keyed(&Graph::empty(order)?)?];
    let mut out = level.clone();
    for _ in 0..top {
        let mut next: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
        for (parent_key, parent) in &level {
            for u in 0..order {
                for v in u + 1..order {
                    if parent.has_edge(u, v) {
                        continue;
                    }
                    let child = parent.with_edge(u, v)?;
                    let (child_key, pos) = canonical_form(&child)?;
                    if next.contains_key(&child_key) {
                        continue;
                    }
                    let &(a, b) = child
                        .edges()
                        .iter()
                        .max_by_key(|&&(a, b)| (pos[a].max(pos[b]), pos[a].min(pos[b])))
                        .expect("child has an edge");
                    if canonical_key(&child.without_edge(a, b))? == *parent_key {
                        next.insert(child_key, child_key.representative());
                    }
                }
            }
        }
        level = next.into_iter().collect();
        out.extend(level.iter().cloned());
    }
    out.sort_by_key(|a| a.0);
    Ok(out)
}

/// Free trees from rooted level sequences (root level 0), keeping only
/// rootings at a centroid; for bicentroidal trees the rooting with the larger
/// canonical sequence is kept.
pub fn free_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1).expect("order 1")];
    }
    let mut out = Vec::new();
    let mut seq: Vec<usize> = (0..n).collect();
    loop {
        if let Some(t) = centroid_rooted(&seq) {
            out.push(t);
        }
        let Some(p) = (0..n).rev().find(|&i| seq[i] > 1) else {
            break;
        };
        let q = (0..p).rev().find(|&i| seq[i] == seq[p] - 1).expect("parent level exists");
        for i in p..n {
            seq[i] = seq[i - (p - q)];
        }
    }
    out
}

fn tree_from_levels(seq: &[usize]) -> (Graph, Vec<usize>) {
    let n = seq.len();
    let mut parent = vec![usize::MAX; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    for (i, &l) in seq.iter().enumerate() {
        stack.truncate(l);
        if let Some(&par) = stack.last() {
            parent[i] = par;
            edges.push((par, i));
        }
        stack.push(i);
    }
    (Graph::new(n, &edges).expect("level sequence tree"), parent)
}

fn centroid_rooted(seq: &[usize]) -> Option<Graph> {
    let n = seq.len();
    let (g, parent) = tree_from_levels(seq);
    let mut size = vec![1usize; n];
    for i in (1..n).rev() {
        size[parent[i]] += size[i];
    }
    let children: Vec<usize> = (1..n).filter(|&i| parent[i] == 0).collect();
    let heavy = children.iter().copied().max_by_key(|&c| size[c])?;
    if 2 * size[heavy] > n {
        return None;
    }
    if 2 * size[heavy] == n && rooted_code(&g, heavy) > rooted_code(&g, 0) {
        return None;
    }
    Some(g)
}

/// Canonical (lexicographically largest) level sequence of `g` rooted at `r`.
pub fn rooted_code(g: &Graph, r: usize) -> Vec<usize> {
    fn walk(g: &Graph, v: usize, from: usize, depth: usize) -> Vec<usize> {
        let mut subs: Vec<Vec<usize>> = g
            .neighbors(v)
            .filter(|&w| w != from)
            .map(|w| walk(g, w, v, depth + 1))
            .collect();
        subs.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = vec![depth];
        for s in subs {
            out.extend(s);
        }
        out
    }
    walk(g, r, usize::MAX, 0)
}

/// Independent tree enumerator: grow by one leaf, deduplicate by key.
pub fn trees_by_leaf_addition(n: usize) -> Result<Vec<Graph>> {
    let mut level: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    let k1 = Graph::empty(1)?;
    level.insert(canonical_key(&k1)?, k1);
    for m in 1..n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..m {
                let mut e = t.edges().to_vec();
                e.push((v, m));
                let g = Graph::new(m + 1, &e)?;
                let key = canonical_key(&g)?;
                next.entry(key).or_insert_with(|| key.representative());
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

fn unicyclic(n: usize) -> Result<Vec<(CanonicalKey, Graph)>> {
    let mut seen: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    if n < 3 {
        return Ok(Vec::new());
    }
    for t in free_trees(n) {
        for u in 0..n {
            for v in u + 1..n {
                if !t.has_edge(u, v) {
                    let g = t.with_edge(u, v)?;
                    let key = canonical_key(&g)?;
                    seen.entry(key).or_insert_with(|| key.representative());
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

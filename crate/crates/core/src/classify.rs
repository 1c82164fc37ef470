//! Structural classification and exact invariants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Largest order for which the cycle inventory is computed.
pub const CYCLE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClassRecord {
    pub connected: bool,
    pub tree: bool,
    pub unicyclic: bool,
    pub bipartite: bool,
    pub parts: Option<(Vec<usize>, Vec<usize>)>,
    pub eulerian: bool,
    /// Non-increasing.
    pub degree_sequence: Vec<usize>,
    pub q_mod4: usize,
    /// Sorted multiset of cycle lengths; `None` above [`CYCLE_CAP`].
    pub cycle_lengths: Option<Vec<usize>>,
}

pub fn classify(g: &Graph) -> GraphClassRecord {
    let connected = g.is_connected();
    let p = g.order();
    let q = g.size();
    let parts = bipartition(g);
    let mut degree_sequence = g.degrees();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    let cycle_lengths = (p <= CYCLE_CAP).then(|| {
        let mut l: Vec<usize> = cycles(g).iter().map(|c| c.nodes.len()).collect();
        l.sort_unstable();
        l
    });
    GraphClassRecord {
        connected,
        tree: connected && q + 1 == p,
        unicyclic: connected && q == p,
        bipartite: parts.is_some(),
        parts,
        eulerian: is_eulerian(g),
        degree_sequence,
        q_mod4: q % 4,
        cycle_lengths,
    }
}

pub fn is_eulerian(g: &Graph) -> bool {
    g.is_connected() && g.degrees().iter().all(|d| d % 2 == 0)
}

pub fn is_tree(g: &Graph) -> bool {
    g.size() + 1 == g.order() && g.is_connected()
}

/// Two-colouring by BFS; the side containing node 0 of each component first.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let p = g.order();
    let mut side = vec![u8::MAX; p];
    for s in 0..p {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return None;
                }
            }
        }
    }
    let a = (0..p).filter(|&v| side[v] == 0).collect();
    let b = (0..p).filter(|&v| side[v] == 1).collect();
    Some((a, b))
}

/// A simple cycle: nodes in traversal order, starting at its smallest node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub nodes: Vec<usize>,
    pub mask: u64,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Every simple cycle exactly once (DFS from each smallest node, one
/// orientation kept).
pub fn cycles(g: &Graph) -> Vec<Cycle> {
    fn dfs(g: &Graph, start: usize, path: &mut Vec<usize>, mask: u64, out: &mut Vec<Cycle>) {
        let u = *path.last().unwrap();
        for v in g.neighbors(u) {
            if v == start && path.len() >= 3 && path[1] < u {
                out.push(Cycle {
                    nodes: path.clone(),
                    mask,
                });
            } else if v > start && mask >> v & 1 == 0 {
                path.push(v);
                dfs(g, start, path, mask | 1 << v, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.order() {
        let mut path = vec![s];
        dfs(g, s, &mut path, 1 << s, &mut out);
    }
    out
}

/// Cap on order for exact clique / independence computations.
pub const EXACT_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantNumbers {
    pub independence: usize,
    pub clique: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

pub fn invariant_numbers(g: &Graph) -> Result<InvariantNumbers> {
    if g.order() > EXACT_CAP {
        return Err(Error::CapExceeded {
            what: "exact invariant order",
            cap: EXACT_CAP,
            got: g.order(),
        });
    }
    Ok(InvariantNumbers {
        independence: independence_number(g),
        clique: clique_number(g),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
    })
}

pub fn clique_number(g: &Graph) -> usize {
    let adj: Vec<u64> = (0..g.order()).map(|u| g.neighbor_mask(u)).collect();
    max_clique(&adj, g.all_mask()).count_ones() as usize
}

pub fn independence_number(g: &Graph) -> usize {
    max_independent_set(g).len()
}

pub fn max_independent_set(g: &Graph) -> Vec<usize> {
    let all = g.all_mask();
    let adj: Vec<u64> = (0..g.order())
        .map(|u| !g.neighbor_mask(u) & all & !(1 << u))
        .collect();
    bits(max_clique(&adj, all)).collect()
}

/// Branch and bound with a greedy-colouring bound.
fn max_clique(adj: &[u64], candidates: u64) -> u64 {
    fn colour_bound(adj: &[u64], mut p: u64) -> usize {
        let mut colours = 0;
        while p != 0 {
            colours += 1;
            let mut q = p;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !(1 << v) & !adj[v];
                p &= !(1 << v);
            }
        }
        colours
    }
    fn expand(adj: &[u64], current: u64, mut p: u64, best: &mut u64) {
        if p == 0 {
            if current.count_ones() > best.count_ones() {
                *best = current;
            }
            return;
        }
        while p != 0 {
            let size = current.count_ones() as usize;
            if size + colour_bound(adj, p) <= best.count_ones() as usize {
                return;
            }
            let v = p.trailing_zeros() as usize;
            expand(adj, current | 1 << v, p & adj[v], best);
            p &= !(1 << v);
        }
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
    }
    let mut best = 0u64;
    expand(adj, 0, candidates, &mut best);
    best
}

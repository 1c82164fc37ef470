//! Simple undirected graphs on nodes `0..p`.
//!
//! Adjacency is kept as one `u64` bitmask per node, which caps the order at
//! [`MAX_ORDER`]. Every exact procedure in this crate works far below that.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

/// A finite simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    /// Sorted, each pair stored as `(min, max)`.
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl Graph {
    /// Validates and builds a graph. Loops, duplicates and out-of-range
    /// endpoints are rejected.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidOrder {
                got: order,
                max: MAX_ORDER,
            });
        }
        let mut adj = vec![0u64; order];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::NodeOutOfRange { node: w, order });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Graph {
            order,
            edges: list,
            adj,
        })
    }

    /// The edgeless graph of the given order.
    pub fn empty(order: usize) -> Result<Self> {
        Self::new(order, &[])
    }

    pub(crate) fn from_masks(adj: Vec<u64>) -> Self {
        let order = adj.len();
        let mut edges = Vec::new();
        for u in 0..order {
            let mut m = adj[u] >> u >> 1;
            let mut v = u + 1;
            while m != 0 {
                if m & 1 == 1 {
                    edges.push((u, v));
                }
                m >>= 1;
                v += 1;
            }
        }
        Graph { order, edges, adj }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbor_mask(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[u])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|u| self.degree(u)).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Mask with one bit per node.
    pub fn all_mask(&self) -> u64 {
        mask_of(self.order)
    }

    /// Index of `(u, v)` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut e = self.edges.clone();
        e.push((u, v));
        Graph::new(self.order, &e)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        Graph::from_masks(adj)
    }

    /// Graph with extra nodes appended (no new edges).
    pub fn with_extra_nodes(&self, extra: usize) -> Result<Graph> {
        Graph::new(self.order + extra, &self.edges)
    }

    /// Relabels node `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.order];
        for &(u, v) in &self.edges {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Graph::from_masks(adj)
    }

    /// Subgraph induced on `nodes`, renumbered in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut adj = vec![0u64; nodes.len()];
        for (i, &u) in nodes.iter().enumerate() {
            for (j, &v) in nodes.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= 1 << j;
                }
            }
        }
        Graph::from_masks(adj)
    }

    /// Subgraph formed by the listed edges and their endpoints, renumbered by
    /// increasing original index. Returns the graph and the node map.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> (Graph, Vec<usize>) {
        let mut mask = 0u64;
        for &i in edge_ids {
            let (u, v) = self.edges[i];
            mask |= 1 << u | 1 << v;
        }
        let nodes: Vec<usize> = bits(mask).collect();
        let mut index = vec![usize::MAX; self.order];
        for (i, &u) in nodes.iter().enumerate() {
            index[u] = i;
        }
        let pairs: Vec<_> = edge_ids
            .iter()
            .map(|&i| {
                let (u, v) = self.edges[i];
                (index[u], index[v])
            })
            .collect();
        let g = Graph::new(nodes.len().max(1), &pairs).expect("edge subgraph is simple");
        (g, nodes)
    }

    /// Nodes reachable from `start`, as a mask.
    pub fn component_mask(&self, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut left = self.all_mask();
        let mut out = Vec::new();
        while left != 0 {
            let s = left.trailing_zeros() as usize;
            let c = self.component_mask(s);
            out.push(bits(c).collect());
            left &= !c;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_mask(0) == self.all_mask()
    }

    /// Nodes `u`, `v` with `N(u) - v == N(v) - u`.
    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        u != v && (self.adj[u] & !(1 << v)) == (self.adj[v] & !(1 << u))
    }

    /// For every node, the smallest node it is a twin of (itself if none).
    pub fn twin_roots(&self) -> Vec<usize> {
        (0..self.order)
            .map(|v| (0..v).find(|&u| self.are_twins(u, v)).unwrap_or(v))
            .collect()
    }

    /// Edge-list text: `p q` then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.order, self.size());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not an integer: `{t}`")))
        });
        let mut next = |what: &str| {
            tokens
                .next()
                .unwrap_or_else(|| Err(Error::Parse(format!("missing {what}"))))
        };
        let p = next("order")?;
        let q = next("size")?;
        let mut edges = Vec::with_capacity(q);
        for _ in 0..q {
            let u = next("edge endpoint")?;
            let v = next("edge endpoint")?;
            edges.push((u, v));
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing data after edge list".into()));
        }
        Graph::new(p, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.order, self.edges)
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_edge_list(s)
    }
}

pub(crate) fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bit positions of a mask, lowest first.
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

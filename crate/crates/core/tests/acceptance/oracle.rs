//! Brute-force reference implementations. Nothing here calls into the
//! library's search, canonical form or enumeration code.

use std::collections::BTreeSet;

pub type Edges = Vec<(usize, usize)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Graceful,
    Total,
    Prime,
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Checks a complete labeling directly from the definitions.
pub fn holds(p: usize, edges: &[(usize, usize)], labels: &[usize], kind: Kind) -> bool {
    if labels.len() != p {
        return false;
    }
    let q = edges.len();
    let diffs: Vec<usize> = edges.iter().map(|&(u, v)| labels[u].abs_diff(labels[v])).collect();
    let distinct = labels.iter().collect::<BTreeSet<_>>().len() == p;
    match kind {
        Kind::Graceful => {
            distinct
                && labels.iter().all(|&l| l <= q)
                && diffs.iter().copied().collect::<BTreeSet<_>>() == (1..=q).collect()
        }
        Kind::Total => {
            let mut all: Vec<usize> = labels.to_vec();
            all.extend(&diffs);
            all.sort_unstable();
            all == (1..=p + q).collect::<Vec<_>>()
        }
        Kind::Prime => {
            let mut sorted = labels.to_vec();
            sorted.sort_unstable();
            sorted == (1..=p).collect::<Vec<_>>() && edges.iter().all(|&(u, v)| gcd(labels[u], labels[v]) == 1)
        }
    }
}

struct Walk<'a> {
    kind: Kind,
    lo: usize,
    hi: usize,
    earlier: Vec<Vec<usize>>,
    labels: Vec<usize>,
    node_used: Vec<bool>,
    edge_used: Vec<bool>,
    visit: &'a mut dyn FnMut(&[usize]) -> bool,
}

impl Walk<'_> {
    fn taken(&self, x: usize) -> bool {
        match self.kind {
            Kind::Total => self.node_used[x] || self.edge_used[x],
            _ => self.node_used[x],
        }
    }

    fn diff_taken(&self, d: usize) -> bool {
        match self.kind {
            Kind::Total => self.node_used[d] || self.edge_used[d],
            _ => self.edge_used[d],
        }
    }

    fn go(&mut self, v: usize) -> bool {
        if v == self.labels.len() {
            return (self.visit)(&self.labels);
        }
        for l in self.lo..=self.hi {
            if self.taken(l) {
                continue;
            }
            let mut diffs = Vec::new();
            let mut ok = true;
            for &u in &self.earlier[v] {
                let lu = self.labels[u];
                if self.kind == Kind::Prime {
                    ok = gcd(l, lu) == 1;
                } else {
                    let d = l.abs_diff(lu);
                    ok = !self.diff_taken(d) && !diffs.contains(&d) && !(self.kind == Kind::Total && d == l);
                    diffs.push(d);
                }
                if !ok {
                    break;
                }
            }
            if !ok {
                continue;
            }
            self.labels[v] = l;
            self.node_used[l] = true;
            diffs.iter().for_each(|&d| self.edge_used[d] = true);
            let stop = self.go(v + 1);
            diffs.iter().for_each(|&d| self.edge_used[d] = false);
            self.node_used[l] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Visits every labeling of `kind`; `visit` returns `true` to stop.
/// Returns whether the walk was stopped.
pub fn each_labeling(p: usize, edges: &[(usize, usize)], kind: Kind, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let q = edges.len();
    let (lo, hi) = match kind {
        Kind::Graceful => (0, q),
        Kind::Total => (1, p + q),
        Kind::Prime => (1, p),
    };
    if hi + 1 < lo + p {
        return false;
    }
    let mut earlier = vec![Vec::new(); p];
    for &(u, v) in edges {
        earlier[u.max(v)].push(u.min(v));
    }
    let mut w = Walk {
        kind,
        lo,
        hi,
        earlier,
        labels: vec![0; p],
        // differences can reach `hi`; 0 is never a difference
        node_used: vec![false; hi + 1],
        edge_used: vec![false; hi + 1],
        visit,
    };
    if kind != Kind::Prime {
        w.edge_used[0] = true;
    }
    w.go(0)
}

pub fn exists(p: usize, edges: &[(usize, usize)], kind: Kind) -> bool {
    each_labeling(p, edges, kind, &mut |_| true)
}

/// Lexicographically least relabelled edge list over all node orders.
pub fn canon(p: usize, edges: &[(usize, usize)]) -> (usize, Edges) {
    let mut perm: Vec<usize> = (0..p).collect();
    let mut best: Option<Edges> = None;
    loop {
        let mut e: Edges = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (p, best.unwrap_or_default())
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn connected(p: usize, edges: &[(usize, usize)]) -> bool {
    if p == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..p).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut parts = p;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts == 1
}

pub fn is_tree(p: usize, edges: &[(usize, usize)]) -> bool {
    edges.len() + 1 == p && connected(p, edges)
}

/// All pairs of `0..p` in a fixed order; bit `i` of a mask selects pair `i`.
pub fn pairs(p: usize) -> Edges {
    (0..p).flat_map(|u| (u + 1..p).map(move |v| (u, v))).collect()
}

pub fn from_mask(all: &[(usize, usize)], mask: u64) -> Edges {
    all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect()
}

/// Every labelled tree on `n` nodes, from Prüfer sequences.
pub fn labelled_trees(n: usize, visit: &mut dyn FnMut(&[(usize, usize)])) {
    if n == 1 {
        visit(&[]);
        return;
    }
    if n == 2 {
        visit(&[(0, 1)]);
        return;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        let mut degree = vec![1usize; n];
        seq.iter().for_each(|&x| degree[x] += 1);
        let mut edges = Vec::with_capacity(n - 1);
        for &x in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
            edges.push((leaf, x));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        visit(&edges);
        let mut k = 0;
        loop {
            if k == len {
                return;
            }
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
    }
}

/// Independence number of a graph on at most 64 nodes, given as
/// neighbourhood masks.
pub fn independence(adj: &[u64]) -> usize {
    fn best(adj: &[u64], cand: u64) -> usize {
        if cand == 0 {
            return 0;
        }
        // A node with at most one candidate neighbour can always be taken.
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            if (adj[v] & cand).count_ones() <= 1 {
                return 1 + best(adj, cand & !(adj[v] | 1 << v));
            }
        }
        let mut v = cand.trailing_zeros() as usize;
        let mut c = cand;
        while c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            if (adj[w] & cand).count_ones() > (adj[v] & cand).count_ones() {
                v = w;
            }
        }
        let with = 1 + best(adj, cand & !(adj[v] | 1 << v));
        let without = best(adj, cand & !(1 << v));
        with.max(without)
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    best(adj, all)
}

pub fn complement(adj: &[u64]) -> Vec<u64> {
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    adj.iter().enumerate().map(|(v, &m)| all & !m & !(1 << v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_facts() {
        // C5 and C6 have no graceful labeling; C4 and C7 do.
        let cycle = |n: usize| -> Edges { (0..n).map(|i| (i, (i + 1) % n)).collect() };
        assert!(!exists(5, &cycle(5), Kind::Graceful));
        assert!(!exists(6, &cycle(6), Kind::Graceful));
        assert!(exists(4, &cycle(4), Kind::Graceful));
        assert!(exists(8, &cycle(8), Kind::Graceful));
        assert!(exists(3, &cycle(3), Kind::Total));
        assert!(!exists(4, &pairs(4), Kind::Total));
        assert!(!exists(4, &pairs(4), Kind::Prime));
        let mut count = 0;
        labelled_trees(5, &mut |_| count += 1);
        assert_eq!(count, 125);
        assert_eq!(canon(3, &[(0, 1)]), canon(3, &[(1, 2)]));
    }
}

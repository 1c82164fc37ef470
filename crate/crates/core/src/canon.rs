//! Canonical labeling by colour refinement and individualization.
//!
//! The canonical representative is the relabeling whose upper-triangle bit
//! string (graph6 pair order, first pair most significant) is largest.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

pub const CANON_CAP: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey {
    order: usize,
    size: usize,
    code: u128,
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn code(&self) -> u128 {
        self.code
    }

    pub fn representative(&self) -> Graph {
        let p = self.order;
        let total = p * (p - 1) / 2;
        let mut edges = Vec::with_capacity(self.size);
        for j in 1..p {
            for i in 0..j {
                if self.code >> (total - 1 - pair_index(i, j)) & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(p, &edges).expect("canonical code describes a simple graph")
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(&self.representative())
    }

    pub fn from_graph6(s: &str) -> Result<Self> {
        canonical_key(&graph6::decode(s)?)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_graph6(&s).map_err(serde::de::Error::custom)
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    canonical_form(g).map(|(k, _)| k)
}

/// The key and the position of every node in the canonical representative.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalKey, Vec<usize>)> {
    let p = g.order();
    if p > CANON_CAP {
        return Err(Error::CapExceeded {
            what: "canonical form order",
            cap: CANON_CAP,
            got: p,
        });
    }
    let adj: Vec<u64> = (0..p).map(|v| g.neighbor_mask(v)).collect();
    let mut search = Search {
        adj: &adj,
        best: None,
        autos: Vec::new(),
    };
    let roots = g.twin_roots();
    for (v, &r) in roots.iter().enumerate() {
        if r != v {
            let mut t: Vec<usize> = (0..p).collect();
            t.swap(r, v);
            search.autos.push(t);
        }
    }
    let mut colour = vec![0u32; p];
    refine(&adj, &mut colour);
    search.run(colour, &mut Vec::new());
    let (code, pos) = search.best.expect("search reaches at least one leaf");
    let key = CanonicalKey {
        order: p,
        size: g.size(),
        code,
    };
    Ok((key, pos))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    Ok(canonical_key(g)? == canonical_key(h)?)
}

/// Automorphism group generators found while canonizing (not necessarily a
/// full generating set).
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let p = g.order();
    if p > CANON_CAP {
        return Err(Error::CapExceeded {
            what: "canonical form order",
            cap: CANON_CAP,
            got: p,
        });
    }
    let adj: Vec<u64> = (0..p).map(|v| g.neighbor_mask(v)).collect();
    let mut search = Search {
        adj: &adj,
        best: None,
        autos: Vec::new(),
    };
    let mut colour = vec![0u32; p];
    refine(&adj, &mut colour);
    search.run(colour, &mut Vec::new());
    Ok(search.autos)
}

/// Equitable refinement: recolour by (colour, sorted neighbour colours) until
/// the number of cells is stable. Colours are ranks, so the result depends
/// only on the isomorphism type of the coloured graph.
fn refine(adj: &[u64], colour: &mut [u32]) {
    let p = colour.len();
    let mut cells = count_cells(colour);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..p)
            .map(|v| {
                let mut nb: Vec<u32> = crate::graph::bits(adj[v]).map(|u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut rank = 0u32;
        for i in 0..p {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            colour[sigs[i].2] = rank;
        }
        let next = rank as usize + 1;
        if next == cells {
            return;
        }
        cells = next;
    }
}

fn count_cells(colour: &[u32]) -> usize {
    let mut c: Vec<u32> = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<(u128, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, colour: Vec<u32>, prefix: &mut Vec<usize>) {
        let p = colour.len();
        let mut counts = vec![0usize; p];
        for &c in &colour {
            counts[c as usize] += 1;
        }
        let Some(target) = (0..p).find(|&c| counts[c] > 1) else {
            self.leaf(colour.iter().map(|&c| c as usize).collect());
            return;
        };
        let members: Vec<usize> = (0..p).filter(|&v| colour[v] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &members {
            if !explored.is_empty() {
                let orbit = self.orbits(prefix);
                if explored.iter().any(|&e| orbit[e] == orbit[w]) {
                    continue;
                }
            }
            let mut child: Vec<u32> = colour
                .iter()
                .enumerate()
                .map(|(v, &c)| if v == w { 2 * c } else { 2 * c + 1 })
                .collect();
            refine(self.adj, &mut child);
            prefix.push(w);
            self.run(child, prefix);
            prefix.pop();
            explored.push(w);
        }
    }

    fn leaf(&mut self, pos: Vec<usize>) {
        let code = code_of(self.adj, &pos);
        match &self.best {
            None => self.best = Some((code, pos)),
            Some((best, best_pos)) => {
                if code > *best {
                    self.best = Some((code, pos));
                } else if code == *best {
                    let p = pos.len();
                    let mut inv = vec![0; p];
                    for (v, &c) in best_pos.iter().enumerate() {
                        inv[c] = v;
                    }
                    let sigma: Vec<usize> = pos.iter().map(|&c| inv[c]).collect();
                    if sigma.iter().enumerate().any(|(v, &s)| v != s) {
                        self.autos.push(sigma);
                    }
                }
            }
        }
    }

    /// Orbit representatives under the known automorphisms fixing `prefix`.
    fn orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let p = self.adj.len();
        let mut parent: Vec<usize> = (0..p).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.autos {
            if prefix.iter().any(|&v| a[v] != v) {
                continue;
            }
            for v in 0..p {
                let (x, y) = (find(&mut parent, v), find(&mut parent, a[v]));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        (0..p).map(|v| find(&mut parent, v)).collect()
    }
}

fn code_of(adj: &[u64], pos: &[usize]) -> u128 {
    let p = pos.len();
    let total = p * (p - 1) / 2;
    let mut code = 0u128;
    for u in 0..p {
        for v in crate::graph::bits(adj[u]) {
            if u < v {
                let (i, j) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
                code |= 1u128 << (total - 1 - pair_index(i, j));
            }
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn samples() -> Vec<Graph> {
        vec![
            cycle(4).unwrap(),
            cycle(7).unwrap(),
            cycle(16).unwrap(),
            complete(6).unwrap(),
            Graph::empty(9).unwrap(),
            petersen(),
            hypercube(4).unwrap(),
            platonic(12).unwrap(),
            complete_bipartite(3, 4).unwrap(),
            bnn(5).unwrap(),
            prism(6).unwrap(),
            h_family(2, 2, 2, HProduct::Join).unwrap(),
            wheel(6).unwrap(),
            generalized_petersen(8, 3).unwrap(),
            Graph::new(7, &[(0, 1), (1, 2), (2, 0), (3, 4), (5, 6)]).unwrap(),
        ]
    }

    #[test]
    fn invariant_under_random_permutations() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for g in samples() {
            let (key, pos) = canonical_form(&g).unwrap();
            assert_eq!(g.relabel(&pos), key.representative());
            let mut perm: Vec<usize> = (0..g.order()).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                assert_eq!(canonical_key(&g.relabel(&perm)).unwrap(), key, "{g:?}");
            }
        }
    }

    #[test]
    fn distinguishes_and_serializes() {
        let path3 = path(3).unwrap();
        let claw = star(3).unwrap();
        assert_ne!(canonical_key(&path3).unwrap(), canonical_key(&claw).unwrap());
        let c4a = cycle(4).unwrap();
        let c4b = Graph::new(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_key(&c4a).unwrap(), canonical_key(&c4b).unwrap());
        let k4 = canonical_key(&complete(4).unwrap()).unwrap();
        assert_eq!(k4.to_graph6(), "C~");
        let json = serde_json::to_string(&k4).unwrap();
        assert_eq!(json, "\"C~\"");
        assert_eq!(serde_json::from_str::<CanonicalKey>(&json).unwrap(), k4);
        assert!(canonical_key(&cycle(17).unwrap()).is_err());
    }

    #[test]
    fn regular_non_isomorphic_pairs_differ() {
        // two 3-regular graphs on 8 nodes: cube and the Moebius-Kantor-free twisted prism
        let cube = hypercube(3).unwrap();
        let twisted = Graph::new(
            8,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0),
                (0, 4), (1, 5), (2, 6), (3, 7),
            ],
        )
        .unwrap();
        assert!(!are_isomorphic(&cube, &twisted).unwrap());
        let c6 = cycle(6).unwrap();
        let two_c3 = disjoint_union(&cycle(3).unwrap(), &cycle(3).unwrap()).unwrap();
        assert!(!are_isomorphic(&c6, &two_c3).unwrap());
        assert!(are_isomorphic(&prism(4).unwrap(), &cube).unwrap());
    }

    #[test]
    fn automorphisms_are_automorphisms() {
        for g in samples() {
            for a in automorphisms(&g).unwrap() {
                assert_eq!(g.relabel(&a), g);
            }
        }
    }
}

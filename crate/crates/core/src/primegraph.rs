//! The coprime graph on labels `1..=n` and exact studies of prime labelings.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::canon::{canonical_key, CanonicalKey};
use crate::classify::{clique_number, independence_number};
use crate::conditions::{is_prime, totient};
use crate::enumerate::{enumerate_keyed, free_trees, Bounds, Universe, TREE_CAP};
use crate::error::{Error, Result};
use crate::families::complete_bipartite;
use crate::graph::{Graph, MAX_ORDER};
use crate::search::{find_prime, gcd, SearchBudget, Status};

pub const SP_AUDIT_CAP: usize = 40;
pub const PRINTED_EDGE_COUNTS: [usize; 20] = [0, 1, 3, 5, 9, 11, 17, 21, 27, 31, 41, 45, 57, 63, 81, 89, 105, 111, 129, 137];
pub const MU_CAP: usize = 7;
pub const E_MINIMAL_CAP: usize = 6;
pub const KRS_CAP: usize = 14;

/// Node `i` of `graph` carries label `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SPRecord {
    pub n: usize,
    #[serde(with = "crate::graph6::as_string")]
    pub graph: Graph,
    pub edge_count_formula: usize,
    pub clique: usize,
    pub independence: usize,
    pub min_degree: usize,
    pub full_degree_set: Vec<usize>,
    pub distinct_degree_count: usize,
}

fn sp_graph(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if gcd(a, b) == 1 {
                edges.push((a - 1, b - 1));
            }
        }
    }
    Graph::new(n, &edges)
}

pub fn totient_sum(n: usize) -> usize {
    (2..=n).map(totient).sum()
}

pub fn build_sp(n: usize) -> Result<SPRecord> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::InvalidOrder { got: n, max: MAX_ORDER });
    }
    let graph = sp_graph(n)?;
    let degrees = graph.degrees();
    let distinct: BTreeSet<usize> = degrees.iter().copied().collect();
    Ok(SPRecord {
        n,
        edge_count_formula: totient_sum(n),
        clique: clique_number(&graph),
        independence: independence_number(&graph),
        min_degree: graph.min_degree(),
        full_degree_set: (1..=n).filter(|&x| degrees[x - 1] == n - 1).collect(),
        distinct_degree_count: distinct.len(),
        graph,
    })
}

/// One claim under one reading: the stated value (absent when the printed
/// formula cannot be evaluated) against the value read off the graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub claim: String,
    pub reading: String,
    pub n: usize,
    pub formula: Option<Value>,
    pub computed: Value,
    pub matches: bool,
}

fn claim(name: &str, reading: &str, n: usize, formula: Option<Value>, computed: Value) -> Claim {
    let matches = formula.as_ref() == Some(&computed);
    Claim {
        claim: name.into(),
        reading: reading.into(),
        n,
        formula,
        computed,
        matches,
    }
}

fn neighbourhood(g: &Graph, x: usize) -> BTreeSet<usize> {
    g.neighbors(x - 1).map(|v| v + 1).collect()
}

fn prime_factors(mut x: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            out.push(p);
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Every elementary claim about the coprime graph of order `n`, under both
/// the printed and the corrected reading where they differ.
pub fn sp_audit(n: usize) -> Result<Vec<Claim>> {
    if n == 0 || n > SP_AUDIT_CAP {
        return Err(Error::CapExceeded { what: "coprime graph audit order", cap: SP_AUDIT_CAP, got: n });
    }
    let r = build_sp(n)?;
    let g = &r.graph;
    let primes: Vec<usize> = (2..=n).filter(|&x| is_prime(x)).collect();
    let mut out = Vec::new();

    let m = g.size();
    out.push(claim("edgeCount", "printed", n, Some(json!((2..n).map(totient).sum::<usize>())), json!(m)));
    out.push(claim("edgeCount", "corrected", n, Some(json!(r.edge_count_formula)), json!(m)));
    if n <= PRINTED_EDGE_COUNTS.len() {
        out.push(claim("printedEdgeCounts", "printed", n, Some(json!(PRINTED_EDGE_COUNTS[n - 1])), json!(m)));
    }

    let below = primes.iter().filter(|&&p| p < n).count();
    out.push(claim("clique", "printed", n, Some(json!(below + 1)), json!(r.clique)));
    out.push(claim("clique", "corrected", n, Some(json!(primes.len() + 1)), json!(r.clique)));

    let evens: Vec<usize> = (2..=n).step_by(2).collect();
    let evens_independent = evens.iter().all(|&a| evens.iter().all(|&b| a == b || !g.has_edge(a - 1, b - 1)));
    out.push(claim("independence", "printed", n, Some(json!(n / 2)), json!(r.independence)));

    out.push(claim("evenLabelsIndependent", "printed", n, Some(json!(true)), json!(evens_independent && evens.len() == r.independence)));

    let full = |keep: &dyn Fn(usize) -> bool| -> Vec<usize> {
        std::iter::once(1).chain(primes.iter().copied().filter(|&p| keep(p))).collect()
    };
    out.push(claim("fullDegreeSet", "printed", n, Some(json!(full(&|p| 2 * p < n))), json!(r.full_degree_set)));
    out.push(claim("fullDegreeSet", "corrected", n, Some(json!(full(&|p| 2 * p > n))), json!(r.full_degree_set)));

    for &p in &primes {
        out.push(claim(&format!("degree({p})"), "printed", n, Some(json!(n - n / p)), json!(g.degree(p - 1))));
    }

    out.push(claim("minDegree", "printed", n, Some(json!(n - n / 2)), json!(r.min_degree)));

    let mut powers_ok = true;
    let mut products_ok = true;
    for &p in &primes {
        let np = neighbourhood(g, p);
        let mut q = p * p;
        while q <= n {
            powers_ok &= neighbourhood(g, q) == np;
            q *= p;
        }
    }
    for x in 2..=n {
        let f = prime_factors(x);
        if f.len() > 1 {
            let mut inter = neighbourhood(g, f[0]);
            for &p in &f[1..] {
                inter = inter.intersection(&neighbourhood(g, p)).copied().collect();
            }
            // x itself is no neighbour of its factors
            products_ok &= neighbourhood(g, x) == inter;
        }
    }
    out.push(claim("primePowerNeighbourhood", "printed", n, Some(json!(true)), json!(powers_ok)));
    out.push(claim("productNeighbourhood", "printed", n, Some(json!(true)), json!(products_ok)));

    out.push(claim("distinctDegreeCount", "printed", n, None, json!(r.distinct_degree_count)));
    Ok(out)
}

/// Printed row against computed edge counts for `n = 1..=20`.
pub fn printed_edge_counts() -> Result<Vec<(usize, usize, usize)>> {
    (1..=PRINTED_EDGE_COUNTS.len())
        .map(|n| Ok((n, PRINTED_EDGE_COUNTS[n - 1], sp_graph(n)?.size())))
        .collect()
}

fn prime_status(g: &Graph, budget: SearchBudget) -> Result<bool> {
    match find_prime(g, budget, false)?.status {
        Status::Found => Ok(true),
        Status::Exhausted => Ok(false),
        Status::BudgetExceeded => Err(Error::BudgetExceeded),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCompleteVerdict {
    pub n: usize,
    pub trees: usize,
    pub complete: bool,
    pub failing: Option<CanonicalKey>,
    pub budget_exceeded: Vec<CanonicalKey>,
}

/// Whether every tree of order `n` has a prime labeling.
pub fn tree_complete_check(n: usize, budget: SearchBudget) -> Result<TreeCompleteVerdict> {
    if n == 0 || n > TREE_CAP {
        return Err(Error::CapExceeded { what: "tree completeness order", cap: TREE_CAP, got: n });
    }
    let trees = free_trees(n);
    let verdicts: Vec<(CanonicalKey, Status)> = trees
        .par_iter()
        .map(|t| Ok((canonical_key(t)?, find_prime(t, budget, false)?.status)))
        .collect::<Result<_>>()?;
    let mut failing = None;
    let mut budget_exceeded = Vec::new();
    for (k, s) in verdicts {
        match s {
            Status::Found => {}
            Status::Exhausted => {
                failing = Some(failing.map_or(k, |f: CanonicalKey| f.min(k)));
            }
            Status::BudgetExceeded => budget_exceeded.push(k),
        }
    }
    budget_exceeded.sort();
    Ok(TreeCompleteVerdict {
        n,
        trees: trees.len(),
        complete: failing.is_none() && budget_exceeded.is_empty(),
        failing,
        budget_exceeded,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum InferenceRule {
    /// `n + 1` prime gives `n + 1` and `n + 2`.
    NextPrime,
    /// `n + 1`, `n + 3` twin primes give `n + 1 ..= n + 5`.
    TwinPrimes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub order: usize,
    pub from: usize,
    pub rule: InferenceRule,
}

/// Closes `base` under both propagation rules up to `max_order`; each new
/// order is recorded once, with the first derivation found.
pub fn inference_chain(base: &BTreeSet<usize>, max_order: usize) -> Vec<Derivation> {
    let mut known = base.clone();
    let mut out = Vec::new();
    let mut frontier: Vec<usize> = base.iter().copied().collect();
    while let Some(n) = frontier.first().copied() {
        frontier.remove(0);
        let mut gained = Vec::new();
        if is_prime(n + 1) {
            gained.extend([(n + 1, InferenceRule::NextPrime), (n + 2, InferenceRule::NextPrime)]);
            if is_prime(n + 3) {
                gained.extend((n + 3..=n + 5).map(|o| (o, InferenceRule::TwinPrimes)));
            }
        }
        for (order, rule) in gained {
            if order <= max_order && known.insert(order) {
                out.push(Derivation { order, from: n, rule });
                let at = frontier.partition_point(|&x| x < order);
                frontier.insert(at, order);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuResult {
    pub n: usize,
    pub connected_only: bool,
    /// Edge-count ceiling of the searched universe.
    pub ceiling: usize,
    pub value: Option<usize>,
    pub witnesses: Vec<CanonicalKey>,
}

/// Upper bounds on the fewest edges of a non-prime graph, as stated for
/// small orders and by the general constructions.
pub fn mu_stated_bound(n: usize, connected_only: bool) -> Option<usize> {
    match (n, connected_only) {
        (0..=3, _) => None,
        (4, _) => Some(6),
        (5, _) => Some(10),
        (6, true) => Some(7),
        (6, false) => Some(6),
        (7, true) => Some(10),
        (7, false) => Some(9),
        (_, true) => Some(if n.is_multiple_of(2) { n + 1 } else { n + 2 }),
        (_, false) => Some(n),
    }
}

pub fn mu_compute(n: usize, connected_only: bool, budget: SearchBudget) -> Result<MuResult> {
    if n == 0 || n > MU_CAP {
        return Err(Error::CapExceeded { what: "minimum non-prime size order", cap: MU_CAP, got: n });
    }
    let ceiling = mu_stated_bound(n, connected_only).map_or(n * (n - 1) / 2, |b| b + 1);
    let universe = if connected_only { Universe::ConnectedGraphs } else { Universe::AllGraphs };
    let graphs = enumerate_keyed(universe, n, Bounds::max_edges(ceiling))?;
    let flagged: Vec<(CanonicalKey, usize, bool)> = graphs
        .par_iter()
        .map(|(k, g)| Ok((*k, g.size(), prime_status(g, budget)?)))
        .collect::<Result<_>>()?;
    let value = flagged.iter().filter(|f| !f.2).map(|f| f.1).min();
    let mut witnesses: Vec<CanonicalKey> = flagged
        .iter()
        .filter(|f| !f.2 && Some(f.1) == value)
        .map(|f| f.0)
        .collect();
    witnesses.sort();
    Ok(MuResult {
        n,
        connected_only,
        ceiling,
        value,
        witnesses,
    })
}

/// Non-prime graphs of order `n` all of whose edge-deleted subgraphs are
/// prime, in key order.
pub fn e_minimal_non_prime(n: usize, budget: SearchBudget) -> Result<Vec<CanonicalKey>> {
    if n == 0 || n > E_MINIMAL_CAP {
        return Err(Error::CapExceeded { what: "e-minimal census order", cap: E_MINIMAL_CAP, got: n });
    }
    let graphs = enumerate_keyed(Universe::AllGraphs, n, Bounds::default())?;
    let prime: BTreeMap<CanonicalKey, bool> = graphs
        .par_iter()
        .map(|(k, g)| Ok((*k, prime_status(g, budget)?)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (k, g) in &graphs {
        if prime[k] {
            continue;
        }
        let mut minimal = true;
        for &(u, v) in g.edges() {
            if !prime[&canonical_key(&g.without_edge(u, v))?] {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(*k);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrsVerdict {
    pub r: usize,
    pub s: usize,
    pub prime: bool,
    pub formula: bool,
    pub agree: bool,
}

/// Prime search on `K_{r,s}` against `min(r, s) < |{primes < r + s}| + 1`.
pub fn krs_audit(r: usize, s: usize, budget: SearchBudget) -> Result<KrsVerdict> {
    if r == 0 || s == 0 || r + s > KRS_CAP {
        return Err(Error::CapExceeded { what: "complete bipartite order", cap: KRS_CAP, got: r + s });
    }
    let prime = prime_status(&complete_bipartite(r, s)?, budget)?;
    let below = (2..r + s).filter(|&x| is_prime(x)).count();
    let formula = r.min(s) < below + 1;
    Ok(KrsVerdict {
        r,
        s,
        prime,
        formula,
        agree: prime == formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::{certify, Rule};
    use crate::families::{complete, cycle, disjoint_union, path, star};
    use crate::labeling::{check, Labeling, LabelingKind};
    use proptest::prelude::*;

    fn key(g: &Graph) -> CanonicalKey {
        canonical_key(g).unwrap()
    }

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    /// Oracle: count coprime pairs directly.
    fn coprime_pairs(n: usize) -> usize {
        (1..=n).map(|a| (a + 1..=n).filter(|&b| gcd(a, b) == 1).count()).sum()
    }

    #[test]
    fn small_records() {
        let r = build_sp(4).unwrap();
        assert_eq!(r.graph.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(r.edge_count_formula, 5);
        let r = build_sp(6).unwrap();
        assert_eq!((r.graph.size(), r.independence), (11, 3));
        assert_eq!(r.full_degree_set, vec![1, 5]);
        assert_eq!(r.min_degree, 2);
        let r = build_sp(1).unwrap();
        assert_eq!((r.graph.order(), r.graph.size()), (1, 0));
        assert!(build_sp(0).is_err());
    }

    #[test]
    fn printed_edge_counts_matches() {
        // the printed row runs 10 high from n = 15 on
        for (n, printed, ours) in printed_edge_counts().unwrap() {
            assert_eq!(ours, coprime_pairs(n));
            if n <= 14 {
                assert_eq!(printed, ours, "n = {n}");
            } else {
                assert_eq!(printed, ours + 10, "n = {n}");
            }
        }
    }

    #[test]
    fn audit_readings() {
        let six = sp_audit(6).unwrap();
        let get = |c: &str, r: &str| six.iter().find(|x| x.claim == c && x.reading == r).unwrap().clone();
        assert!(get("fullDegreeSet", "corrected").matches);
        assert!(!get("fullDegreeSet", "printed").matches);
        assert!(!get("minDegree", "printed").matches);
        assert!(get("degree(3)", "printed").matches);
        assert_eq!(get("degree(3)", "printed").computed, json!(4));
        assert!(get("distinctDegreeCount", "printed").formula.is_none());
        let five = sp_audit(5).unwrap();
        let clique = |r: &str| five.iter().find(|x| x.claim == "clique" && x.reading == r).unwrap().matches;
        assert!(!clique("printed"));
        assert!(clique("corrected"));
        for n in 1..=SP_AUDIT_CAP {
            for c in sp_audit(n).unwrap() {
                let always = ["edgeCount/corrected", "clique/corrected", "independence/printed", "evenLabelsIndependent/printed", "fullDegreeSet/corrected", "primePowerNeighbourhood/printed", "productNeighbourhood/printed"];
                let independence = c.claim == "independence" || c.claim == "evenLabelsIndependent";
                if n == 1 && independence {
                    assert!(!c.matches);
                } else if always.contains(&format!("{}/{}", c.claim, c.reading).as_str()) || c.claim.starts_with("degree(") || (c.claim == "table2" && n <= 14) {
                    assert!(c.matches, "n = {n}: {c:?}");
                }
            }
        }
        assert!(sp_audit(41).is_err());
    }

    #[test]
    fn dropping_the_top_label_stays_prime() {
        for n in 2..=20 {
            let g = build_sp(n).unwrap().graph;
            let h = g.induced(&(0..n - 1).collect::<Vec<_>>());
            let phi = Labeling::new((1..n).collect());
            assert!(check(&h, &phi, LabelingKind::Prime).unwrap().ok);
            assert_eq!(h, build_sp(n - 1).unwrap().graph);
        }
    }

    #[test]
    fn tree_completeness_small() {
        for n in 1..=TREE_CAP {
            let v = tree_complete_check(n, b()).unwrap();
            assert!(v.complete, "n = {n}");
        }
        assert_eq!(tree_complete_check(9, b()).unwrap().trees, 47);
    }

    #[test]
    fn chain_examples() {
        let d = inference_chain(&BTreeSet::from([16]), 21);
        let orders: Vec<usize> = d.iter().map(|x| x.order).collect();
        assert_eq!(orders, vec![17, 18, 19, 20, 21]);
        assert!(d.iter().all(|x| x.from == 16));
        let d = inference_chain(&BTreeSet::from([10]), 40);
        let next: Vec<usize> = d
            .iter()
            .filter(|x| x.from == 10 && x.rule == InferenceRule::NextPrime)
            .map(|x| x.order)
            .collect();
        assert_eq!(next, vec![11, 12]);
        for x in d.iter().filter(|x| x.order <= 12) {
            assert!(tree_complete_check(x.order, b()).unwrap().complete);
        }
    }

    #[test]
    fn mu_small() {
        let r = mu_compute(6, true, b()).unwrap();
        assert_eq!((r.value, r.witnesses.len()), (Some(7), 1));
        let r = mu_compute(6, false, b()).unwrap();
        let two_triangles = disjoint_union(&complete(3).unwrap(), &complete(3).unwrap()).unwrap();
        assert_eq!((r.value, r.witnesses.clone()), (Some(6), vec![key(&two_triangles)]));
        let r = mu_compute(5, true, b()).unwrap();
        assert_eq!((r.value, r.witnesses.clone()), (Some(10), vec![key(&complete(5).unwrap())]));
        let r = mu_compute(4, false, b()).unwrap();
        assert_eq!((r.value, r.witnesses.clone()), (Some(6), vec![key(&complete(4).unwrap())]));
        for n in 1..=3 {
            assert_eq!(mu_compute(n, false, b()).unwrap().value, None);
        }
        for n in 4..=6 {
            let c = mu_compute(n, true, b()).unwrap().value.unwrap();
            let a = mu_compute(n, false, b()).unwrap().value.unwrap();
            assert!(a <= c);
        }
    }

    #[test]
    fn e_minimal_small() {
        assert!(e_minimal_non_prime(3, b()).unwrap().is_empty());
        assert_eq!(e_minimal_non_prime(4, b()).unwrap(), vec![key(&complete(4).unwrap())]);
        let six = e_minimal_non_prime(6, b()).unwrap();
        assert_eq!(six.len(), 5);
        let k51 = disjoint_union(&complete(5).unwrap(), &Graph::empty(1).unwrap()).unwrap();
        let two_triangles = disjoint_union(&complete(3).unwrap(), &complete(3).unwrap()).unwrap();
        for g in [k51, two_triangles, complete_bipartite(3, 3).unwrap()] {
            assert!(six.contains(&key(&g)));
        }
    }

    #[test]
    fn krs_examples() {
        let v = krs_audit(3, 3, b()).unwrap();
        assert!(!v.prime);
        assert!(v.formula);
        assert!(!v.agree);
        for s in 1..=10 {
            assert!(krs_audit(1, s, b()).unwrap().prime);
        }
        assert!(krs_audit(2, 2, b()).unwrap().prime);
        assert!(krs_audit(8, 7, b()).is_err());
    }

    #[test]
    fn certificates_agree_with_search() {
        for n in 1..=6 {
            for (_, g) in enumerate_keyed(Universe::AllGraphs, n, Bounds::default()).unwrap() {
                let violated = Rule::PRIME
                    .iter()
                    .any(|&r| certify(&g, r, b()).unwrap().violated());
                if violated {
                    assert!(!prime_status(&g, b()).unwrap());
                }
            }
        }
        assert!(prime_status(&path(6).unwrap(), b()).unwrap());
        assert!(prime_status(&star(6).unwrap(), b()).unwrap());
        assert!(prime_status(&cycle(7).unwrap(), b()).unwrap());
    }

    #[test]
    #[ignore]
    fn larger_orders() {
        let c = mu_compute(7, true, b()).unwrap();
        let a = mu_compute(7, false, b()).unwrap();
        println!("mu(7) = {:?} with {} witnesses, mu'(7) = {:?} with {} witnesses", c.value, c.witnesses.len(), a.value, a.witnesses.len());
        for w in c.witnesses.iter().chain(&a.witnesses) {
            println!("  {w}");
        }
        for n in 1..=5 {
            println!("e-minimal n={n}: {:?}", e_minimal_non_prime(n, b()).unwrap().iter().map(|k| k.to_string()).collect::<Vec<_>>());
        }
        println!("e-minimal n=6: {:?}", e_minimal_non_prime(6, b()).unwrap().iter().map(|k| k.to_string()).collect::<Vec<_>>());
        for r in 1..KRS_CAP {
            for s in r..=KRS_CAP - r {
                let v = krs_audit(r, s, b()).unwrap();
                if !v.agree {
                    println!("K({r},{s}) prime={} formula={}", v.prime, v.formula);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn edge_count_is_totient_sum(n in 1usize..=40) {
            let r = build_sp(n).unwrap();
            prop_assert_eq!(r.graph.size(), r.edge_count_formula);
            prop_assert_eq!(r.graph.size(), coprime_pairs(n));
        }

        #[test]
        fn clique_and_independence(n in 1usize..=40) {
            let r = build_sp(n).unwrap();
            prop_assert_eq!(r.clique, (2..=n).filter(|&x| is_prime(x)).count() + 1);
            prop_assert_eq!(r.independence, (n / 2).max(1));
        }
    }
}

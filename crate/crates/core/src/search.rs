//! Deterministic exhaustive solvers for the labeling kinds.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::graph::{bits, Graph};
use crate::labeling::{self, Labeling, LabelingKind};

/// Largest edge count accepted by the graceful and optimal solvers.
pub const LABEL_CAP: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    #[serde(with = "millis")]
    pub max_wall: Duration,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_wall: Duration) -> Result<Self> {
        if max_nodes == 0 || max_wall.is_zero() {
            return precondition("search budgets must be positive");
        }
        Ok(SearchBudget {
            max_nodes,
            max_wall,
        })
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            ..Self::default()
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 10_000_000,
            max_wall: Duration::from_secs(60),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    Found,
    Exhausted,
    BudgetExceeded,
}

/// Wall time is kept for callers but never serialized, so reports stay
/// reproducible.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
    #[serde(skip)]
    pub wall: Duration,
}

impl PartialEq for SearchStats {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.max_depth == other.max_depth
    }
}

impl Eq for SearchStats {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Labeling>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.status == Status::Found
    }

    pub fn exhausted(&self) -> bool {
        self.status == Status::Exhausted
    }
}

struct Abort;

type Step = std::result::Result<bool, Abort>;

struct Meter {
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
    max_depth: usize,
}

impl Meter {
    fn new(budget: SearchBudget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: 0,
            max_depth: 0,
        }
    }

    fn tick(&mut self, depth: usize) -> std::result::Result<(), Abort> {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        if self.nodes > self.budget.max_nodes
            || (self.nodes & 1023 == 0 && self.start.elapsed() > self.budget.max_wall)
        {
            return Err(Abort);
        }
        Ok(())
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            max_depth: self.max_depth,
            wall: self.start.elapsed(),
        }
    }

    fn outcome(&self, result: std::result::Result<Option<Labeling>, Abort>) -> SearchOutcome {
        let (status, witness) = match result {
            Ok(Some(w)) => (Status::Found, Some(w)),
            Ok(None) => (Status::Exhausted, None),
            Err(Abort) => (Status::BudgetExceeded, None),
        };
        SearchOutcome {
            status,
            witness,
            stats: self.stats(),
        }
    }
}

const NONE: usize = usize::MAX;

/// Node order shared by the solvers: descending degree, then index.
fn degree_order(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut rank = vec![0; g.order()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    (order, rank)
}

fn twin_masks(g: &Graph) -> Vec<u64> {
    let p = g.order();
    (0..p)
        .map(|v| {
            (0..p)
                .filter(|&w| g.are_twins(v, w))
                .fold(0u64, |m, w| m | 1 << w)
        })
        .collect()
}

/// Optional side constraints for the graceful solver.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GracefulConstraints {
    pub fixed: Vec<(usize, usize)>,
    /// Edge `(u, v)` must receive edge label `i`.
    pub edge: Option<(usize, usize, usize)>,
}

pub fn find_graceful(g: &Graph, budget: SearchBudget) -> Result<SearchOutcome> {
    find_graceful_with(g, budget, &GracefulConstraints::default())
}

/// Difference-driven backtracking: the largest unrealized difference is
/// realized next, either from a labeled endpoint or by a fresh adjacent pair.
pub fn find_graceful_with(
    g: &Graph,
    budget: SearchBudget,
    constraints: &GracefulConstraints,
) -> Result<SearchOutcome> {
    let p = g.order();
    let q = g.size();
    if q > LABEL_CAP {
        return Err(Error::CapExceeded {
            what: "graceful search size",
            cap: LABEL_CAP,
            got: q,
        });
    }
    let mut meter = Meter::new(budget);
    if p > q + 1 {
        return Ok(meter.outcome(Ok(None)));
    }
    if let Some((u, v, i)) = constraints.edge {
        if !g.has_edge(u, v) {
            return precondition(format!("({u}, {v}) is not an edge"));
        }
        if i == 0 || i > q {
            return precondition(format!("edge label {i} outside 1..={q}"));
        }
    }
    let (order, rank) = degree_order(g);
    let symmetric = constraints.fixed.is_empty() && constraints.edge.is_none();
    let mut s = GracefulSearch {
        g,
        q,
        label: vec![NONE; p],
        unlabeled: g.all_mask(),
        used_labels: 0,
        used_diffs: 0,
        order,
        rank,
        twins: if symmetric { twin_masks(g) } else { vec![0; p] },
        edge: constraints.edge.map(|(u, v, i)| (u.min(v), u.max(v), i)),
        complement_break: constraints.fixed.is_empty(),
        meter: &mut meter,
    };
    for &(v, l) in &constraints.fixed {
        if v >= p {
            return Err(Error::NodeOutOfRange { node: v, order: p });
        }
        if l > q {
            return precondition(format!("fixed label {l} outside 0..={q}"));
        }
        if s.label[v] != NONE {
            if s.label[v] != l {
                return Ok(s.meter.outcome(Ok(None)));
            }
            continue;
        }
        match s.try_assign(v, l) {
            Some(d) => s.apply(v, l, d),
            None => return Ok(s.meter.outcome(Ok(None))),
        }
    }
    let result = s.rec(0).map(|ok| {
        ok.then(|| {
            let mut label = s.label.clone();
            let mut free = (0..=q).filter(|&l| s.used_labels >> l & 1 == 0);
            for x in label.iter_mut().filter(|x| **x == NONE) {
                *x = free.next().expect("enough free labels for isolated nodes");
            }
            Labeling::new(label)
        })
    });
    let out = meter.outcome(result);
    debug_assert!(out
        .witness
        .as_ref()
        .is_none_or(|w| labeling::is_graceful(g, w)));
    Ok(out)
}

struct GracefulSearch<'a> {
    g: &'a Graph,
    q: usize,
    label: Vec<usize>,
    unlabeled: u64,
    used_labels: u128,
    used_diffs: u128,
    order: Vec<usize>,
    rank: Vec<usize>,
    twins: Vec<u64>,
    edge: Option<(usize, usize, usize)>,
    complement_break: bool,
    meter: &'a mut Meter,
}

impl GracefulSearch<'_> {
    /// New difference bits if `v := l` is consistent.
    fn try_assign(&self, v: usize, l: usize) -> Option<u128> {
        if self.used_labels >> l & 1 == 1 {
            return None;
        }
        let mut fresh = 0u128;
        for w in bits(self.g.neighbor_mask(v) & !self.unlabeled) {
            let d = l.abs_diff(self.label[w]);
            if (self.used_diffs | fresh) >> d & 1 == 1 {
                return None;
            }
            if let Some((a, b, i)) = self.edge {
                if (v.min(w), v.max(w)) == (a, b) {
                    if d != i {
                        return None;
                    }
                } else if d == i {
                    return None;
                }
            }
            fresh |= 1 << d;
        }
        Some(fresh)
    }

    fn apply(&mut self, v: usize, l: usize, fresh: u128) {
        self.label[v] = l;
        self.unlabeled &= !(1 << v);
        self.used_labels |= 1 << l;
        self.used_diffs |= fresh;
    }

    fn undo(&mut self, v: usize, l: usize, fresh: u128) {
        self.label[v] = NONE;
        self.unlabeled |= 1 << v;
        self.used_labels &= !(1 << l);
        self.used_diffs &= !fresh;
    }

    /// `v` has an unlabeled twin earlier in the node order other than `except`.
    fn shadowed(&self, v: usize, except: usize) -> bool {
        bits(self.twins[v] & self.unlabeled).any(|w| w != except && self.rank[w] < self.rank[v])
    }

    fn rec(&mut self, depth: usize) -> Step {
        self.meter.tick(depth)?;
        let all = ((1u128 << self.q) - 1) << 1;
        let missing = all & !self.used_diffs;
        if missing == 0 {
            return Ok(true);
        }
        let d = 127 - missing.leading_zeros() as usize;
        for i in 0..self.order.len() {
            let u = self.order[i];
            if self.label[u] == NONE {
                continue;
            }
            let lu = self.label[u];
            let nbrs = self.g.neighbor_mask(u) & self.unlabeled;
            for j in 0..self.order.len() {
                let v = self.order[j];
                if nbrs >> v & 1 == 0 || self.shadowed(v, NONE) {
                    continue;
                }
                let cands = [lu.checked_sub(d), Some(lu + d).filter(|&l| l <= self.q)];
                for l in cands.into_iter().flatten() {
                    if let Some(fresh) = self.try_assign(v, l) {
                        self.apply(v, l, fresh);
                        if self.rec(depth + 1)? {
                            return Ok(true);
                        }
                        self.undo(v, l, fresh);
                    }
                }
            }
        }
        let first = self.unlabeled == self.g.all_mask();
        for i in 0..self.order.len() {
            let u = self.order[i];
            if self.label[u] != NONE {
                continue;
            }
            for j in 0..self.order.len() {
                let v = self.order[j];
                if self.label[v] != NONE || !self.g.has_edge(u, v) {
                    continue;
                }
                if first && self.complement_break && self.rank[u] > self.rank[v] {
                    continue;
                }
                if self.shadowed(u, v) || self.shadowed(v, u) {
                    continue;
                }
                for x in 0..=self.q - d {
                    let Some(fu) = self.try_assign(u, x) else {
                        continue;
                    };
                    self.apply(u, x, fu);
                    if let Some(fv) = self.try_assign(v, x + d) {
                        self.apply(v, x + d, fv);
                        if self.rec(depth + 1)? {
                            return Ok(true);
                        }
                        self.undo(v, x + d, fv);
                    }
                    self.undo(u, x, fu);
                }
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalResult {
    pub opt: usize,
    pub witness: Labeling,
    pub stats: SearchStats,
}

/// Smallest `q0 >= q` admitting an injective edge-distinct labeling into
/// `0..=q0` that uses 0.
pub fn find_optimal(g: &Graph, budget: SearchBudget) -> Result<OptimalResult> {
    let p = g.order();
    let q = g.size();
    let mut meter = Meter::new(budget);
    let (order, _) = connected_order(g);
    let mut prev = vec![NONE; p];
    for (i, &v) in order.iter().enumerate() {
        if let Some(&w) = order[..i].iter().rev().find(|&&w| g.are_twins(v, w)) {
            prev[v] = w;
        }
    }
    let mut q0 = q.max(p.saturating_sub(1));
    loop {
        if q0 >= 127 {
            return Err(Error::CapExceeded {
                what: "optimal label range",
                cap: 126,
                got: q0,
            });
        }
        let mut s = OptimalSearch {
            g,
            q0,
            order: &order,
            prev: &prev,
            label: vec![NONE; p],
            used_labels: 0,
            used_diffs: 0,
            meter: &mut meter,
        };
        match s.rec(0) {
            Err(Abort) => return Err(Error::BudgetExceeded),
            Ok(true) => {
                let witness = Labeling::new(s.label.clone());
                debug_assert!(labeling::holds(g, &witness, LabelingKind::EdgeDistinct));
                return Ok(OptimalResult {
                    opt: q0,
                    witness,
                    stats: meter.stats(),
                });
            }
            Ok(false) => q0 += 1,
        }
    }
}

/// Nodes ordered so that each one has as many earlier neighbours as possible.
fn connected_order(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let p = g.order();
    let mut order = Vec::with_capacity(p);
    let mut placed = 0u64;
    while order.len() < p {
        let v = (0..p)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (g.neighbor_mask(v) & placed).count_ones(),
                    g.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("an unplaced node remains");
        order.push(v);
        placed |= 1 << v;
    }
    let mut rank = vec![0; p];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    (order, rank)
}

struct OptimalSearch<'a> {
    g: &'a Graph,
    q0: usize,
    order: &'a [usize],
    prev: &'a [usize],
    label: Vec<usize>,
    used_labels: u128,
    used_diffs: u128,
    meter: &'a mut Meter,
}

impl OptimalSearch<'_> {
    fn rec(&mut self, k: usize) -> Step {
        self.meter.tick(k)?;
        let p = self.order.len();
        if k == p {
            return Ok(self.used_labels & 1 == 1 && self.used_labels >> self.q0 & 1 == 1);
        }
        let v = self.order[k];
        let lo = if self.prev[v] == NONE {
            0
        } else {
            self.label[self.prev[v]] + 1
        };
        let hi = if k == 0 { self.q0 / 2 } else { self.q0 };
        let remaining = p - k - 1;
        for l in lo..=hi {
            if self.used_labels >> l & 1 == 1 {
                continue;
            }
            let after = self.used_labels | 1 << l;
            let ends_missing = (after & 1 == 0) as usize + (after >> self.q0 & 1 == 0) as usize;
            if ends_missing > remaining {
                continue;
            }
            let mut fresh = 0u128;
            let mut ok = true;
            for w in bits(self.g.neighbor_mask(v)) {
                if self.label[w] == NONE {
                    continue;
                }
                let d = l.abs_diff(self.label[w]);
                if (self.used_diffs | fresh) >> d & 1 == 1 {
                    ok = false;
                    break;
                }
                fresh |= 1 << d;
            }
            if !ok {
                continue;
            }
            self.label[v] = l;
            self.used_labels = after;
            self.used_diffs |= fresh;
            if self.rec(k + 1)? {
                return Ok(true);
            }
            self.label[v] = NONE;
            self.used_labels &= !(1 << l);
            self.used_diffs &= !fresh;
        }
        Ok(false)
    }
}

pub fn find_total(g: &Graph, budget: SearchBudget) -> Result<SearchOutcome> {
    let mut meter = Meter::new(budget);
    let r = total_at(g, 0, false, &mut meter)?;
    Ok(meter.outcome(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemitotalResult {
    pub slack: usize,
    pub witness: Labeling,
    pub stats: SearchStats,
}

/// Sweeps the slack upward from 0.
pub fn find_semitotal(g: &Graph, budget: SearchBudget) -> Result<SemitotalResult> {
    semitotal_sweep(g, budget, false)
}

/// Like [`find_semitotal`], restricted to labelings with 1 as a node label.
pub fn find_semitotal_with_one(g: &Graph, budget: SearchBudget) -> Result<SemitotalResult> {
    semitotal_sweep(g, budget, true)
}

fn semitotal_sweep(g: &Graph, budget: SearchBudget, one_on_node: bool) -> Result<SemitotalResult> {
    let mut meter = Meter::new(budget);
    for slack in 0.. {
        match total_at(g, slack, one_on_node, &mut meter)? {
            Err(Abort) => return Err(Error::BudgetExceeded),
            Ok(Some(witness)) => {
                return Ok(SemitotalResult {
                    slack,
                    witness,
                    stats: meter.stats(),
                })
            }
            Ok(None) => {}
        }
    }
    unreachable!("slack sweep is unbounded")
}

/// Semitotal search at a fixed slack (0 means total).
pub fn find_semitotal_at(g: &Graph, slack: usize, budget: SearchBudget) -> Result<SearchOutcome> {
    let mut meter = Meter::new(budget);
    let r = total_at(g, slack, false, &mut meter)?;
    Ok(meter.outcome(r))
}

fn total_at(
    g: &Graph,
    slack: usize,
    one_on_node: bool,
    meter: &mut Meter,
) -> Result<std::result::Result<Option<Labeling>, Abort>> {
    let p = g.order();
    let top = p + g.size() + slack;
    if top > 127 {
        return Err(Error::CapExceeded {
            what: "total label range",
            cap: 127,
            got: top,
        });
    }
    let (order, rank) = degree_order(g);
    let mut s = TotalSearch {
        g,
        top,
        label: vec![NONE; p],
        unlabeled: g.all_mask(),
        covered: 0,
        skips: slack,
        one_on_node,
        order,
        rank,
        twins: twin_masks(g),
        meter,
    };
    Ok(s.rec(0).map(|ok| {
        ok.then(|| {
            let w = Labeling::new(s.label.clone());
            debug_assert!(labeling::holds(g, &w, LabelingKind::Semitotal { slack }));
            w
        })
    }))
}

struct TotalSearch<'a> {
    g: &'a Graph,
    top: usize,
    label: Vec<usize>,
    unlabeled: u64,
    /// Values used as node labels, edge labels, or skipped.
    covered: u128,
    skips: usize,
    /// Value 1 must end up as a node label.
    one_on_node: bool,
    order: Vec<usize>,
    rank: Vec<usize>,
    twins: Vec<u64>,
    meter: &'a mut Meter,
}

impl TotalSearch<'_> {
    fn try_assign(&self, v: usize, l: usize) -> Option<u128> {
        if l == 0 || l > self.top || self.covered >> l & 1 == 1 {
            return None;
        }
        let mut fresh = 1u128 << l;
        for w in bits(self.g.neighbor_mask(v) & !self.unlabeled) {
            let d = l.abs_diff(self.label[w]);
            if (self.covered | fresh) >> d & 1 == 1 || (d == 1 && self.one_on_node) {
                return None;
            }
            fresh |= 1 << d;
        }
        Some(fresh)
    }

    fn apply(&mut self, v: usize, l: usize, fresh: u128) {
        self.label[v] = l;
        self.unlabeled &= !(1 << v);
        self.covered |= fresh;
    }

    fn undo(&mut self, v: usize, fresh: u128) {
        self.label[v] = NONE;
        self.unlabeled |= 1 << v;
        self.covered &= !fresh;
    }

    fn shadowed(&self, v: usize) -> bool {
        bits(self.twins[v] & self.unlabeled).any(|w| self.rank[w] < self.rank[v])
    }

    fn rec(&mut self, depth: usize) -> Step {
        self.meter.tick(depth)?;
        let all = ((1u128 << self.top) - 1) << 1;
        let missing = all & !self.covered;
        if missing == 0 {
            return Ok(true);
        }
        let x = 127 - missing.leading_zeros() as usize;
        // x as a node label
        for i in 0..self.order.len() {
            let v = self.order[i];
            if self.unlabeled >> v & 1 == 0 || self.shadowed(v) {
                continue;
            }
            if let Some(f) = self.try_assign(v, x) {
                self.apply(v, x, f);
                if self.rec(depth + 1)? {
                    return Ok(true);
                }
                self.undo(v, f);
            }
        }
        if x == 1 && self.one_on_node {
            return Ok(false);
        }
        // x as an edge label from a labeled endpoint; every larger value is
        // already covered, so the new endpoint sits below.
        for i in 0..self.order.len() {
            let u = self.order[i];
            if self.label[u] == NONE || self.label[u] <= x {
                continue;
            }
            let l = self.label[u] - x;
            for j in 0..self.order.len() {
                let v = self.order[j];
                if !self.g.has_edge(u, v) || self.unlabeled >> v & 1 == 0 || self.shadowed(v) {
                    continue;
                }
                if let Some(f) = self.try_assign(v, l) {
                    self.apply(v, l, f);
                    if self.rec(depth + 1)? {
                        return Ok(true);
                    }
                    self.undo(v, f);
                }
            }
        }
        if self.skips > 0 {
            self.skips -= 1;
            self.covered |= 1 << x;
            if self.rec(depth + 1)? {
                return Ok(true);
            }
            self.covered &= !(1 << x);
            self.skips += 1;
        }
        Ok(false)
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest order accepted by the prime solver.
pub const PRIME_CAP: usize = 64;

/// Label-driven search: labels with the most non-coprime partners are placed
/// first, candidate nodes in ascending degree.
pub fn find_prime(g: &Graph, budget: SearchBudget, pendant_top: bool) -> Result<SearchOutcome> {
    let n = g.order();
    if n > PRIME_CAP {
        return Err(Error::CapExceeded {
            what: "prime search order",
            cap: PRIME_CAP,
            got: n,
        });
    }
    if pendant_top && (0..n).all(|v| g.degree(v) != 1) {
        return precondition("pendant constraint on a graph without pendant nodes");
    }
    let mut coprime = vec![0u128; n + 1];
    for a in 1..=n {
        for b in 1..=n {
            if a != b && gcd(a, b) == 1 {
                coprime[a] |= 1 << b;
            }
        }
    }
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.sort_by_key(|&l| (coprime[l].count_ones(), std::cmp::Reverse(l)));
    if pendant_top {
        labels.retain(|&l| l != n);
        labels.insert(0, n);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut meter = Meter::new(budget);
    let mut s = PrimeSearch {
        g,
        labels,
        coprime,
        order,
        rank,
        twins: twin_masks(g),
        label: vec![NONE; n],
        unlabeled: g.all_mask(),
        pendant_top,
        meter: &mut meter,
    };
    let r = s.rec(0).map(|ok| ok.then(|| Labeling::new(s.label.clone())));
    let out = meter.outcome(r);
    debug_assert!(out
        .witness
        .as_ref()
        .is_none_or(|w| labeling::holds(g, w, LabelingKind::Prime)));
    Ok(out)
}

struct PrimeSearch<'a> {
    g: &'a Graph,
    labels: Vec<usize>,
    coprime: Vec<u128>,
    order: Vec<usize>,
    rank: Vec<usize>,
    twins: Vec<u64>,
    label: Vec<usize>,
    unlabeled: u64,
    pendant_top: bool,
    meter: &'a mut Meter,
}

impl PrimeSearch<'_> {
    fn rec(&mut self, k: usize) -> Step {
        self.meter.tick(k)?;
        let n = self.labels.len();
        if k == n {
            return Ok(true);
        }
        let l = self.labels[k];
        let capacity = self.coprime[l].count_ones() as usize;
        for i in 0..n {
            let v = self.order[i];
            if self.unlabeled >> v & 1 == 0 || self.g.degree(v) > capacity {
                continue;
            }
            if self.pendant_top && l == n && self.g.degree(v) != 1 {
                continue;
            }
            if bits(self.twins[v] & self.unlabeled).any(|w| self.rank[w] < self.rank[v]) {
                continue;
            }
            if bits(self.g.neighbor_mask(v) & !self.unlabeled)
                .any(|w| self.coprime[l] >> self.label[w] & 1 == 0)
            {
                continue;
            }
            self.label[v] = l;
            self.unlabeled &= !(1 << v);
            if self.rec(k + 1)? {
                return Ok(true);
            }
            self.label[v] = NONE;
            self.unlabeled |= 1 << v;
        }
        Ok(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Element {
    Node(usize),
    Edge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "result")]
pub enum AttractOutcome {
    Attractive { witness: Labeling },
    Repelling,
    /// No graceful labeling exists at all, so every label is repelled.
    NonGraceful,
    BudgetExceeded,
}

impl AttractOutcome {
    pub fn is_attractive(&self) -> bool {
        matches!(self, AttractOutcome::Attractive { .. })
    }
}

pub fn attract(g: &Graph, element: Element, i: usize, budget: SearchBudget) -> Result<AttractOutcome> {
    let q = g.size();
    let constraints = match element {
        Element::Node(v) => {
            if v >= g.order() {
                return Err(Error::NodeOutOfRange {
                    node: v,
                    order: g.order(),
                });
            }
            if i > q {
                return precondition(format!("node label {i} outside 0..={q}"));
            }
            GracefulConstraints {
                fixed: vec![(v, i)],
                edge: None,
            }
        }
        Element::Edge(u, v) => GracefulConstraints {
            fixed: Vec::new(),
            edge: Some((u, v, i)),
        },
    };
    let out = find_graceful_with(g, budget, &constraints)?;
    Ok(match out.status {
        Status::Found => AttractOutcome::Attractive {
            witness: out.witness.expect("found outcome carries a witness"),
        },
        Status::BudgetExceeded => AttractOutcome::BudgetExceeded,
        Status::Exhausted => match find_graceful(g, budget)?.status {
            Status::Found => AttractOutcome::Repelling,
            Status::Exhausted => AttractOutcome::NonGraceful,
            Status::BudgetExceeded => AttractOutcome::BudgetExceeded,
        },
    })
}

/// Labels `0..=q` (node mode) or `1..=q` (edge mode) the element attracts.
pub fn attractive_labels(g: &Graph, element: Element, budget: SearchBudget) -> Result<Vec<usize>> {
    let lo = matches!(element, Element::Edge(..)) as usize;
    let mut out = Vec::new();
    for i in lo..=g.size() {
        match attract(g, element, i, budget)? {
            AttractOutcome::Attractive { .. } => out.push(i),
            AttractOutcome::BudgetExceeded => return Err(Error::BudgetExceeded),
            _ => {}
        }
    }
    Ok(out)
}

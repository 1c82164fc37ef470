//! Named graph families and graph combinators.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn bad(family: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameters {
        family: family.into(),
        reason: reason.into(),
    }
}

fn want(family: &str, params: &[usize], n: usize) -> Result<()> {
    if params.len() < n {
        Err(bad(family, format!("expected {n} parameter(s)")))
    } else {
        Ok(())
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::new(n, &e)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(bad("cycle", "needs n >= 3"));
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &e)
}

/// Path with `n` edges (`n + 1` nodes).
pub fn path(n: usize) -> Result<Graph> {
    let e: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
    Graph::new(n + 1, &e)
}

/// `K_{1,n}` with the centre at node 0.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(bad("star", "needs n >= 1"));
    }
    let e: Vec<_> = (1..=n).map(|i| (0, i)).collect();
    Graph::new(n + 1, &e)
}

pub fn complete_bipartite(r: usize, s: usize) -> Result<Graph> {
    if r == 0 || s == 0 {
        return Err(bad("completeBipartite", "parts must be non-empty"));
    }
    let mut e = Vec::new();
    for u in 0..r {
        for v in 0..s {
            e.push((u, r + v));
        }
    }
    Graph::new(r + s, &e)
}

/// `K_1 + C_n`: hub 0, rim `1..=n`.
pub fn wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(bad("wheel", "needs n >= 3"));
    }
    join(&complete(1)?, &cycle(n)?)
}

/// `K_2 × C_n`.
pub fn prism(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(bad("prism", "needs n >= 3"));
    }
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((n + i, n + (i + 1) % n));
        e.push((i, n + i));
    }
    Graph::new(2 * n, &e)
}

pub fn hypercube(d: usize) -> Result<Graph> {
    if d == 0 || d > 6 {
        return Err(bad("hypercube", "dimension must be 1..=6"));
    }
    let n = 1usize << d;
    let mut e = Vec::new();
    for u in 0..n {
        for b in 0..d {
            let v = u ^ (1 << b);
            if u < v {
                e.push((u, v));
            }
        }
    }
    Graph::new(n, &e)
}

/// Generalized Petersen graph `GP(n, k)`.
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k == 0 || 2 * k >= n {
        return Err(bad("generalizedPetersen", "needs n >= 3, 0 < k < n/2"));
    }
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((i, n + i));
        e.push((n + i, n + (i + k) % n));
    }
    Graph::new(2 * n, &e)
}

pub fn petersen() -> Graph {
    generalized_petersen(5, 2).expect("valid parameters")
}

fn icosahedron() -> Result<Graph> {
    // top 0, upper ring 1..=5, lower ring 6..=10, bottom 11
    let mut e = Vec::new();
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let lo = 6 + i;
        let lo_next = 6 + (i + 1) % 5;
        e.extend([(0, up), (up, up_next), (lo, lo_next), (lo, 11)]);
        e.extend([(up, lo), (up, lo_next)]);
    }
    Graph::new(12, &e)
}

/// Platonic solid graphs, selected by vertex count (4, 6, 8, 12, 20).
pub fn platonic(vertices: usize) -> Result<Graph> {
    match vertices {
        4 => complete(4),
        6 => {
            let mut e = Vec::new();
            for u in 0..6 {
                for v in u + 1..6 {
                    if v != u + 3 {
                        e.push((u, v));
                    }
                }
            }
            Graph::new(6, &e)
        }
        8 => hypercube(3),
        12 => icosahedron(),
        20 => generalized_petersen(10, 2),
        _ => Err(bad("platonic", "vertex count must be 4, 6, 8, 12 or 20")),
    }
}

/// How `H(l, m, n)` combines `m K_l` with the edgeless graph on `n` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HProduct {
    Join,
    Cartesian,
}

pub fn h_family(l: usize, m: usize, n: usize, product: HProduct) -> Result<Graph> {
    if l == 0 || m == 0 || n == 0 {
        return Err(bad("H", "l, m, n must be positive"));
    }
    let k = complete(l)?;
    let mut copies = k.clone();
    for _ in 1..m {
        copies = disjoint_union(&copies, &k)?;
    }
    match product {
        HProduct::Join => join(&copies, &Graph::empty(n)?),
        HProduct::Cartesian => {
            let mut g = copies.clone();
            for _ in 1..n {
                g = disjoint_union(&g, &copies)?;
            }
            Ok(g)
        }
    }
}

/// `K_{n,n}` minus a perfect matching.
pub fn bnn(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(bad("Bnn", "needs n >= 2"));
    }
    let mut e = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                e.push((i, n + j));
            }
        }
    }
    Graph::new(2 * n, &e)
}

/// Builds a graph from a family name and integer parameters.
pub fn generate(family: &str, params: &[usize]) -> Result<Graph> {
    let f = family;
    match family {
        "complete" => {
            want(f, params, 1)?;
            if params[0] == 0 {
                return Err(bad(f, "needs n >= 1"));
            }
            complete(params[0])
        }
        "cycle" => {
            want(f, params, 1)?;
            cycle(params[0])
        }
        "pathEdges" | "path" => {
            want(f, params, 1)?;
            path(params[0])
        }
        "star" => {
            want(f, params, 1)?;
            star(params[0])
        }
        "completeBipartite" => {
            want(f, params, 2)?;
            complete_bipartite(params[0], params[1])
        }
        "wheel" => {
            want(f, params, 1)?;
            wheel(params[0])
        }
        "prism" => {
            want(f, params, 1)?;
            prism(params[0])
        }
        "hypercube" => {
            want(f, params, 1)?;
            hypercube(params[0])
        }
        "petersen" => Ok(petersen()),
        "dodecahedron" => platonic(20),
        "platonic" => {
            want(f, params, 1)?;
            platonic(params[0])
        }
        "H" => {
            want(f, params, 3)?;
            let product = match params.get(3) {
                None | Some(0) => HProduct::Join,
                Some(1) => HProduct::Cartesian,
                Some(_) => return Err(bad(f, "fourth parameter selects 0 = join, 1 = cartesian")),
            };
            h_family(params[0], params[1], params[2], product)
        }
        "Bnn" => {
            want(f, params, 1)?;
            bnn(params[0])
        }
        "empty" => {
            want(f, params, 1)?;
            Graph::empty(params[0])
        }
        _ => Err(Error::UnknownFamily(family.into())),
    }
}

/// Parses `family:a,b,c` (parameters optional).
pub fn parse_generator(expr: &str) -> Result<Graph> {
    let (name, rest) = expr.split_once(':').unwrap_or((expr, ""));
    let params = rest
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad parameter `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    generate(name.trim(), &params)
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let p = g.order();
    let mut e = g.edges().to_vec();
    e.extend(h.edges().iter().map(|&(u, v)| (u + p, v + p)));
    Graph::new(p + h.order(), &e)
}

/// `G + H`: disjoint union plus every edge between the two parts.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let p = g.order();
    let mut e = g.edges().to_vec();
    e.extend(h.edges().iter().map(|&(u, v)| (u + p, v + p)));
    for u in 0..p {
        for v in 0..h.order() {
            e.push((u, p + v));
        }
    }
    Graph::new(p + h.order(), &e)
}

/// Identifies node `u` of `g` with node `v` of `h`. Nodes of `g` keep their
/// indices; the remaining nodes of `h` follow in increasing order.
pub fn coalesce(g: &Graph, u: usize, h: &Graph, v: usize) -> Result<Graph> {
    if u >= g.order() {
        return Err(Error::NodeOutOfRange {
            node: u,
            order: g.order(),
        });
    }
    if v >= h.order() {
        return Err(Error::NodeOutOfRange {
            node: v,
            order: h.order(),
        });
    }
    let map = coalesce_map(g.order(), u, h.order(), v);
    let mut e = g.edges().to_vec();
    e.extend(h.edges().iter().map(|&(a, b)| (map[a], map[b])));
    Graph::new(g.order() + h.order() - 1, &e)
}

/// Where each node of `h` lands after [`coalesce`].
pub fn coalesce_map(g_order: usize, u: usize, h_order: usize, v: usize) -> Vec<usize> {
    let mut next = g_order;
    (0..h_order)
        .map(|w| {
            if w == v {
                u
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

/// Combinator by name: `disjointUnion`, `join`, `coalesce` (args `[u, v]`).
pub fn combine(op: &str, g: &Graph, h: &Graph, args: &[usize]) -> Result<Graph> {
    match op {
        "disjointUnion" => disjoint_union(g, h),
        "join" => join(g, h),
        "coalesce" => {
            want(op, args, 2)?;
            coalesce(g, args[0], h, args[1])
        }
        _ => Err(Error::InvalidParameters {
            family: op.into(),
            reason: "unknown combinator".into(),
        }),
    }
}

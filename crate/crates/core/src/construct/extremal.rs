//! Sparse graphs whose independence number rules out a prime labeling.

use serde::{Deserialize, Serialize};

use crate::classify::independence_number;
use crate::error::{Error, Result};
use crate::families::{complete, cycle, disjoint_union};
use crate::graph::{Graph, MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ExtremalVariant {
    /// `n = 2t + 6`: two triangles joined by a path through `2t` nodes.
    ConnectedEven,
    /// `n = 4t + 1`: three chained triangles, `4(t − 2)` connector nodes.
    ConnectedOneModFour,
    /// `n = 4t + 3`: three chained triangles, `4t − 6` connector nodes.
    ConnectedThreeModFour,
    /// `tK_3`, `(t − 1)K_3 ∪ C_4` or `(t − 1)K_3 ∪ C_5` by `n mod 3`.
    Disconnected,
}

impl std::str::FromStr for ExtremalVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connectedEven" => Ok(ExtremalVariant::ConnectedEven),
            "connectedOneModFour" => Ok(ExtremalVariant::ConnectedOneModFour),
            "connectedThreeModFour" => Ok(ExtremalVariant::ConnectedThreeModFour),
            "disconnected" => Ok(ExtremalVariant::Disconnected),
            _ => Err(Error::Parse(format!("unknown extremal variant `{s}`"))),
        }
    }
}

fn bad(n: usize, reason: &str) -> Error {
    Error::InvalidParameters {
        family: "nonPrimeExtremal".into(),
        reason: format!("n = {n}: {reason}"),
    }
}

/// Triangles chained left to right; connector `i` joins triangle `i` to
/// triangle `i + 1` through `lengths[i]` internal nodes.
fn chained_triangles(lengths: &[usize]) -> Result<Graph> {
    let k = lengths.len() + 1;
    let n = 3 * k + lengths.iter().sum::<usize>();
    let mut edges = Vec::new();
    for i in 0..k {
        let b = 3 * i;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
    }
    let mut next = 3 * k;
    for (i, &len) in lengths.iter().enumerate() {
        // leave triangle i at its last node, enter triangle i+1 at its first
        let mut prev = 3 * i + 2;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 3 * (i + 1)));
    }
    Graph::new(n, &edges)
}

/// Builds the family member of order `n` and asserts its size and
/// `β₀ < ⌊n/2⌋`.
pub fn non_prime_extremal(n: usize, variant: ExtremalVariant) -> Result<Graph> {
    if n > MAX_ORDER {
        return Err(Error::InvalidOrder { got: n, max: MAX_ORDER });
    }
    let (g, size) = match variant {
        ExtremalVariant::ConnectedEven => {
            if n < 8 || n % 2 == 1 {
                return Err(bad(n, "needs n = 2t + 6 with t >= 1"));
            }
            (chained_triangles(&[n - 6])?, n + 1)
        }
        ExtremalVariant::ConnectedOneModFour => {
            if n < 9 || n % 4 != 1 {
                return Err(bad(n, "needs n = 4t + 1 with t >= 2"));
            }
            let inner = n - 9;
            (chained_triangles(&[inner / 2, inner / 2])?, n + 2)
        }
        ExtremalVariant::ConnectedThreeModFour => {
            if n < 11 || n % 4 != 3 {
                return Err(bad(n, "needs n = 4t + 3 with t >= 2"));
            }
            let inner = n - 9;
            (chained_triangles(&[inner / 2 + 1, inner / 2 - 1])?, n + 2)
        }
        ExtremalVariant::Disconnected => {
            let (t, tail) = match n % 3 {
                0 if n >= 6 => (n / 3, None),
                1 if n >= 10 => (n / 3, Some(4)),
                2 if n >= 8 => (n / 3, Some(5)),
                _ => return Err(bad(n, "needs n = 3t (t >= 2), 3t + 1 (t >= 3) or 3t + 2 (t >= 2)")),
            };
            let triangles = if tail.is_some() { t - 1 } else { t };
            let mut g = complete(3)?;
            for _ in 1..triangles {
                g = disjoint_union(&g, &complete(3)?)?;
            }
            if let Some(c) = tail {
                g = disjoint_union(&g, &cycle(c)?)?;
            }
            (g, n)
        }
    };
    if g.order() != n || g.size() != size {
        return Err(Error::SelfCheck(format!(
            "built a ({}, {}) graph, expected ({n}, {size})",
            g.order(),
            g.size()
        )));
    }
    let beta = independence_number(&g);
    if beta >= n / 2 {
        return Err(Error::SelfCheck(format!("independence number {beta} is not below {}", n / 2)));
    }
    Ok(g)
}

//! Self-verifying constructions: labeled extensions, graceful and total
//! embeddings, and extremal non-prime families.
//!
//! Every public operation re-checks its output with [`labeling::check`] and
//! returns [`Error::SelfCheck`] if the check fails.

mod embed;
mod extend;
mod extremal;
mod total;

pub use embed::{
    embed_graceful, embed_graceful_optimal, free_label_host, merge_components, EmbedStrategy, OptimalEmbedding,
};
pub use extend::{
    alpha_unicyclic, bump_top_and_complete, general_extend, general_extend_search, glue_alpha,
    replicate_partition, shifted_alpha_extend, unicyclic_from_tree, AlphaClose, AlphaShift,
    Attachment, AttachmentSpec, ExtendBounds, UnicyclicOutput,
};
pub use extremal::{non_prime_extremal, ExtremalVariant};
pub use total::{
    apex_graceful, embed_supergraceful, grow_pendants, semitotal_normalize, tree_total_from_graceful,
    PendantMode, SupergracefulMode,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::labeling::{self, Labeling, LabelingKind};

/// A host graph containing the guest through `injection`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "EmbeddingRepr", try_from = "EmbeddingRepr")]
pub struct EmbeddingResult {
    pub host: Graph,
    pub host_labeling: Labeling,
    /// Guest node `i` sits at host node `injection[i]`.
    pub injection: Vec<usize>,
    pub induced: bool,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingRepr {
    host: String,
    labeling: Labeling,
    injection: Vec<usize>,
    induced: bool,
}

impl From<EmbeddingResult> for EmbeddingRepr {
    fn from(e: EmbeddingResult) -> Self {
        EmbeddingRepr {
            host: graph6::encode(&e.host),
            labeling: e.host_labeling,
            injection: e.injection,
            induced: e.induced,
        }
    }
}

impl TryFrom<EmbeddingRepr> for EmbeddingResult {
    type Error = Error;

    fn try_from(r: EmbeddingRepr) -> Result<Self> {
        let host = graph6::decode(&r.host)?;
        r.labeling.ensure_total(&host)?;
        Ok(EmbeddingResult {
            host,
            host_labeling: r.labeling,
            injection: r.injection,
            induced: r.induced,
        })
    }
}

impl EmbeddingResult {
    /// Checks injectivity, edge preservation, the induced flag and the
    /// host labeling against `kind`.
    pub fn verify(&self, guest: &Graph, kind: LabelingKind) -> Result<()> {
        let p = guest.order();
        if self.injection.len() != p {
            return Err(Error::SelfCheck(format!(
                "injection has {} entries for a guest of order {p}",
                self.injection.len()
            )));
        }
        let mut seen = vec![false; self.host.order()];
        for &h in &self.injection {
            if h >= self.host.order() || std::mem::replace(&mut seen[h], true) {
                return Err(Error::SelfCheck(format!("injection is not injective at host node {h}")));
            }
        }
        for u in 0..p {
            for v in u + 1..p {
                let hosted = self.host.has_edge(self.injection[u], self.injection[v]);
                if guest.has_edge(u, v) && !hosted {
                    return Err(Error::SelfCheck(format!("guest edge ({u}, {v}) is not preserved")));
                }
                if self.induced && !guest.has_edge(u, v) && hosted {
                    return Err(Error::SelfCheck(format!(
                        "guest non-edge ({u}, {v}) is an edge of the host"
                    )));
                }
            }
        }
        verified(&self.host, &self.host_labeling, kind)
    }

    /// Whether guest non-edges stay non-edges in the host.
    fn compute_induced(host: &Graph, guest: &Graph, injection: &[usize]) -> bool {
        let p = guest.order();
        (0..p).all(|u| {
            (u + 1..p).all(|v| guest.has_edge(u, v) || !host.has_edge(injection[u], injection[v]))
        })
    }
}

pub(crate) fn verified(g: &Graph, phi: &Labeling, kind: LabelingKind) -> Result<()> {
    let v = labeling::check(g, phi, kind)?;
    if v.ok {
        Ok(())
    } else {
        Err(Error::SelfCheck(format!("{kind:?} check failed: {:?}", v.violations)))
    }
}

/// Builds a graph and labeling and returns them only if `kind` holds.
pub(crate) fn checked(
    order: usize,
    edges: &[(usize, usize)],
    labels: Vec<usize>,
    kind: LabelingKind,
) -> Result<(Graph, Labeling)> {
    let g = Graph::new(order, edges)?;
    let phi = Labeling::new(labels);
    verified(&g, &phi, kind)?;
    Ok((g, phi))
}

//! Exact search, verification and construction for graceful, total and
//! prime labelings of small graphs.

pub mod audit;
pub mod canon;
pub mod census;
pub mod classify;
pub mod conditions;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod labeling;
pub mod primegraph;
pub mod search;
pub mod treegen;

pub use canon::{canonical_form, canonical_key, CanonicalKey};
pub use error::{Error, Result};
pub use graph::Graph;
pub use labeling::{Labeling, LabelingKind};

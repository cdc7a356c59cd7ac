//! Decomposition graphs up to Möbius conjugacy, their CW completion and homology.

mod conj;
mod graph;
mod homology;

pub use conj::{centered, conjugate_maps, Conjugacy, Fingerprint};
pub use graph::{build_graph, export_graph, DecGraph, Edge, GraphBudget, GraphFormat, MapClass};
pub use homology::{bare_complex, cw_complete, homology, smith_invariants, CWComplex, HomologyResult};

//! Hom complexes of graphs and the collapses induced by graph folds.
//!
//! A fold `G -> G - v` (deleting a vertex whose neighborhood is contained in
//! another's) yields explicit elementary collapse sequences from
//! `Hom(G, H)` to `Hom(G - v, H)` and from `Hom(H, G)` to `Hom(H, G - v)`.
//! This crate builds those sequences and checks them step by step.

pub mod closure;
pub mod error;
pub mod fixtures;
pub mod fold;
pub mod graph;
pub mod hom;
pub mod homology;
pub mod poset;
pub mod simplicial;
pub mod verify;

pub use closure::{
    collapse_sequence_from_closure, disconnected_graph_fixture, morse_matching_from_closure, verify_acyclic_matching,
    CollapseSequence, CollapseStep, Face, Matching, Mode,
};
pub use error::{Error, Result};
pub use fold::{first_arg_collapse, second_arg_collapse, FoldCollapsePlan, Side};
pub use graph::{parse_graph, Fold, FoldWitness, Graph, GraphHomomorphism, MAX_VERTICES};
pub use hom::{induced_contravariant, induced_covariant, HomCell, HomComplex, DEFAULT_MAX_CELLS};
pub use homology::{betti, BettiVector, ChainComplex, Coefficients};
pub use poset::{
    face_poset, order_complex, verify_closure_operator, ClosureReport, Direction, ElemId, Element, FacePoset, Poset,
    PosetMap,
};
pub use simplicial::SimplicialComplex;
pub use verify::{compare_collapse, compare_collapse_with, execute_collapses, Ambient, Verdict};

//! Finite graphs: cliques and gates, hyperplanes and sectors, recognition of paraclique, mediangle
//! and quasi-median graphs, quasi-cubulation, weighted clique metrics and well-separation.

pub mod axioms;
pub mod cliques;
pub mod embedding;
pub mod graph;
pub mod hyperplanes;
pub mod metric;
pub mod separation;

pub use axioms::{check_axioms, AxiomReport, Condition};
pub use cliques::{compute_cliques_and_gates, CliqueGraph, MAX_VERTICES};
pub use embedding::{
    hamming_embedding, qm_closure, quasi_cubulate, HammingEmbedding, PartitionSpace, QmClosure, QuasiCubulation, DEFAULT_ORIENTATION_BOUND,
};
pub use graph::{families, Distances, FiniteGraph};
pub use hyperplanes::{compute_hyperplanes, Bits, Hyperplane, HyperplaneStructure};
pub use metric::{delta_distance, CliqueMetrics, DeltaDistance};
pub use separation::{facing_triple, well_separated_check, WellSeparation};

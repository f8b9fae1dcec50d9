//! The category of noncrossing partitions with binary-forest morphisms.
//!
//! Objects are [`NoncrossingPartition`]s of `{1..n}`. A morphism from a
//! coarse partition to a finer one is a set of edge vectors forming an
//! augmented binary forest on the relative parallel sets. On top of this sit
//! a unipotent matrix functor, the cubical structure (factorization cubes,
//! first and last factors), vertex links with the flag test, and the
//! picture-group presentation.

pub mod category;
mod clique;
pub mod complex;
pub mod lattice;
pub mod forest;
pub mod matrix;
pub mod partition;
pub mod presentation;
pub mod verify;

pub use partition::{
    check_noncrossing, edge_set_in_kernel, edge_set_relative, enumerate_partitions, parallel_sets_relative,
    project, validate_noncrossing, Adjacency, BlockRef, CrossingWitness, EdgeVector, MergeError,
    NoncrossingPartition, ParallelSet, PartitionError, Projection,
};
pub use category::{
    compose, factorization_poset, first_factors, hom, is_cluster_morphism, last_factors, CategoryError,
    ClusterMorphism, FactorizationPoset, HomCache,
};
pub use complex::{cell_census, forward_link, vertex_link, ComplexError, SimplicialComplex};
pub use forest::{gcompatible, BinaryTree, ForestError, GVector};
pub use matrix::{g_matrix, reconstruct, MatrixError, UnipotentMatrix};
pub use presentation::{presentation, GroupPresentation, Letter, PresentationError, Word};
pub use verify::{Report, Suite};

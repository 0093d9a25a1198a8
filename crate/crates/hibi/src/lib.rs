//! Exact-arithmetic toolkit for the divisor theory of Hibi rings.
//!
//! Given a finite poset, this crate computes the lattice of conic divisorial
//! ideal classes of the associated Hibi ring, the full-dimensional cell of the
//! semi-open cube attached to each class, and the exact Euclidean volume of
//! those cells (the generalized F-signatures).  For Segre products of
//! polynomial rings it also produces the character set whose endomorphism ring
//! is a splitting NCCR, together with its mutations and the exchange graph of
//! generators.
//!
//! Everything runs over arbitrary-precision rationals; there is no floating
//! point anywhere in a computation path.

pub mod classgroup;
pub mod conic;
pub mod corpus;
pub mod geometry;
pub mod hasse;
pub mod lp;
pub mod matrix;
pub mod mutation;
pub mod poset;
pub mod rational;
pub mod segre;

pub use classgroup::{class_group_rank, project_divisor, tree_transform, DivisorClass, DivisorVector};
pub use conic::{cell_of, conic_oracle, conic_polytope, enumerate_conic, lift_class, Cell, ConicSystem};
pub use geometry::{
    eulerian, join_volume_check, signature_table, vertex_enumeration, volume, PolytopeVolume,
    SignatureTable, VPolytope,
};
pub use hasse::{
    choose_spanning_tree, cycle_partition, enumerate_circuits, fundamental_cycle, Cycle,
    CyclePartition, SpanningTree,
};
pub use lp::{strict_feasibility, Feasibility, LinearConstraint, Sense};
pub use matrix::{determinant, solve_linear_system, LinearSolution, RationalMatrix};
pub use poset::{is_pure, parse_poset, AugmentedPoset, Edge, Poset, Vertex};
pub use rational::Rational;
pub use segre::{
    in_l_tilde, is_rank_one_mcm, nccr_set, segre_conic_closed_form, segre_poset, segre_tree,
    Character, SegreSpec, WeightSystem,
};
pub use mutation::{
    canonicalize, exchange_graph, find_admissible_lambda, left_mutation, right_mutation,
    AdmissibleMutation, ExchangeGraph, NccrSet, OneParamSubgroup,
};

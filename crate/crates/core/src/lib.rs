//! Exact list coloring of `K_p ∨ K_{a,b}`: colorability, choosability,
//! generalized Ohba numbers `τ_s(a,b)`, the adversarial list assignments
//! that force them up, and integer-exact evaluation of their closed-form bounds.

pub mod bounds;
pub mod choosability;
pub mod constructions;
pub mod counting;
pub mod engine;
pub mod format;
pub mod model;

pub use model::{
    build_join, chromatic_number_join, Adjacency, Color, Coloring, GenericGraph, JoinGraph,
    ListAssignment, Vertex, VertexClass,
};

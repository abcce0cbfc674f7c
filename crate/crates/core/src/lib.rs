//! Verification toolkit for well-covered graph classes `W_p`, λ-quasi-
//! regularizability and independence polynomials.
//!
//! Graphs have at most 62 vertices and store one 64-bit adjacency row per
//! vertex. Vertices are 0-indexed internally; every report and every
//! `Display` of a [`VertexSet`] uses 1-indexed labels.

pub mod constructions;
pub mod criteria;
pub mod enumeration;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod quasireg;
pub mod rational;
pub mod wp;

pub use graph::{Graph, GraphError, VertexSet};
pub use graph6::{encode_graph6, parse_graph6, Graph6Error, Graph6Record};
pub use rational::{Lambda, Rational};

//! Critical groups of graphs with a reflective symmetry.

pub mod critical;
pub mod graph;
pub mod harness;
pub mod lattice;
pub mod modp;
pub mod registry;
pub mod symmetry;

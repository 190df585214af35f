//! The map `f: K(G+) + K(G-) -> K(G)` of a reflective symmetry, its kernel
//! and cokernel, and the dimension counts relating them.

mod bicycles;
mod maps;
mod report;
mod torsion;

pub use bicycles::{
    forsnake2_constructive_basis, g_injection, identify_kernel_cokernel, kernel_bases, log2_order,
    phi_fixed_bicycles, psi_fixed_bicycles, snake_report, BicycleIdentification, ForSnake2Basis, GInjection,
    KernelBases, SnakeReport,
};
pub use maps::{
    build_maps, induced_f_star, induced_ft_star, verify_lattice_preservation, PreservationReport,
    SymmetryMaps,
};
pub use report::{
    analyze_maps, equals_power_of_two_multiple, main_theorem_verdict, FactorizationReport, GroupPair,
    Hypotheses, SideCounts,
};
pub use torsion::{two_torsion_check, TwoTorsionReport};

use crate::critical::CriticalError;
use crate::graph::GraphError;
use crate::lattice::LatticeError;
use crate::modp::ModpError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Critical(#[from] CriticalError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Modp(#[from] ModpError),
    #[error("incomplete provenance: {0}")]
    Provenance(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("internal error: {0}")]
    Internal(&'static str),
}

#[cfg(test)]
mod tests;

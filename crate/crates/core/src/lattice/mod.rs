//! Exact integer linear algebra: Smith normal form, finitely presented
//! abelian groups, and homomorphisms between them.

mod group;
mod matrix;
mod snf;

pub use group::{
    bigint_string, element_order_and_torsion_check, group_of_type, hom_cokernel, hom_kernel,
    hom_well_defined, quotient_group, FpAbelianGroup, GroupHom, GroupType,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("hom matrix is {rows}x{cols} but groups have ambient ranks {from} -> {to}")]
    HomShape {
        rows: usize,
        cols: usize,
        from: usize,
        to: usize,
    },
    #[error("matrix does not carry source relations into target relations")]
    IllDefinedHom,
}

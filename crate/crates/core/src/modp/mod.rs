//! Linear algebra over Z/p for small primes `p`.

mod matrix;
mod subspace;

pub(crate) use matrix::check_prime;
pub use matrix::ModpMatrix;
pub use subspace::{
    fixed_subspace, intersect, kernel, row_space, sum, ModpSubspace, DEFAULT_ENUMERATION_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModpError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} does not fit byte entries")]
    ModulusTooLarge(u32),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not an involution")]
    NotAnInvolution,
    #[error("enumerating {p}^{dim} vectors exceeds the limit {limit}")]
    EnumerationLimit { dim: usize, p: u32, limit: u64 },
}

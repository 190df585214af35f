//! Critical groups of adjoint pairs `(d, d^t)` and of graphs, the Laplacian
//! presentation, morphisms between pairs, and `p`-bicycles.

mod morphism;
pub mod oracle;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::{boundary_matrix, Multigraph};
use crate::lattice::{quotient_group, smith_normal_form, FpAbelianGroup, IntMatrix, LatticeError};
use crate::modp::{intersect, kernel, row_space, ModpError, ModpMatrix, ModpSubspace};

pub use morphism::{
    complete_morphism, duality_order_check, induced_pair_morphism_map, DualityReport, InducedMap,
    Intertwining, PairMorphism,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriticalError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Modp(#[from] ModpError),
    #[error("second map is not the transpose of the first")]
    NotAdjoint,
    #[error("intertwining violated: {0}")]
    Intertwining(&'static str),
    #[error("cycle lattice not preserved")]
    CycleLatticeNotPreserved,
    #[error("bond lattice not preserved")]
    BondLatticeNotPreserved,
    #[error("image of the boundary is not a direct summand; no integral extension of f0 exists")]
    TorsionCokernel,
    #[error("the critical group via the Laplacian does not split off coker(d)")]
    NoSplitting,
}

/// Pair of mutually transpose integer maps `d: C1 -> C0`, `dt: C0 -> C1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointPair {
    d: IntMatrix,
    dt: IntMatrix,
}

impl AdjointPair {
    pub fn new(d: IntMatrix) -> Self {
        let dt = d.transpose();
        AdjointPair { d, dt }
    }

    /// Rejects `dt` unless it is exactly the transpose of `d`.
    pub fn from_parts(d: IntMatrix, dt: IntMatrix) -> Result<Self, CriticalError> {
        if dt != d.transpose() {
            return Err(CriticalError::NotAdjoint);
        }
        Ok(AdjointPair { d, dt })
    }

    pub fn from_graph(g: &Multigraph) -> Self {
        Self::new(boundary_matrix(g))
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    pub fn dt(&self) -> &IntMatrix {
        &self.dt
    }

    /// Rank of `C1` (number of edges for a graph).
    pub fn c1_rank(&self) -> usize {
        self.d.cols()
    }

    /// Rank of `C0` (number of vertices for a graph).
    pub fn c0_rank(&self) -> usize {
        self.d.rows()
    }

    pub fn laplacian(&self) -> IntMatrix {
        self.d.mul(&self.dt).expect("transpose shapes agree")
    }
}

/// Columns generating `Z = ker d`.
pub fn cycle_lattice(pair: &AdjointPair) -> IntMatrix {
    smith_normal_form(pair.d()).kernel_basis()
}

/// Columns generating `B = im d^t`.
pub fn bond_lattice(pair: &AdjointPair) -> IntMatrix {
    pair.dt().clone()
}

/// `K = C1 / (Z + B)`.
pub fn critical_group(pair: &AdjointPair) -> FpAbelianGroup {
    let gens = cycle_lattice(pair)
        .hstack(&bond_lattice(pair))
        .expect("both lattices live in C1");
    quotient_group(pair.c1_rank(), &gens).expect("generators live in C1")
}

/// `K` recovered from `coker(d d^t) = K + coker(d)`.
pub fn critical_group_via_laplacian(pair: &AdjointPair) -> Result<FpAbelianGroup, CriticalError> {
    let lap = quotient_group(pair.c0_rank(), &pair.laplacian())?;
    let cok = quotient_group(pair.c0_rank(), pair.d())?;
    let k = lap
        .normal_form()
        .cancel_summand(cok.normal_form())
        .ok_or(CriticalError::NoSplitting)?;
    Ok(crate::lattice::group_of_type(&k))
}

/// Number of maximal spanning forests: product of the nonzero invariant
/// factors of the Laplacian.
pub fn forest_count(g: &Multigraph) -> BigInt {
    let pair = AdjointPair::from_graph(g);
    smith_normal_form(&pair.laplacian())
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero())
        .fold(BigInt::one(), |acc, d| acc * d)
}

/// `Z ∩ B` reduced mod `p`.
pub fn p_bicycle_space(pair: &AdjointPair, p: u32) -> Result<ModpSubspace, CriticalError> {
    let d = ModpMatrix::from_int_matrix(pair.d(), p)?;
    Ok(intersect(&kernel(&d), &row_space(&d))?)
}

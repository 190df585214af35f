use num_bigint::BigInt;
use serde::Serialize;

use super::{
    build_maps, forsnake2_constructive_basis, g_injection, identify_kernel_cokernel, kernel_bases,
    snake_report, two_torsion_check, verify_lattice_preservation, BicycleIdentification, ForSnake2Basis,
    GInjection, KernelBases, PreservationReport, SnakeReport, SymmetryError, SymmetryMaps, TwoTorsionReport,
};
use crate::critical::{critical_group, critical_group_via_laplacian, forest_count, AdjointPair};
use crate::graph::{fixed_subgraph_components, Side, SymmetricGraph};
use crate::lattice::GroupType;

/// Which hypotheses of the factorization hold for a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub plus_connected: bool,
    pub has_fixed_vertex: bool,
    pub fixed_subgraph_forest: bool,
}

impl Hypotheses {
    /// Needed for the power-of-two ratio, the forest-count factorization
    /// and the bond-space dimensions.
    pub fn ratio_applies(&self) -> bool {
        self.plus_connected && self.has_fixed_vertex
    }

    /// Needed for the cokernel bicycles, the quotient presentations, the
    /// injection and the sum-space ratio.
    pub fn fixed_forest(&self) -> bool {
        self.fixed_subgraph_forest
    }

    /// Needed for the cycle-space count and its constructive basis.
    pub fn forest_applies(&self) -> bool {
        self.ratio_applies() && self.fixed_subgraph_forest
    }
}

/// A critical group computed by the quotient and by the Laplacian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPair {
    pub quotient: GroupType,
    pub laplacian: GroupType,
    /// Product of the nonzero invariant factors of the Laplacian.
    #[serde(serialize_with = "crate::lattice::bigint_string")]
    pub forests: BigInt,
}

impl GroupPair {
    fn of(pair: &AdjointPair, g: &crate::graph::Multigraph) -> Result<Self, SymmetryError> {
        Ok(GroupPair {
            quotient: critical_group(pair).normal_form().clone(),
            laplacian: critical_group_via_laplacian(pair)?.normal_form().clone(),
            forests: forest_count(g),
        })
    }

    pub fn agrees(&self) -> bool {
        self.quotient == self.laplacian && self.quotient.order().as_ref() == Some(&self.forests)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideCounts {
    pub left: usize,
    pub fixed: usize,
    pub right: usize,
}

/// Everything computed for one symmetric graph. Verdicts are methods, so
/// they are always derived from the stored data.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub vertices: SideCounts,
    pub edges: SideCounts,
    pub exponent: i64,
    pub hypotheses: Hypotheses,
    pub k_g: GroupPair,
    pub k_plus: GroupPair,
    pub k_minus: GroupPair,
    pub k_block: GroupType,
    pub preservation: PreservationReport,
    pub torsion: TwoTorsionReport,
    pub kernel_bases: KernelBases,
    pub bicycles: BicycleIdentification,
    pub injection: GInjection,
    pub snake: SnakeReport,
    pub forsnake2: Option<ForSnake2Basis>,
}

/// `lhs == 2^e * rhs` with `e` of either sign.
pub fn equals_power_of_two_multiple(lhs: &BigInt, rhs: &BigInt, e: i64) -> bool {
    if e >= 0 {
        *lhs == rhs << e as u64
    } else {
        (lhs << (-e) as u64) == *rhs
    }
}

impl FactorizationReport {
    fn order(g: &GroupType) -> BigInt {
        g.order().expect("critical groups are finite")
    }

    /// `|K(G+)| |K(G-)| |coker f*| = |K(G)| |ker f*|`
    pub fn exact_sequence(&self) -> bool {
        let lhs = Self::order(&self.k_plus.quotient)
            * Self::order(&self.k_minus.quotient)
            * Self::order(&self.torsion.coker_f);
        let rhs = Self::order(&self.k_g.quotient) * Self::order(&self.torsion.ker_f);
        lhs == rhs
            && Self::order(&self.k_block)
                == Self::order(&self.k_plus.quotient) * Self::order(&self.k_minus.quotient)
    }

    /// `|K(G)| / |K(G+) + K(G-)| = |coker f*| / |ker f*| = 2^exponent`
    pub fn ratio(&self) -> bool {
        let block = Self::order(&self.k_block);
        equals_power_of_two_multiple(&Self::order(&self.k_g.quotient), &block, self.exponent)
            && equals_power_of_two_multiple(
                &Self::order(&self.torsion.coker_f),
                &Self::order(&self.torsion.ker_f),
                self.exponent,
            )
    }

    /// `kappa(G) = 2^exponent kappa(G+) kappa(G-)` from Laplacian forest counts.
    pub fn corollary(&self) -> bool {
        equals_power_of_two_multiple(
            &self.k_g.forests,
            &(&self.k_plus.forests * &self.k_minus.forests),
            self.exponent,
        )
    }

    pub fn laplacian_agrees(&self) -> bool {
        self.k_g.agrees() && self.k_plus.agrees() && self.k_minus.agrees()
    }
}

fn side_counts(sides: impl Iterator<Item = Side>) -> SideCounts {
    let mut c = SideCounts {
        left: 0,
        fixed: 0,
        right: 0,
    };
    for s in sides {
        match s {
            Side::Left => c.left += 1,
            Side::Fixed => c.fixed += 1,
            Side::Right => c.right += 1,
        }
    }
    c
}

/// Full pipeline over a symmetric graph.
pub fn main_theorem_verdict(g: &SymmetricGraph) -> Result<FactorizationReport, SymmetryError> {
    let maps = build_maps(g)?;
    analyze_maps(&maps)
}

pub fn analyze_maps(maps: &SymmetryMaps) -> Result<FactorizationReport, SymmetryError> {
    let g = maps.graph();
    let dec = maps.decomposition();
    let hypotheses = Hypotheses {
        plus_connected: dec.plus.is_connected(),
        has_fixed_vertex: !g.vertices_on(Side::Fixed).is_empty(),
        fixed_subgraph_forest: fixed_subgraph_components(g).is_forest,
    };
    let torsion = two_torsion_check(maps)?;
    let forsnake2 = if hypotheses.ratio_applies() {
        Some(forsnake2_constructive_basis(maps)?)
    } else {
        None
    };
    let n = g.graph().vertex_count();
    let m = g.graph().edge_count();
    Ok(FactorizationReport {
        vertices: side_counts((0..n).map(|v| g.vertex_side(v))),
        edges: side_counts((0..m).map(|e| g.edge_side(e))),
        exponent: g.exponent(),
        hypotheses,
        k_g: GroupPair::of(maps.pair(), g.graph())?,
        k_plus: GroupPair::of(maps.plus_pair(), &dec.plus)?,
        k_minus: GroupPair::of(maps.minus_pair(), &dec.minus)?,
        k_block: critical_group(maps.block_pair()).normal_form().clone(),
        preservation: verify_lattice_preservation(maps)?,
        kernel_bases: kernel_bases(maps)?,
        bicycles: identify_kernel_cokernel(maps, &torsion)?,
        injection: g_injection(maps)?,
        snake: snake_report(maps, &torsion)?,
        torsion,
        forsnake2,
    })
}

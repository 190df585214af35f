use num_bigint::BigInt;
use serde::Serialize;

use super::SymmetryError;
use crate::critical::{critical_group, AdjointPair};
use crate::graph::{
    bond_vector_of_indices, canonical_orientation, decompose, Decomposition, EdgeVector, PlusEdgeOrigin,
    Side, SymmetricGraph,
};
use crate::lattice::{hom_well_defined, smith_normal_form, GroupHom, IntMatrix};
use crate::modp::ModpMatrix;

/// The map `f: Z(E+ u E-) -> ZE`, its transpose, and the involutions `psi`
/// (on `E+ u E-`) and `phi` (on `E`) over `Z/2`.
///
/// The block ambient lists `E+` first, then `E-`.
#[derive(Debug, Clone)]
pub struct SymmetryMaps {
    graph: SymmetricGraph,
    dec: Decomposition,
    f: IntMatrix,
    ft: IntMatrix,
    psi: ModpMatrix,
    phi_edges: ModpMatrix,
    pair: AdjointPair,
    plus_pair: AdjointPair,
    minus_pair: AdjointPair,
    block_pair: AdjointPair,
}

/// Orients `g` equivariantly, decomposes it and builds all four matrices.
pub fn build_maps(g: &SymmetricGraph) -> Result<SymmetryMaps, SymmetryError> {
    let graph = canonical_orientation(g)?;
    let dec = decompose(&graph)?;
    let m = graph.graph().edge_count();
    let n_plus = dec.plus.edge_count();
    let n_minus = dec.minus.edge_count();

    let mut f = IntMatrix::zeros(m, n_plus + n_minus);
    let mut psi = ModpMatrix::zeros(2, n_plus + n_minus, n_plus + n_minus)?;
    for (j, origin) in dec.plus_edge_origin.iter().enumerate() {
        match *origin {
            PlusEdgeOrigin::Left(e) => {
                let mirror = graph.phi_edge(e);
                f[(e, j)] += 1;
                f[(mirror, j)] += 1;
                let k = dec
                    .minus_edge_of_right(mirror)
                    .ok_or(SymmetryError::Provenance("left edge without a mirror in E-"))?;
                psi.set(j, n_plus + k, 1);
                psi.set(n_plus + k, j, 1);
            }
            PlusEdgeOrigin::Half { fixed, .. } => {
                f[(fixed, j)] += 1;
                let other =
                    dec.half_pairing[j].ok_or(SymmetryError::Provenance("half edge without its partner"))?;
                psi.set(j, other, 1);
            }
        }
    }
    for (k, &e) in dec.minus_edge_origin.iter().enumerate() {
        f[(e, n_plus + k)] += 1;
        f[(graph.phi_edge(e), n_plus + k)] -= 1;
    }

    let mut phi_edges = ModpMatrix::zeros(2, m, m)?;
    for e in 0..m {
        phi_edges.set(graph.phi_edge(e), e, 1);
    }

    let pair = AdjointPair::from_graph(graph.graph());
    let plus_pair = AdjointPair::from_graph(&dec.plus);
    let minus_pair = AdjointPair::from_graph(&dec.minus);
    let block_pair = AdjointPair::new(plus_pair.d().block_diag(minus_pair.d()));
    Ok(SymmetryMaps {
        ft: f.transpose(),
        f,
        psi,
        phi_edges,
        graph,
        dec,
        pair,
        plus_pair,
        minus_pair,
        block_pair,
    })
}

impl SymmetryMaps {
    /// The canonically oriented input.
    pub fn graph(&self) -> &SymmetricGraph {
        &self.graph
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.dec
    }

    pub fn f(&self) -> &IntMatrix {
        &self.f
    }

    pub fn ft(&self) -> &IntMatrix {
        &self.ft
    }

    pub fn psi(&self) -> &ModpMatrix {
        &self.psi
    }

    pub fn phi_edges(&self) -> &ModpMatrix {
        &self.phi_edges
    }

    pub fn pair(&self) -> &AdjointPair {
        &self.pair
    }

    pub fn plus_pair(&self) -> &AdjointPair {
        &self.plus_pair
    }

    pub fn minus_pair(&self) -> &AdjointPair {
        &self.minus_pair
    }

    /// `(d+ (+) d-, d+^t (+) d-^t)`, whose critical group is `K(G+) + K(G-)`.
    pub fn block_pair(&self) -> &AdjointPair {
        &self.block_pair
    }

    pub fn plus_edges(&self) -> usize {
        self.dec.plus.edge_count()
    }

    pub fn block_edges(&self) -> usize {
        self.dec.plus.edge_count() + self.dec.minus.edge_count()
    }

    pub(crate) fn block_unit(&self, j: usize) -> Vec<BigInt> {
        EdgeVector::unit(self.block_edges(), j).0
    }
}

/// Outcome of the cycle and bond preservation checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub cycles_preserved: bool,
    pub bonds_preserved: bool,
    /// The five fundamental-bond identities, by name.
    pub identities: Vec<(&'static str, bool)>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.cycles_preserved && self.bonds_preserved && self.identities.iter().all(|(_, ok)| *ok)
    }
}

fn column_of(m: &IntMatrix, j: usize) -> EdgeVector {
    EdgeVector(m.column(j))
}

pub fn verify_lattice_preservation(maps: &SymmetryMaps) -> Result<PreservationReport, SymmetryError> {
    let block = maps.block_pair();
    let f = maps.f();
    let d = maps.pair().d();

    let z_block = smith_normal_form(block.d()).kernel_basis();
    let cycles_preserved = d.mul(&f.mul(&z_block)?)?.is_zero();
    let bond_images = f.mul(block.dt())?;
    let bonds_snf = smith_normal_form(maps.pair().dt());
    let bonds_preserved = (0..bond_images.cols()).all(|j| bonds_snf.solve(&bond_images.column(j)).is_some());

    let g = maps.graph();
    let graph = g.graph();
    let dec = maps.decomposition();
    let bond = |set: &[usize]| bond_vector_of_indices(graph, set);
    let n_plus_vertices = dec.plus.vertex_count();

    let mut subdivision = true;
    let mut fixed = true;
    let mut left = true;
    for (i, origin) in dec.plus_vertex_origin.iter().enumerate() {
        let image = column_of(&bond_images, i);
        match *origin {
            None => subdivision &= image.is_zero(),
            Some(v) if g.vertex_side(v) == Side::Fixed => fixed &= image == bond(&[v]),
            Some(v) => left &= image == bond(&[v]).add(&bond(&[g.phi_vertex(v)])),
        }
    }
    let mut contracted = true;
    let mut right = true;
    for (i, origin) in dec.minus_vertex_origin.iter().enumerate() {
        let image = column_of(&bond_images, n_plus_vertices + i);
        match *origin {
            None => {
                let expect = bond(&g.vertices_on(Side::Left)).sub(&bond(&g.vertices_on(Side::Right)));
                contracted &= image == expect;
            }
            Some(v) => right &= image == bond(&[v]).sub(&bond(&[g.phi_vertex(v)])),
        }
    }
    Ok(PreservationReport {
        cycles_preserved,
        bonds_preserved,
        identities: vec![
            ("subdivision vertex", subdivision),
            ("fixed vertex", fixed),
            ("left vertex", left),
            ("contracted vertex", contracted),
            ("right vertex", right),
        ],
    })
}

/// `f*: K(G+) + K(G-) -> K(G)`.
pub fn induced_f_star(maps: &SymmetryMaps) -> Result<GroupHom, SymmetryError> {
    let hom = GroupHom::new(
        critical_group(maps.block_pair()),
        critical_group(maps.pair()),
        maps.f().clone(),
    )?;
    if !hom_well_defined(&hom) {
        return Err(SymmetryError::Internal("f* is not well defined"));
    }
    Ok(hom)
}

/// `(f^t)*: K(G) -> K(G+) + K(G-)`.
pub fn induced_ft_star(maps: &SymmetryMaps) -> Result<GroupHom, SymmetryError> {
    let hom = GroupHom::new(
        critical_group(maps.pair()),
        critical_group(maps.block_pair()),
        maps.ft().clone(),
    )?;
    if !hom_well_defined(&hom) {
        return Err(SymmetryError::Internal("(f^t)* is not well defined"));
    }
    Ok(hom)
}

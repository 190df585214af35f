use num_bigint::BigInt;
use serde::Serialize;

use super::{induced_f_star, induced_ft_star, SymmetryError, SymmetryMaps};
use crate::critical::DualityReport;
use crate::graph::{EdgeVector, PlusEdgeOrigin, Side};
use crate::lattice::{hom_cokernel, hom_kernel, smith_normal_form, GroupType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoTorsionReport {
    pub ker_f: GroupType,
    pub coker_f: GroupType,
    pub ker_ft: GroupType,
    pub coker_ft: GroupType,
    /// `f(e, -phi(e)) = 2e` for every left edge.
    pub f_witness: bool,
    /// `f^t(e + phi(e)) = 2(e, 0)` and `f^t(phi(e) - e) = 2(0, phi(e))` for left `e`.
    pub ft_witness: bool,
    /// `f^t(e) = e' + e'' = 2e'` modulo `B+` for every fixed edge.
    pub fixed_witness: bool,
}

impl TwoTorsionReport {
    pub fn groups_killed_by_two(&self) -> bool {
        let two = BigInt::from(2);
        [&self.ker_f, &self.coker_f, &self.ker_ft, &self.coker_ft]
            .iter()
            .all(|g| g.is_killed_by(&two))
    }

    pub fn passed(&self) -> bool {
        self.groups_killed_by_two() && self.f_witness && self.ft_witness && self.fixed_witness
    }
}

pub fn two_torsion_check(maps: &SymmetryMaps) -> Result<TwoTorsionReport, SymmetryError> {
    let h = induced_f_star(maps)?;
    let ht = induced_ft_star(maps)?;
    let g = maps.graph();
    let m = g.graph().edge_count();
    let n_plus = maps.plus_edges();
    let dec = maps.decomposition();
    let f = maps.f();
    let ft = maps.ft();

    let mut f_witness = true;
    let mut ft_witness = true;
    for e in g.edges_on(Side::Left) {
        let mirror = g.phi_edge(e);
        let plus = dec
            .plus_edge_of_left(e)
            .ok_or(SymmetryError::Provenance("left edge"))?;
        let minus = dec
            .minus_edge_of_right(mirror)
            .ok_or(SymmetryError::Provenance("right edge"))?;
        let x = EdgeVector(maps.block_unit(plus)).sub(&EdgeVector(maps.block_unit(n_plus + minus)));
        f_witness &= EdgeVector(f.mul_vec(&x.0)?) == EdgeVector::unit(m, e).scale(2);

        let y = EdgeVector::unit(m, e).add(&EdgeVector::unit(m, mirror));
        ft_witness &= EdgeVector(ft.mul_vec(&y.0)?) == EdgeVector(maps.block_unit(plus)).scale(2);
        let y = EdgeVector::unit(m, mirror).sub(&EdgeVector::unit(m, e));
        ft_witness &= EdgeVector(ft.mul_vec(&y.0)?) == EdgeVector(maps.block_unit(n_plus + minus)).scale(2);
    }

    let bonds = smith_normal_form(maps.block_pair().dt());
    let mut fixed_witness = true;
    for (j, origin) in dec.plus_edge_origin.iter().enumerate() {
        if let PlusEdgeOrigin::Half { fixed, second: false } = *origin {
            let image = EdgeVector(ft.mul_vec(&EdgeVector::unit(m, fixed).0)?);
            let diff = image.sub(&EdgeVector(maps.block_unit(j)).scale(2));
            fixed_witness &= bonds.solve(&diff.0).is_some();
        }
    }

    Ok(TwoTorsionReport {
        ker_f: hom_kernel(&h)?.normal_form().clone(),
        coker_f: hom_cokernel(&h)?.normal_form().clone(),
        ker_ft: hom_kernel(&ht)?.normal_form().clone(),
        coker_ft: hom_cokernel(&ht)?.normal_form().clone(),
        f_witness,
        ft_witness,
        fixed_witness,
    })
}

impl TwoTorsionReport {
    /// `ker f* = coker (f^t)*` and `coker f* = ker (f^t)*` as isomorphism types.
    pub fn duality(&self) -> DualityReport {
        DualityReport {
            ker_h: self.ker_f.clone(),
            coker_ht: self.coker_ft.clone(),
            coker_h: self.coker_f.clone(),
            ker_ht: self.ker_ft.clone(),
        }
    }
}

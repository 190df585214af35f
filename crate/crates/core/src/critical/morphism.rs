use num_bigint::BigInt;
use num_traits::One;

use super::{critical_group, cycle_lattice, AdjointPair, CriticalError};
use crate::lattice::{
    hom_cokernel, hom_kernel, quotient_group, smith_normal_form, GroupHom, GroupType, IntMatrix, LatticeError,
};

/// Which intertwining conditions a pair of maps satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Intertwining {
    /// `f0 d = d' f1`
    pub first_exact: bool,
    /// `f1 d^t = d'^t f0` modulo `B'`
    pub second_mod_bond: bool,
    /// `f1 d^t = d'^t f0` on the nose
    pub second_strict: bool,
}

/// Morphism of adjoint pairs `(f1: C1 -> C1', f0: C0 -> C0')`.
#[derive(Debug, Clone)]
pub struct PairMorphism {
    source: AdjointPair,
    target: AdjointPair,
    f1: IntMatrix,
    f0: IntMatrix,
    intertwining: Intertwining,
}

fn check_shape(m: &IntMatrix, rows: usize, cols: usize) -> Result<(), CriticalError> {
    if m.rows() != rows || m.cols() != cols {
        return Err(LatticeError::HomShape {
            rows: m.rows(),
            cols: m.cols(),
            from: cols,
            to: rows,
        }
        .into());
    }
    Ok(())
}

/// Whether every column of `m` lies in the column span of `gens`.
fn columns_in_lattice(m: &IntMatrix, gens: &IntMatrix) -> bool {
    let snf = smith_normal_form(gens);
    (0..m.cols()).all(|j| snf.solve(&m.column(j)).is_some())
}

pub(crate) fn intertwining_of(
    source: &AdjointPair,
    target: &AdjointPair,
    f1: &IntMatrix,
    f0: &IntMatrix,
) -> Result<Intertwining, CriticalError> {
    check_shape(f1, target.c1_rank(), source.c1_rank())?;
    check_shape(f0, target.c0_rank(), source.c0_rank())?;
    let first_exact = f0.mul(source.d())? == target.d().mul(f1)?;
    let lhs = f1.mul(source.dt())?;
    let rhs = target.dt().mul(f0)?;
    let second_strict = lhs == rhs;
    let second_mod_bond = second_strict || columns_in_lattice(&lhs.sub(&rhs)?, target.dt());
    Ok(Intertwining {
        first_exact,
        second_mod_bond,
        second_strict,
    })
}

impl PairMorphism {
    /// Fails unless `f0 d = d' f1` exactly and `f1 d^t = d'^t f0` mod `B'`.
    pub fn new(
        source: AdjointPair,
        target: AdjointPair,
        f1: IntMatrix,
        f0: IntMatrix,
    ) -> Result<Self, CriticalError> {
        let intertwining = intertwining_of(&source, &target, &f1, &f0)?;
        if !intertwining.first_exact {
            return Err(CriticalError::Intertwining("f0 d differs from d' f1"));
        }
        if !intertwining.second_mod_bond {
            return Err(CriticalError::Intertwining(
                "f1 d^t differs from d'^t f0 modulo B'",
            ));
        }
        Ok(PairMorphism {
            source,
            target,
            f1,
            f0,
            intertwining,
        })
    }

    pub fn source(&self) -> &AdjointPair {
        &self.source
    }

    pub fn target(&self) -> &AdjointPair {
        &self.target
    }

    pub fn f1(&self) -> &IntMatrix {
        &self.f1
    }

    pub fn f0(&self) -> &IntMatrix {
        &self.f0
    }

    pub fn intertwining(&self) -> Intertwining {
        self.intertwining
    }

    /// The adjoint morphism `(f1^t, f0^t)` from target to source.
    pub fn transpose(&self) -> Result<PairMorphism, CriticalError> {
        PairMorphism::new(
            self.target.clone(),
            self.source.clone(),
            self.f1.transpose(),
            self.f0.transpose(),
        )
    }
}

/// The map `K -> K'` induced by a morphism.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub hom: GroupHom,
    /// For every basis edge `x`, the order of `f1 x` in `K'` equals the order
    /// of `f0 (d x)` in `coker(d' d'^t)`.
    pub order_agreement: bool,
}

pub fn induced_pair_morphism_map(m: &PairMorphism) -> Result<InducedMap, CriticalError> {
    let k = critical_group(&m.source);
    let k2 = critical_group(&m.target);
    let hom = GroupHom::new(k, k2, m.f1.clone())?;
    if !crate::lattice::hom_well_defined(&hom) {
        return Err(LatticeError::IllDefinedHom.into());
    }
    let lap = quotient_group(m.target.c0_rank(), &m.target.laplacian())?;
    let via_f0 = m.f0.mul(m.source.d())?;
    let order_agreement = (0..m.source.c1_rank())
        .all(|j| hom.target.element_order(&m.f1.column(j)) == lap.element_order(&via_f0.column(j)));
    Ok(InducedMap { hom, order_agreement })
}

/// Builds `f0` from `f1` by `f0(d x) := d' f1(x)`, extended by zero on a
/// complement of `im d`.
///
/// The extension needs `im d` to be a direct summand of `C0`, which holds
/// for every graph.
pub fn complete_morphism(
    f1: &IntMatrix,
    source: &AdjointPair,
    target: &AdjointPair,
) -> Result<PairMorphism, CriticalError> {
    check_shape(f1, target.c1_rank(), source.c1_rank())?;
    if !target.d().mul(f1)?.mul(&cycle_lattice(source))?.is_zero() {
        return Err(CriticalError::CycleLatticeNotPreserved);
    }
    if !columns_in_lattice(&f1.mul(source.dt())?, target.dt()) {
        return Err(CriticalError::BondLatticeNotPreserved);
    }
    let snf = smith_normal_form(source.d());
    let diag = snf.diagonal();
    let r = snf.rank();
    if diag[..r].iter().any(|x| !x.is_one()) {
        return Err(CriticalError::TorsionCokernel);
    }
    // Right inverse of d on im d: V diag(1..1, 0..0) U.
    let mut proj = IntMatrix::zeros(source.c1_rank(), source.c0_rank());
    for i in 0..r {
        proj[(i, i)] = BigInt::one();
    }
    let section = snf.v.mul(&proj)?.mul(&snf.u)?;
    let f0 = target.d().mul(f1)?.mul(&section)?;
    PairMorphism::new(source.clone(), target.clone(), f1.clone(), f0)
}

/// Isomorphism types on both sides of `ker h = coker ht`, `coker h = ker ht`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub ker_h: GroupType,
    pub coker_ht: GroupType,
    pub coker_h: GroupType,
    pub ker_ht: GroupType,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.ker_h == self.coker_ht && self.coker_h == self.ker_ht
    }
}

pub fn duality_order_check(h: &GroupHom, ht: &GroupHom) -> Result<DualityReport, LatticeError> {
    Ok(DualityReport {
        ker_h: hom_kernel(h)?.normal_form().clone(),
        coker_ht: hom_cokernel(ht)?.normal_form().clone(),
        coker_h: hom_cokernel(h)?.normal_form().clone(),
        ker_ht: hom_kernel(ht)?.normal_form().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::tests::{cycle, running_example};
    use crate::graph::Multigraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k4() -> Multigraph {
        let v = ["0", "1", "2", "3"];
        let mut edges = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((format!("e{i}{j}"), v[i].to_string(), v[j].to_string()));
            }
        }
        let v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        Multigraph::from_parts(&v, &edges).unwrap()
    }

    #[test]
    fn identity_completes_to_identity() {
        let pair = AdjointPair::from_graph(&running_example());
        let id = IntMatrix::identity(pair.c1_rank());
        let m = complete_morphism(&id, &pair, &pair).unwrap();
        assert_eq!(m.f0().mul(pair.d()).unwrap(), *pair.d());
        assert!(m.intertwining().second_mod_bond);
        let ind = induced_pair_morphism_map(&m).unwrap();
        assert_eq!(ind.hom.matrix, id);
        assert!(ind.order_agreement);
        let dual = duality_order_check(&ind.hom, &ind.hom).unwrap();
        assert!(dual.passed());
        assert!(dual.ker_h.is_trivial() && dual.coker_h.is_trivial());
    }

    #[test]
    fn explicit_identity_is_strict() {
        let pair = AdjointPair::from_graph(&cycle(4));
        let m = PairMorphism::new(
            pair.clone(),
            pair.clone(),
            IntMatrix::identity(4),
            IntMatrix::identity(4),
        )
        .unwrap();
        assert!(m.intertwining().second_strict);
        assert!(m.transpose().is_ok());
        let bad = PairMorphism::new(pair.clone(), pair, IntMatrix::identity(4), IntMatrix::zeros(4, 4));
        assert!(matches!(bad, Err(CriticalError::Intertwining(_))));
    }

    #[test]
    fn scaling_scales_the_induced_map() {
        let pair = AdjointPair::from_graph(&running_example());
        let id = IntMatrix::identity(pair.c1_rank());
        let two = id.scale(&BigInt::from(2));
        let m1 = induced_pair_morphism_map(&complete_morphism(&id, &pair, &pair).unwrap()).unwrap();
        let m2 = induced_pair_morphism_map(&complete_morphism(&two, &pair, &pair).unwrap()).unwrap();
        let k = &m1.hom.target;
        for j in 0..pair.c1_rank() {
            let a = m2.hom.apply(&IntMatrix::identity(5).column(j)).unwrap();
            let b: Vec<BigInt> = m1
                .hom
                .apply(&IntMatrix::identity(5).column(j))
                .unwrap()
                .iter()
                .map(|x| x * 2)
                .collect();
            let diff: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            assert!(k.is_zero_element(&diff));
        }
        // Multiplication by 2 on Z/8 has kernel and cokernel Z/2.
        let dual = duality_order_check(&m2.hom, &m2.hom).unwrap();
        assert!(dual.passed());
        assert_eq!(dual.ker_h, GroupType::cyclic(2));
    }

    #[test]
    fn lattice_conditions_enforced() {
        let pair = AdjointPair::from_graph(&k4());
        let mut proj = IntMatrix::zeros(6, 6);
        proj[(0, 0)] = BigInt::one();
        assert_eq!(
            complete_morphism(&proj, &pair, &pair).err(),
            Some(CriticalError::CycleLatticeNotPreserved)
        );

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut rejected = 0;
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..6)
                .map(|_| (0..6).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            if complete_morphism(&IntMatrix::from_rows(&rows), &pair, &pair).is_err() {
                rejected += 1;
            }
        }
        assert_eq!(rejected, 20);

        // x -> (x0, x0, x0) keeps the cycle of a triangle but not its bonds.
        let tri = AdjointPair::from_graph(&cycle(3));
        let f1 = IntMatrix::from_rows(&[[1, 0, 0], [1, 0, 0], [1, 0, 0]]);
        assert_eq!(
            complete_morphism(&f1, &tri, &tri).err(),
            Some(CriticalError::BondLatticeNotPreserved)
        );
    }

    #[test]
    fn torsion_cokernel_rejected() {
        let pair = AdjointPair::new(IntMatrix::from_rows(&[[2]]));
        assert_eq!(
            complete_morphism(&IntMatrix::identity(1), &pair, &pair).err(),
            Some(CriticalError::TorsionCokernel)
        );
    }

    #[test]
    fn zero_map_is_a_morphism() {
        let pair = AdjointPair::from_graph(&cycle(5));
        let z = IntMatrix::zeros(5, 5);
        let m = complete_morphism(&z, &pair, &pair).unwrap();
        assert!(m.f0().is_zero());
        assert!(induced_pair_morphism_map(&m).unwrap().order_agreement);
    }
}

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{smith_normal_form, IntMatrix, LatticeError, SmithDecomposition};

/// Isomorphism type of a finitely generated abelian group:
/// `Z/d_1 + ... + Z/d_k + Z^free_rank` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupType {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl GroupType {
    pub fn trivial() -> Self {
        GroupType {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_factors(&[BigInt::from(n)], 0)
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning `Z`) into
    /// invariant-factor form.
    pub fn from_cyclic_factors(orders: &[BigInt], extra_free: usize) -> Self {
        let mut free_rank = extra_free;
        let mut primary: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&d) {
                primary
                    .entry(p.clone())
                    .or_default()
                    .push(num_traits::pow(p, e as usize));
            }
        }
        Self::from_primary(primary, free_rank)
    }

    fn from_primary(mut primary: BTreeMap<BigInt, Vec<BigInt>>, free_rank: usize) -> Self {
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![BigInt::one(); len];
        for powers in primary.values_mut() {
            powers.sort();
            // Largest powers go to the last factors.
            for (slot, q) in factors.iter_mut().rev().zip(powers.iter().rev()) {
                *slot *= q;
            }
        }
        GroupType {
            invariant_factors: factors,
            free_rank,
        }
    }

    /// Elementary divisors (prime powers), sorted.
    pub fn elementary_divisors(&self) -> Vec<(BigInt, u32)> {
        let mut out: Vec<(BigInt, u32)> = self.invariant_factors.iter().flat_map(factorize).collect();
        out.sort();
        out
    }

    /// The type of `A` given that `A + other == self`, if `other` is a direct summand
    /// at the level of isomorphism types.
    pub fn cancel_summand(&self, other: &GroupType) -> Option<GroupType> {
        if other.free_rank > self.free_rank {
            return None;
        }
        let mut remaining = self.elementary_divisors();
        for ed in other.elementary_divisors() {
            let pos = remaining.iter().position(|x| *x == ed)?;
            remaining.remove(pos);
        }
        let mut primary: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
        for (p, e) in remaining {
            let q = num_traits::pow(p.clone(), e as usize);
            primary.entry(p).or_default().push(q);
        }
        Some(Self::from_primary(primary, self.free_rank - other.free_rank))
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// `true` iff `k * x == 0` for every element.
    pub fn is_killed_by(&self, k: &BigInt) -> bool {
        self.free_rank == 0 && self.invariant_factors.iter().all(|d| k.is_multiple_of(d))
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl Serialize for GroupType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroupType", 4)?;
        let factors: Vec<String> = self.invariant_factors.iter().map(BigInt::to_string).collect();
        st.serialize_field("invariant_factors", &factors)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("order", &self.order().map(|n| n.to_string()))?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// Serializes an integer as a decimal string.
pub fn bigint_string<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Trial-division factorization; inputs in this crate are small.
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// `Z^n / L` where `L` is generated by the columns of `relations`.
#[derive(Clone, Debug)]
pub struct FpAbelianGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    witness: SmithDecomposition,
    normal_form: GroupType,
}

impl FpAbelianGroup {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn witness(&self) -> &SmithDecomposition {
        &self.witness
    }

    pub fn normal_form(&self) -> &GroupType {
        &self.normal_form
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.normal_form.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.normal_form.free_rank
    }

    pub fn order(&self) -> Option<BigInt> {
        self.normal_form.order()
    }

    /// Whether `x` lies in the relation lattice, i.e. represents zero.
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.witness.solve(x).is_some()
    }

    /// Order of the class of `x`; `None` if it has infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let y = self.witness.u.mul_vec(x).ok()?;
        let diag = self.witness.diagonal();
        let mut order = BigInt::one();
        for (i, yi) in y.iter().enumerate() {
            let d = diag.get(i).cloned().unwrap_or_default();
            if d.is_zero() {
                if !yi.is_zero() {
                    return None;
                }
            } else {
                let o = &d / d.gcd(yi);
                order = order.lcm(&o);
            }
        }
        Some(order)
    }
}

/// The group `Z^n / <columns of generators>` in invariant-factor form.
pub fn quotient_group(ambient_rank: usize, generators: &IntMatrix) -> Result<FpAbelianGroup, LatticeError> {
    if generators.rows() != ambient_rank {
        return Err(LatticeError::DimensionMismatch {
            expected: ambient_rank,
            found: generators.rows(),
        });
    }
    let witness = smith_normal_form(generators);
    let diag = witness.diagonal();
    let rank = witness.rank();
    let normal_form = GroupType {
        invariant_factors: diag[..rank].iter().filter(|d| !d.is_one()).cloned().collect(),
        free_rank: ambient_rank - rank,
    };
    Ok(FpAbelianGroup {
        ambient_rank,
        relations: generators.clone(),
        witness,
        normal_form,
    })
}

/// A presented group with the given isomorphism type.
pub fn group_of_type(t: &GroupType) -> FpAbelianGroup {
    let n = t.invariant_factors.len() + t.free_rank;
    let rel = IntMatrix::diagonal(n, t.invariant_factors.len(), &t.invariant_factors);
    quotient_group(n, &rel).expect("diagonal presentation has matching rows")
}

/// Homomorphism given by an integer matrix on ambient generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: FpAbelianGroup,
    pub target: FpAbelianGroup,
    pub matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(
        source: FpAbelianGroup,
        target: FpAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self, LatticeError> {
        if matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank() {
            return Err(LatticeError::HomShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                from: source.ambient_rank(),
                to: target.ambient_rank(),
            });
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    /// Image of an ambient source vector, as an ambient target vector.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        self.matrix.mul_vec(x)
    }
}

/// Checks that the matrix carries source relations into target relations.
pub fn hom_well_defined(h: &GroupHom) -> bool {
    let Ok(images) = h.matrix.mul(h.source.relations()) else {
        return false;
    };
    (0..images.cols()).all(|j| h.target.is_zero_element(&images.column(j)))
}

fn ensure_well_defined(h: &GroupHom) -> Result<(), LatticeError> {
    if hom_well_defined(h) {
        Ok(())
    } else {
        Err(LatticeError::IllDefinedHom)
    }
}

/// Columns generating the lattice `{ x : a * x in span(columns of b) }`.
fn preimage_lattice(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    let stacked = a.hstack(b)?;
    let kernel = smith_normal_form(&stacked).kernel_basis();
    Ok(kernel.top_rows(a.cols()))
}

/// `ker(h)` as an abstract group.
///
/// With `P` generating the preimage lattice `L` of the target relations,
/// `ker(h) = L / R_src` is presented as `Z^q / { c : P c in R_src }`.
pub fn hom_kernel(h: &GroupHom) -> Result<FpAbelianGroup, LatticeError> {
    ensure_well_defined(h)?;
    let p = preimage_lattice(&h.matrix, h.target.relations())?;
    let rel = preimage_lattice(&p, h.source.relations())?;
    quotient_group(p.cols(), &rel)
}

/// `coker(h)` = target ambient modulo target relations and the image.
pub fn hom_cokernel(h: &GroupHom) -> Result<FpAbelianGroup, LatticeError> {
    ensure_well_defined(h)?;
    let gens = h.target.relations().hstack(&h.matrix)?;
    quotient_group(h.target.ambient_rank(), &gens)
}

/// `true` iff `k` kills the group.
pub fn element_order_and_torsion_check(g: &FpAbelianGroup, k: u64) -> bool {
    g.normal_form().is_killed_by(&BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: i64) -> FpAbelianGroup {
        quotient_group(1, &IntMatrix::from_rows(&[[n]])).unwrap()
    }

    fn ty(factors: &[u64], free: usize) -> GroupType {
        GroupType {
            invariant_factors: factors.iter().map(|&d| BigInt::from(d)).collect(),
            free_rank: free,
        }
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(*cyclic(2).normal_form(), ty(&[2], 0));
        let g = quotient_group(2, &IntMatrix::identity(2)).unwrap();
        assert!(g.normal_form().is_trivial());
        let g = quotient_group(3, &IntMatrix::from_rows(&[[2, 0], [0, 3], [0, 0]])).unwrap();
        assert_eq!(*g.normal_form(), ty(&[6], 1));
        assert_eq!(g.order(), None);
        assert!(quotient_group(2, &IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn normalization_of_cyclic_lists() {
        let t = GroupType::from_cyclic_factors(&[BigInt::from(4), BigInt::from(6), BigInt::from(0)], 0);
        assert_eq!(t, ty(&[2, 12], 1));
        assert_eq!(t.to_string(), "Z/2 ⊕ Z/12 ⊕ Z");
        let big = ty(&[2, 12], 3);
        assert_eq!(big.cancel_summand(&ty(&[4], 1)).unwrap(), ty(&[6], 2));
        assert!(big.cancel_summand(&ty(&[8], 0)).is_none());
    }

    #[test]
    fn zero_hom_is_well_defined() {
        let h = GroupHom::new(cyclic(3), cyclic(5), IntMatrix::zeros(1, 1)).unwrap();
        assert!(hom_well_defined(&h));
    }

    #[test]
    fn identity_z2_to_z4_is_not_well_defined() {
        let h = GroupHom::new(cyclic(2), cyclic(4), IntMatrix::identity(1)).unwrap();
        assert!(!hom_well_defined(&h));
        assert!(matches!(hom_kernel(&h), Err(LatticeError::IllDefinedHom)));
    }

    #[test]
    fn kernels_and_cokernels_on_cyclic_groups() {
        let id = GroupHom::new(cyclic(6), cyclic(6), IntMatrix::identity(1)).unwrap();
        assert!(hom_kernel(&id).unwrap().normal_form().is_trivial());
        assert!(hom_cokernel(&id).unwrap().normal_form().is_trivial());

        // Enumerating Z/6: 2x == 0 exactly for x in {0, 3}.
        let brute = (0..6).filter(|x| (2 * x) % 6 == 0).count();
        let double = GroupHom::new(cyclic(6), cyclic(6), IntMatrix::from_rows(&[[2]])).unwrap();
        let k = hom_kernel(&double).unwrap();
        assert_eq!(k.order(), Some(BigInt::from(brute)));
        assert_eq!(hom_cokernel(&double).unwrap().order(), Some(BigInt::from(2)));

        let z = quotient_group(1, &IntMatrix::zeros(1, 0)).unwrap();
        let incl = GroupHom::new(z, cyclic(4), IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(*hom_cokernel(&incl).unwrap().normal_form(), ty(&[2], 0));
        // Kernel of Z -> Z/4, 1 -> 2 is 2Z, free of rank one.
        assert_eq!(*hom_kernel(&incl).unwrap().normal_form(), ty(&[], 1));
    }

    #[test]
    fn torsion_checks() {
        let g = group_of_type(&ty(&[2, 2], 0));
        assert!(element_order_and_torsion_check(&g, 2));
        assert!(!element_order_and_torsion_check(&cyclic(4), 2));
        let free = group_of_type(&ty(&[], 1));
        assert!(!element_order_and_torsion_check(&free, 2));
    }

    #[test]
    fn element_orders() {
        let g = group_of_type(&ty(&[2, 12], 1));
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(g.element_order(&v(&[1, 0, 0])), Some(BigInt::from(2)));
        assert_eq!(g.element_order(&v(&[1, 3, 0])), Some(BigInt::from(4)));
        assert_eq!(g.element_order(&v(&[0, 0, 1])), None);
        assert_eq!(g.element_order(&v(&[0, 0, 0])), Some(BigInt::one()));
    }
}

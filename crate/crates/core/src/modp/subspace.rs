use super::{check_prime, ModpError, ModpMatrix};

/// Default cap on the number of vectors [`ModpSubspace::enumerate`] will produce.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 20;

/// Subspace of `(Z/p)^n`, stored as a basis in reduced row-echelon form.
///
/// The representation is canonical, so `==` is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModpSubspace {
    ambient_dim: usize,
    basis: ModpMatrix,
}

impl ModpSubspace {
    /// Span of the rows of `spanning`.
    pub fn span(spanning: &ModpMatrix) -> Self {
        let (r, pivots) = spanning.rref();
        ModpSubspace {
            ambient_dim: spanning.cols(),
            basis: r.select_rows(0..pivots.len()),
        }
    }

    pub fn span_vectors(p: u32, ambient_dim: usize, vectors: &[Vec<u8>]) -> Result<Self, ModpError> {
        let rows: Vec<Vec<u32>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| x as u32).collect())
            .collect();
        Ok(Self::span(&ModpMatrix::from_rows(p, ambient_dim, &rows)?))
    }

    pub fn zero(p: u32, ambient_dim: usize) -> Result<Self, ModpError> {
        Ok(ModpSubspace {
            ambient_dim,
            basis: ModpMatrix::zeros(p, 0, ambient_dim)?,
        })
    }

    pub fn full(p: u32, ambient_dim: usize) -> Result<Self, ModpError> {
        Ok(ModpSubspace {
            ambient_dim,
            basis: ModpMatrix::identity(p, ambient_dim)?,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.basis.modulus()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ModpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u8>> {
        self.basis.row_vectors()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let rows = [v.iter().map(|&x| x as u32).collect::<Vec<_>>()];
        let extra = ModpMatrix::from_rows(self.modulus(), self.ambient_dim, &rows)
            .expect("modulus already validated");
        let stacked = self.basis.vstack(&extra).expect("same shape");
        stacked.rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &ModpSubspace) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    fn compatible(&self, other: &ModpSubspace) -> Result<(), ModpError> {
        self.basis.same_field(&other.basis)?;
        if self.ambient_dim != other.ambient_dim {
            return Err(ModpError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// All `p^dim` vectors, each exactly once.
    pub fn enumerate(&self, limit: u64) -> Result<impl Iterator<Item = Vec<u8>> + '_, ModpError> {
        let p = self.modulus() as u64;
        let count = (0..self.dim()).try_fold(1u64, |acc, _| acc.checked_mul(p));
        match count {
            Some(c) if c <= limit => {}
            _ => {
                return Err(ModpError::EnumerationLimit {
                    dim: self.dim(),
                    p: self.modulus(),
                    limit,
                })
            }
        }
        let total = count.unwrap_or(0);
        let basis = self.basis_vectors();
        let p32 = self.modulus();
        let n = self.ambient_dim;
        Ok((0..total).map(move |mut idx| {
            let mut v = vec![0u32; n];
            for b in &basis {
                let c = (idx % p) as u32;
                idx /= p;
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = (*x + c * y as u32) % p32;
                    }
                }
            }
            v.into_iter().map(|x| x as u8).collect()
        }))
    }
}

/// Null space `{ x : m x = 0 }`.
pub fn kernel(m: &ModpMatrix) -> ModpSubspace {
    let p = m.modulus();
    let n = m.cols();
    let (r, pivots) = m.rref();
    let mut vectors = Vec::new();
    let mut pivot_of_col = vec![None; n];
    for (row, &c) in pivots.iter().enumerate() {
        pivot_of_col[c] = Some(row);
    }
    for free in (0..n).filter(|&c| pivot_of_col[c].is_none()) {
        let mut v = vec![0u8; n];
        v[free] = 1;
        for (row, &c) in pivots.iter().enumerate() {
            let x = r.get(row, free);
            if x != 0 {
                v[c] = ((p - x) % p) as u8;
            }
        }
        vectors.push(v);
    }
    ModpSubspace::span_vectors(p, n, &vectors).expect("modulus already validated")
}

/// Span of the rows of `m`.
pub fn row_space(m: &ModpMatrix) -> ModpSubspace {
    ModpSubspace::span(m)
}

/// `a ∩ b`, from the left kernel of the stacked bases.
pub fn intersect(a: &ModpSubspace, b: &ModpSubspace) -> Result<ModpSubspace, ModpError> {
    a.compatible(b)?;
    let p = a.modulus();
    let stacked = a.basis.vstack(&b.basis)?;
    let relations = kernel(&stacked.transpose());
    let mut vectors = Vec::new();
    for c in relations.basis_vectors() {
        let mut v = vec![0u32; a.ambient_dim];
        for (k, &ck) in c.iter().take(a.dim()).enumerate() {
            if ck == 0 {
                continue;
            }
            for (j, x) in v.iter_mut().enumerate() {
                *x = (*x + ck as u32 * a.basis.get(k, j)) % p;
            }
        }
        vectors.push(v.into_iter().map(|x| x as u8).collect());
    }
    ModpSubspace::span_vectors(p, a.ambient_dim, &vectors)
}

/// `a + b`
pub fn sum(a: &ModpSubspace, b: &ModpSubspace) -> Result<ModpSubspace, ModpError> {
    a.compatible(b)?;
    Ok(ModpSubspace::span(&a.basis.vstack(&b.basis)?))
}

/// `{ x in space : inv x = x }` for an involution `inv`.
pub fn fixed_subspace(inv: &ModpMatrix, space: &ModpSubspace) -> Result<ModpSubspace, ModpError> {
    let p = inv.modulus();
    check_prime(p)?;
    let n = space.ambient_dim();
    if inv.rows() != n || inv.cols() != n {
        return Err(ModpError::DimensionMismatch {
            expected: n,
            found: inv.rows(),
        });
    }
    let id = ModpMatrix::identity(p, n)?;
    if inv.mul(inv)? != id {
        return Err(ModpError::NotAnInvolution);
    }
    let fixed = kernel(&inv.sub(&id)?);
    intersect(&fixed, space)
}

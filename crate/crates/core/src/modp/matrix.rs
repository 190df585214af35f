use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ModpError;
use crate::lattice::IntMatrix;

const WORD: usize = 64;

/// Row storage. Over Z/2 rows are packed into machine words so that row
/// operations are word-parallel XORs.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Rows {
    Packed { words: usize, data: Vec<u64> },
    Bytes(Vec<u8>),
}

/// Matrix over Z/p for a prime `p < 256`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Rows,
}

pub(crate) fn check_prime(p: u32) -> Result<(), ModpError> {
    if p >= 256 {
        return Err(ModpError::ModulusTooLarge(p));
    }
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if prime {
        Ok(())
    } else {
        Err(ModpError::NotPrime(p))
    }
}

fn inverse(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rows as lists of residues.
impl serde::Serialize for ModpMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(s)
    }
}

impl ModpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self, ModpError> {
        check_prime(p)?;
        let data = if p == 2 {
            let words = cols.div_ceil(WORD);
            Rows::Packed {
                words,
                data: vec![0; rows * words],
            }
        } else {
            Rows::Bytes(vec![0; rows * cols])
        };
        Ok(ModpMatrix { p, rows, cols, data })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self, ModpError> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Rows given as slices of residues; entries are reduced mod `p`.
    pub fn from_rows<R: AsRef<[u32]>>(p: u32, cols: usize, rows: &[R]) -> Result<Self, ModpError> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(ModpError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Reduction of an integer matrix, with representatives in `0..p`.
    pub fn from_int_matrix(a: &IntMatrix, p: u32) -> Result<Self, ModpError> {
        let mut m = Self::zeros(p, a.rows(), a.cols())?;
        let modulus = BigInt::from(p);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let r = a[(i, j)].mod_floor(&modulus);
                m.set(i, j, r.to_u32().expect("residue below 256"));
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        assert!(i < self.rows && j < self.cols);
        match &self.data {
            Rows::Packed { words, data } => ((data[i * words + j / WORD] >> (j % WORD)) & 1) as u32,
            Rows::Bytes(data) => data[i * self.cols + j] as u32,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        assert!(i < self.rows && j < self.cols);
        let x = x % self.p;
        match &mut self.data {
            Rows::Packed { words, data } => {
                let w = &mut data[i * *words + j / WORD];
                let bit = 1u64 << (j % WORD);
                if x == 1 {
                    *w |= bit;
                } else {
                    *w &= !bit;
                }
            }
            Rows::Bytes(data) => data[i * self.cols + j] = x as u8,
        }
    }

    pub fn row(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(i, j) as u8).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    fn row_is_zero(&self, i: usize) -> bool {
        match &self.data {
            Rows::Packed { words, data } => data[i * words..(i + 1) * words].iter().all(|&w| w == 0),
            Rows::Bytes(data) => data[i * self.cols..(i + 1) * self.cols].iter().all(|&x| x == 0),
        }
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rows).all(|i| self.row_is_zero(i))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.data {
            Rows::Packed { words, data } => {
                for k in 0..*words {
                    data.swap(a * *words + k, b * *words + k);
                }
            }
            Rows::Bytes(data) => {
                for k in 0..self.cols {
                    data.swap(a * self.cols + k, b * self.cols + k);
                }
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: u32) {
        let p = self.p;
        match &mut self.data {
            Rows::Packed { words, data } => {
                if k % 2 == 1 {
                    for w in 0..*words {
                        let s = data[src * *words + w];
                        data[dst * *words + w] ^= s;
                    }
                }
            }
            Rows::Bytes(data) => {
                let cols = self.cols;
                for j in 0..cols {
                    let s = data[src * cols + j] as u32;
                    if s != 0 {
                        let d = &mut data[dst * cols + j];
                        *d = ((*d as u32 + k * s) % p) as u8;
                    }
                }
            }
        }
    }

    fn scale_row(&mut self, i: usize, k: u32) {
        if let Rows::Bytes(data) = &mut self.data {
            for x in &mut data[i * self.cols..(i + 1) * self.cols] {
                *x = ((*x as u32 * k) % self.p) as u8;
            }
        }
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (ModpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let lead = m.get(r, c);
            if lead != 1 {
                m.scale_row(r, inverse(lead, m.p));
            }
            for i in 0..m.rows {
                if i != r {
                    let x = m.get(i, c);
                    if x != 0 {
                        m.add_row_multiple(i, r, m.p - x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> ModpMatrix {
        let picked: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect();
        Self::from_rows(self.p, self.cols, &picked).expect("same modulus and width")
    }

    pub fn transpose(&self) -> ModpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows).expect("prime checked");
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x != 0 {
                    t.set(j, i, x);
                }
            }
        }
        t
    }

    pub fn vstack(&self, other: &ModpMatrix) -> Result<ModpMatrix, ModpError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(ModpError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.row_vectors();
        rows.extend(other.row_vectors());
        let rows: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(u32::from).collect())
            .collect();
        Self::from_rows(self.p, self.cols, &rows)
    }

    pub fn mul(&self, rhs: &ModpMatrix) -> Result<ModpMatrix, ModpError> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(ModpError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.p, self.rows, rhs.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    out.add_scaled_foreign_row(i, rhs, k, a);
                }
            }
        }
        Ok(out)
    }

    /// out.row[dst] += k * other.row[src]
    fn add_scaled_foreign_row(&mut self, dst: usize, other: &ModpMatrix, src: usize, k: u32) {
        match (&mut self.data, &other.data) {
            (Rows::Packed { words, data }, Rows::Packed { data: od, .. }) => {
                if k % 2 == 1 {
                    for w in 0..*words {
                        data[dst * *words + w] ^= od[src * *words + w];
                    }
                }
            }
            _ => {
                for j in 0..self.cols {
                    let s = other.get(src, j);
                    if s != 0 {
                        let cur = self.get(dst, j);
                        self.set(dst, j, cur + k * s);
                    }
                }
            }
        }
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>, ModpError> {
        if v.len() != self.cols {
            return Err(ModpError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let s: u32 = (0..self.cols)
                    .filter(|&j| v[j] != 0)
                    .map(|j| self.get(i, j) * v[j] as u32)
                    .sum();
                (s % self.p) as u8
            })
            .collect())
    }

    pub fn sub(&self, rhs: &ModpMatrix) -> Result<ModpMatrix, ModpError> {
        self.same_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(ModpError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j) + self.p - rhs.get(i, j));
            }
        }
        Ok(out)
    }

    pub(crate) fn same_field(&self, other: &ModpMatrix) -> Result<(), ModpError> {
        if self.p != other.p {
            Err(ModpError::ModulusMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for ModpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ModpMatrix mod {} {}x{} [", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_enforced() {
        assert!(ModpMatrix::zeros(4, 1, 1).is_err());
        assert!(ModpMatrix::zeros(1, 1, 1).is_err());
        assert!(ModpMatrix::zeros(257, 1, 1).is_err());
        assert!(ModpMatrix::zeros(251, 1, 1).is_ok());
    }

    #[test]
    fn rref_over_gf3() {
        let m = ModpMatrix::from_rows(3, 3, &[[2, 1, 0], [1, 2, 1], [0, 0, 1]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r.row(0), vec![1, 2, 0]);
        assert_eq!(r.row(1), vec![0, 0, 1]);
        assert!(r.row(2).iter().all(|&x| x == 0));
    }

    #[test]
    fn packed_rows_span_multiple_words() {
        let cols = 130;
        let mut m = ModpMatrix::zeros(2, 2, cols).unwrap();
        m.set(0, 129, 1);
        m.set(0, 3, 1);
        m.set(1, 129, 1);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![3, 129]);
        assert_eq!(r.get(0, 129), 0);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn int_reduction_uses_nonnegative_residues() {
        let a = IntMatrix::from_rows(&[[-1, 4, -6]]);
        let m = ModpMatrix::from_int_matrix(&a, 5).unwrap();
        assert_eq!(m.row(0), vec![4, 4, 4]);
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of a Smith normal form computation: `u * a * v == s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`), zeros last.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// Solves `a * x == b` over the integers, if a solution exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.u.mul_vec(b).ok()?;
        let r = self.rank();
        let mut z = vec![BigInt::zero(); self.v.rows()];
        for (i, yi) in y.iter().enumerate() {
            if i < r {
                let (q, rem) = yi.div_rem(&self.s[(i, i)]);
                if !rem.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        self.v.mul_vec(&z).ok()
    }

    /// Columns generating the integer kernel of the decomposed matrix.
    pub fn kernel_basis(&self) -> IntMatrix {
        let r = self.rank();
        self.v.select_columns(r..self.v.cols())
    }
}

/// Smith normal form with unimodular change-of-basis witnesses.
///
/// The pivot is always the nonzero entry of least absolute value in the
/// remaining block (ties broken by row, then column).
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    'outer: for t in 0..m.min(n) {
        loop {
            let Some((pr, pc)) = min_pivot(&s, t) else {
                break 'outer;
            };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            s.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut dirty = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // Pivot must divide the whole trailing block.
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithDecomposition { u, s, v }
}

fn min_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => x.abs() < s[(bi, bj)].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

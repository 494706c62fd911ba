//! Exact rank computation for small integer matrices.
//!
//! Two independent routes: fraction-free (Bareiss) elimination over the
//! integers gives the rank over Q, and bit-parallel elimination over GF(2)
//! gives the rank after reduction mod 2. Bareiss intermediate entries are
//! minors of the input, so they use arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix with small entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i8>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i8) {
        self.data[r * self.cols + c] = v;
    }

    /// Copy out the submatrix on the given row and column positions.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Plain integer matrix product (for small consistency checks).
    pub fn multiply(&self, rhs: &IntMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols, rhs.rows);
        let mut out = vec![vec![0i64; rhs.cols]; self.rows];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l) as i64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[i][j] += a * rhs.get(l, j) as i64;
                }
            }
        }
        out
    }
}

/// Rank over Q via fraction-free Gaussian elimination.
///
/// Division by the previous pivot is exact at every step (the entries are
/// determinants of bordered submatrices of the input), which the code
/// asserts in debug builds.
pub fn rank_q(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| BigInt::from(m.get(i, j))).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    let mut r = 0usize;
    for c in 0..m.cols {
        let Some(pivot_row) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot_row);
        for i in r + 1..m.rows {
            for j in c + 1..m.cols {
                let num = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "fraction-free step not exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        debug_assert!(prev.is_positive() || prev.is_negative());
        rank += 1;
        r += 1;
        if r == m.rows {
            break;
        }
    }
    rank
}

/// Rank over GF(2) via elimination on u64-packed rows.
pub fn rank_f2(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut packed = vec![0u64; words];
        for j in 0..m.cols {
            if m.get(i, j) & 1 != 0 {
                packed[j / 64] |= 1 << (j % 64);
            }
        }
        rows.push(packed);
    }
    // basis of reduced rows, keyed by leading bit
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut rank = 0usize;
    for mut row in rows {
        while let Some(lead) = leading_bit(&row) {
            match basis.iter().find(|(l, _)| *l == lead) {
                Some((_, b)) => {
                    for (w, bw) in row.iter_mut().zip(b) {
                        *w ^= bw;
                    }
                }
                None => {
                    basis.push((lead, row));
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

//! Dense integer matrices and the Pell transforms built from them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sequences::pell_table;

/// Row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(Error::Domain("entry count does not match dimensions"));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from `i64` entries given row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        IntMatrix::new(rows, cols, entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged rows"));
        }
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        IntMatrix::from_i64(rows.len(), cols, &flat)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = IntMatrix::zeros(order, order);
        for k in 0..order {
            m.entries[k * order + k] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        mat_mul(self, other)
    }

    /// `self^exp` by square-and-multiply; `exp = 0` gives the identity.
    pub fn pow(&self, mut exp: u32) -> Result<IntMatrix> {
        let order = self.require_square()?;
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(order);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mat_mul(&acc, &base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = mat_mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Matrix with row `skip_row` and column `skip_col` removed.
    pub fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let entries = (0..self.rows)
            .filter(|&r| r != skip_row)
            .flat_map(|r| (0..self.cols).filter(move |&c| c != skip_col).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, entries }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (row, col): (usize, usize)) -> &BigInt {
        self.get(row, col)
    }
}

impl fmt::Display for IntMatrix {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for (c, value) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{value}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch { expected: (a.cols, b.cols), found: (b.rows, b.cols) });
    }
    let mut out = IntMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let lhs = a.get(i, k);
            if lhs.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                out.entries[i * b.cols + j] += lhs * b.get(k, j);
            }
        }
    }
    Ok(out)
}

/// `P^n = [[P_{n+1}, P_n], [P_n, P_{n-1}]]` for `n >= 1`.
pub fn p_power(n: u32) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::Domain("p_power needs n >= 1"));
    }
    let t = pell_table(n + 1);
    let n = n as usize;
    Ok(IntMatrix { rows: 2, cols: 2, entries: vec![t[n + 1].clone(), t[n].clone(), t[n].clone(), t[n - 1].clone()] })
}

/// The `(p+1)×(p+1)` companion matrix: first row `(2, 0, …, 0, 1)`,
/// ones on the subdiagonal, zeros elsewhere.
pub fn a_matrix(p: u32) -> Result<IntMatrix> {
    if p == 0 {
        return Err(Error::Domain("a_matrix needs p >= 1"));
    }
    let order = p as usize + 1;
    let mut a = IntMatrix::zeros(order, order);
    a.set(0, 0, BigInt::from(2));
    a.entries[order - 1] += 1;
    for k in 1..order {
        a.set(k, k - 1, BigInt::one());
    }
    Ok(a)
}

/// `G_n = A^n` for the companion matrix of order `p + 1`.
pub fn g_matrix(p: u32, n: u32) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::Domain("g_matrix needs n >= 1"));
    }
    a_matrix(p)?.pow(n)
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    let order = m.require_square()?;
    let mut work = m.entries.clone();
    let at = |r: usize, c: usize| r * order + c;
    let mut sign_flip = false;
    let mut prev_pivot = BigInt::one();
    for k in 0..order.saturating_sub(1) {
        if work[at(k, k)].is_zero() {
            let Some(swap) = (k + 1..order).find(|&r| !work[at(r, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            for c in 0..order {
                work.swap(at(k, c), at(swap, c));
            }
            sign_flip = !sign_flip;
        }
        let pivot = work[at(k, k)].clone();
        for i in k + 1..order {
            for j in k + 1..order {
                let value = (&pivot * &work[at(i, j)] - &work[at(i, k)] * &work[at(k, j)]) / &prev_pivot;
                work[at(i, j)] = value;
            }
            work[at(i, k)] = BigInt::zero();
        }
        prev_pivot = pivot;
    }
    let det = work[at(order - 1, order - 1)].clone();
    Ok(if sign_flip { -det } else { det })
}

/// Integer inverse of a matrix with determinant ±1: `adj(m) * det(m)`.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let order = m.require_square()?;
    let det = determinant(m)?;
    if det.abs() != BigInt::one() {
        return Err(Error::NotUnimodular);
    }
    if order == 1 {
        return Ok(IntMatrix { rows: 1, cols: 1, entries: vec![det] });
    }
    let mut inv = IntMatrix::zeros(order, order);
    for r in 0..order {
        for c in 0..order {
            let cofactor = determinant(&m.minor(r, c))?;
            let signed = if (r + c) % 2 == 0 { cofactor } else { -cofactor };
            // adjugate is the transposed cofactor matrix; det = ±1 is its own inverse
            inv.set(c, r, signed * &det);
        }
    }
    Ok(inv)
}

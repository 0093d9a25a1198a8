//! Dense exact linear algebra over the rationals.

use crate::rational::{rat, Rational};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: matrix has {rows} rows, vector has {len} entries")]
    DimensionMismatch { rows: usize, len: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    BadShape { rows: usize, cols: usize, len: usize },
}

/// Rectangular matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(MatrixError::BadShape {
                rows: nrows,
                cols: ncols,
                len: rows.iter().map(Vec::len).sum(),
            });
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix, mostly convenient in tests and for incidence data.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self {
            rows: nrows,
            cols: ncols,
            data: rows.iter().flatten().map(|&v| rat(v)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        Self { rows: n, cols: n, data }
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                rows: other.rows,
                len: self.cols,
            });
        }
        let mut data = vec![Rational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = aik * other.get(k, j);
                    data[i * other.cols + j] += t;
                }
            }
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// The system has exactly one solution.
    Unique(Vec<Rational>),
    /// The system is inconsistent.
    Inconsistent,
    /// The system is consistent but the solution is not unique.
    Underdetermined,
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination and classifies the
/// solution set.
pub fn solve_linear_system(
    a: &RationalMatrix,
    b: &[Rational],
) -> Result<LinearSolution, MatrixError> {
    if a.rows != b.len() {
        return Err(MatrixError::DimensionMismatch {
            rows: a.rows,
            len: b.len(),
        });
    }
    let m = a.rows;
    let n = a.cols;
    let mut aug: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].clone();
        for v in aug[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=n {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }

    for row in aug.iter().skip(r) {
        if !row[n].is_zero() {
            return Ok(LinearSolution::Inconsistent);
        }
    }
    if pivot_cols.len() < n {
        return Ok(LinearSolution::Underdetermined);
    }
    let mut x = vec![Rational::zero(); n];
    for (k, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[k][n].clone();
    }
    Ok(LinearSolution::Unique(x))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Denominators are cleared row by row first, so all intermediate work is
/// over integers.
pub fn determinant(a: &RationalMatrix) -> Result<Rational, MatrixError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Rational::one());
    }

    // Scale every row to integers, remembering the factor pulled out.
    let mut scale = Rational::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = BigInt::one();
        for v in a.row(i) {
            lcm = num::integer::lcm(lcm, v.denom().clone());
        }
        scale *= Rational::new(BigInt::one(), lcm.clone());
        m.push(
            a.row(i)
                .iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect(),
        );
    }

    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det_int = m[n - 1][n - 1].clone();
    Ok(Rational::from_integer(det_int * BigInt::from(sign)) * scale)
}

/// True when the determinant is 1 or -1.
pub fn is_unimodular(a: &RationalMatrix) -> Result<bool, MatrixError> {
    Ok(determinant(a)?.abs() == Rational::one())
}

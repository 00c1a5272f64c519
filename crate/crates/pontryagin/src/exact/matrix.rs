//! Dense matrices over the exact complex-rational scalars, with the
//! elimination algorithms everything else is built on: reduced row echelon
//! form, rank, kernel, linear solve, inversion, and the inertia of a
//! Hermitian matrix by exact congruence elimination.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::scalar::{format_scalar, Scalar};

/// A dense `rows x cols` matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Signature of a Hermitian matrix: counts of positive, negative and zero
/// eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer-valued test data.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| crate::exact::scalar::sc(n)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data)
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| s * &self[(i, j)])
    }

    pub fn col(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn row(&self, i: usize) -> Matrix {
        Matrix::from_fn(1, self.cols, |_, j| self[(i, j)].clone())
    }

    /// Rows `r0..r1` as a block.
    pub fn row_block(&self, r0: usize, r1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows);
        Matrix::from_fn(r1 - r0, self.cols, |i, j| self[(r0 + i, j)].clone())
    }

    /// Columns `c0..c1` as a block.
    pub fn col_block(&self, c0: usize, c1: usize) -> Matrix {
        assert!(c0 <= c1 && c1 <= self.cols);
        Matrix::from_fn(self.rows, c1 - c0, |i, j| self[(i, c0 + j)].clone())
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|p| p.rows == rows), "row count mismatch in hstack");
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    m.set(i, offset + j, p[(i, j)].clone());
                }
            }
            offset += p.cols;
        }
        m
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|p| p.cols == cols), "column count mismatch in vstack");
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for p in parts {
            for i in 0..p.rows {
                for j in 0..cols {
                    m.set(offset + i, j, p[(i, j)].clone());
                }
            }
            offset += p.rows;
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = Scalar::one() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(i, j)] - &(&factor * &m[(r, j)]);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical basis of the null space, one column per free variable.
    /// Returns a `cols x k` matrix; `k == 0` means the kernel is trivial.
    pub fn kernel(&self) -> Matrix {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, Scalar::one());
            for (row, &pc) in ech.pivots.iter().enumerate() {
                basis.set(pc, k, -ech.matrix[(row, fc)].clone());
            }
        }
        basis
    }

    /// Solves `self * x = rhs` (multiple right-hand sides allowed),
    /// returning the particular solution with all free variables zero.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, rhs.rows
            )));
        }
        let ech = Matrix::hstack(&[self, rhs]).rref();
        if ech.pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NoSolution("inconsistent linear system".into()));
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &pc) in ech.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, ech.matrix[(row, self.cols + j)].clone());
            }
        }
        Ok(x)
    }

    /// Inverse of a square matrix; `NoSolution` when singular.
    pub fn inverse(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        self.solve(&Matrix::identity(self.rows))
            .map_err(|_| Error::NoSolution("matrix is singular".into()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inertia of a Hermitian matrix by exact congruence elimination:
    /// a nonzero diagonal entry is used as a 1x1 pivot; if the diagonal
    /// vanishes identically, a nonzero off-diagonal pair forms a 2x2 block
    /// contributing one positive and one negative square. The counts add
    /// across Schur complements.
    pub fn hermitian_inertia(&self) -> Result<Inertia, Error> {
        if !self.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        let mut inertia = Inertia { positive: 0, negative: 0, zero: 0 };
        let mut m = self.clone();
        loop {
            let n = m.rows;
            if n == 0 {
                break;
            }
            if let Some(p) = (0..n).find(|&i| !m[(i, i)].is_zero()) {
                let d = m[(p, p)].re.clone();
                if d.is_positive() {
                    inertia.positive += 1;
                } else {
                    inertia.negative += 1;
                }
                let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
                m = Matrix::from_fn(n - 1, n - 1, |i, j| {
                    let (a, b) = (rest[i], rest[j]);
                    &m[(a, b)] - &(&(&m[(a, p)] * &m[(p, b)]) / &Scalar::from(d.clone()))
                });
            } else if let Some((p, q)) = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[(i, j)].is_zero())
            {
                // Zero diagonal: the 2x2 block [[0, a],[conj a, 0]] has
                // eigenvalues of both signs; eliminate it whole.
                inertia.positive += 1;
                inertia.negative += 1;
                let a = m[(p, q)].clone();
                let rest: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
                m = Matrix::from_fn(n - 2, n - 2, |i, j| {
                    let (r, c) = (rest[i], rest[j]);
                    // Schur complement against B^{-1} = [[0, 1/conj a],[1/a, 0]].
                    let term = &(&m[(r, p)] * &m[(q, c)]) / &a.conj()
                        + &(&m[(r, q)] * &m[(p, c)]) / &a;
                    &m[(r, c)] - &term
                });
            } else {
                inertia.zero += n;
                break;
            }
        }
        Ok(inertia)
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                acc += &self[(i, k)] * &other[(k, j)];
            }
            acc
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({}x{}) {}", self.rows, self.cols, self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_scalar(&self[(i, j)])).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(0))
            .collect();
        writeln!(f, "[")?;
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(widths.iter().copied())
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            writeln!(f, "  {}", line.join("  "))?;
        }
        write!(f, "]")
    }
}

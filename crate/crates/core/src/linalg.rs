//! Dense row-major matrices over a generic [`Scalar`], exact rank by
//! fraction-free (Bareiss) elimination, and an SVD rank for cross-checks.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use nalgebra::DMatrix;

use crate::scalar::{ExactScalar, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix made of the given rows (in the given order), all columns.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    /// Submatrix made of the given columns (in the given order), all rows.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn mul_mat(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                    out[(i, j)] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// `[I, X, X^2, ..., X^k]`, computed by repeated multiplication.
    pub fn powers(&self, k: usize) -> Vec<Self> {
        assert_eq!(self.rows, self.cols, "powers of a non-square matrix");
        let mut out = Vec::with_capacity(k + 1);
        out.push(Self::identity(self.rows));
        for p in 1..=k {
            let next = out[p - 1].mul_mat(self);
            out.push(next);
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|v| v.approx_f64())
    }
}

impl<T: ExactScalar> Matrix<T> {
    /// Exact rank by fraction-free Gaussian elimination.
    ///
    /// Every intermediate entry is a minor of the input, so for integer
    /// inputs the entries stay integral and for rationals no normalisation
    /// beyond the scalar's own is needed.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.data.clone(), self.rows, self.cols)
    }
}

fn bareiss_rank<T: ExactScalar>(mut m: Vec<T>, rows: usize, cols: usize) -> usize {
    let at = |i: usize, j: usize| i * cols + j;
    let mut prev = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[at(i, c)].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                m.swap(at(p, j), at(rank, j));
            }
        }
        let pivot = m[at(rank, c)].clone();
        for i in rank + 1..rows {
            let lead = m[at(i, c)].clone();
            for j in c + 1..cols {
                let v = (pivot.clone() * m[at(i, j)].clone() - lead.clone() * m[at(rank, j)].clone())
                    / prev.clone();
                m[at(i, j)] = v;
            }
            m[at(i, c)] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Numerical rank from the singular values: the count of singular values
/// above `rel_tol * sigma_max`.
///
/// Columns are scaled to unit norm first. This leaves the rank unchanged
/// and keeps Krylov-type matrices, whose later blocks grow geometrically,
/// from drowning the early columns.
pub fn numeric_rank<T: Scalar>(m: &Matrix<T>, rel_tol: f64) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let mut dm = DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].approx_f64());
    for mut col in dm.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
    }
    let sv = dm.singular_values();
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.mul_mat(rhs)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}

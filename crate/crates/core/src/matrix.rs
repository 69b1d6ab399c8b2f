//! Dense matrices over the rationals with exact elimination.
//!
//! Boundary operators, induced maps, duality matrices, and traces are all
//! a [`RatMatrix`]. Elimination uses a fixed pivot rule
//! (columns left to right, first nonzero entry scanning top to bottom)
//! so results are bit-identical across runs and thread counts.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::par;
use crate::rational::Rational;

/// Immutable dense matrix over [`Rational`], row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn<F: Fn(usize, usize) -> Rational>(rows: usize, cols: usize, f: F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Build from integer rows; panics if rows are ragged.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| Rational::from(rows[i][j]))
    }

    /// Assemble a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> RatMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    /// Exact matrix product; rows computed in parallel when the work is
    /// large enough to amortize the fan-out.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let cols = other.cols;
        let product_row = |i: usize| {
            let mut row = vec![Rational::zero(); cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        *cell += &(a * b);
                    }
                }
            }
            row
        };
        let entries: Vec<Vec<Rational>> = if self.rows * self.cols * cols >= par::MIN_PARALLEL_WORK
        {
            par::map_indexed(self.rows, product_row)
        } else {
            (0..self.rows).map(product_row).collect()
        };
        RatMatrix {
            rows: self.rows,
            cols,
            entries: entries.into_iter().flatten().collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Kronecker product: `(A ⊗ B)[(i1*rB+i2),(j1*cB+j2)] = A[i1,j1]·B[i2,j2]`.
    pub fn kronecker(&self, other: &RatMatrix) -> RatMatrix {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = &self[(i / other.rows, j / other.cols)];
            let b = &other[(i % other.rows, j % other.cols)];
            a * b
        })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Reduced row echelon form together with the pivot (row, column) list.
    pub fn rref(&self) -> (RatMatrix, Vec<(usize, usize)>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // First nonzero entry in this column at or below pivot_row.
            let Some(src) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m[(pivot_row, col)].recip();
            for j in col..m.cols {
                let v = &m[(pivot_row, j)] * &inv;
                m[(pivot_row, j)] = v;
            }
            let pivot = m.row(pivot_row).to_vec();
            let ncols = m.cols;
            let eliminate = |r: usize, row: &mut [Rational]| {
                if r == pivot_row || row[col].is_zero() {
                    return;
                }
                let factor = row[col].clone();
                for j in col..ncols {
                    if !pivot[j].is_zero() {
                        let delta = &factor * &pivot[j];
                        row[j] -= &delta;
                    }
                }
            };
            if m.rows * (ncols - col) >= par::MIN_PARALLEL_WORK {
                par::for_each_chunk_mut(&mut m.entries, ncols, eliminate);
            } else {
                for (r, row) in m.entries.chunks_exact_mut(ncols).enumerate() {
                    eliminate(r, row);
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column in ascending
    /// column order, each scaled so its first nonzero coordinate is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_cols.contains(&j) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[j] = Rational::one();
            for &(pr, pc) in &pivots {
                v[pc] = -&r[(pr, j)];
            }
            if let Some(first) = v.iter().position(|x| !x.is_zero()) {
                let inv = v[first].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse via Gauss-Jordan on `[A | I]`.
    pub fn invert(&self) -> Result<RatMatrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let (reduced, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots.iter().any(|&(_, c)| c >= n) {
            return Err(Error::Singular { size: n });
        }
        Ok(Self::from_fn(n, n, |i, j| reduced[(i, n + j)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

//! Exact linear algebra over any [`Field`]: rank, solving, nullspace
//! (radical of a symmetric form) and rational positive-definiteness via
//! LDL^T without row exchanges. Pivoting is deterministic (first nonzero in
//! row-major order) so every witness is reproducible.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};

#[derive(Clone, Debug)]
pub struct Matrix<K> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<K>,
    pub row_labels: Option<Vec<String>>,
    pub col_labels: Option<Vec<String>>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn from_columns(cols: Vec<Vec<K>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        assert_eq!(rows.len(), self.rows);
        assert_eq!(cols.len(), self.cols);
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        self
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<K> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, other.rows);
        let mut out: Matrix<K> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other[(k, j)].is_zero() {
                        let t = self[(i, k)].clone() * other[(k, j)].clone();
                        out[(i, j)] = out[(i, j)].clone() + t;
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan reduction in place; returns the pivot columns.
    /// Pivot selection is the first nonzero entry scanning rows top-down,
    /// columns left to right.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let a = self[(pr, j)].clone();
                    let b = std::mem::replace(&mut self[(r, j)], a);
                    self[(pr, j)] = b;
                }
            }
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in 0..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in 0..self.cols {
                    let t = f.clone() * self[(r, j)].clone();
                    self[(i, j)] = self[(i, j)].clone() - t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Exact rank by Gauss-Jordan elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// One exact solution of `self * x = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the kernel `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<K>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Pivot columns of the matrix under deterministic elimination: the
    /// canonical basis of its column space.
    pub fn column_space_pivots(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.rref()
    }

    /// Exact kernel basis of a symmetric bilinear form; empty iff full rank.
    pub fn radical_of_symmetric_form(&self) -> Result<Vec<Vec<K>>> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch("radical of non-square matrix".into()));
        }
        Ok(self.nullspace())
    }

    pub fn entries_exact(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].exact_str()).collect())
            .collect()
    }
}

impl<K> std::ops::Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.data[i * self.cols + j]
    }
}

impl<K> std::ops::IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
}

/// Outcome of the rational positive-definiteness test.
#[derive(Debug)]
pub enum PdResult {
    PositiveDefinite,
    /// A vector with `x^T M x = value <= 0`.
    NotPd { witness: Vec<Rat>, value: Rat },
}

impl PdResult {
    pub fn is_pd(&self) -> bool {
        matches!(self, PdResult::PositiveDefinite)
    }
}

/// LDL^T test without row exchanges. Maintains the congruence `A = T M T^T`,
/// so a non-positive pivot immediately yields an exact witness vector.
pub fn is_positive_definite(m: &Matrix<Rat>) -> Result<PdResult> {
    if !m.is_symmetric() {
        return Err(Error::DimMismatch("positive-definiteness of non-symmetric matrix".into()));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut t: Matrix<Rat> = Matrix::identity(n);
    let row_of = |t: &Matrix<Rat>, i: usize| -> Vec<Rat> { t.row(i).to_vec() };
    for k in 0..n {
        let d = a[(k, k)].clone();
        if d.is_positive() {
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] / &d;
                for j in 0..n {
                    let upd = &f * &a[(k, j)];
                    a[(i, j)] = a[(i, j)].clone() - upd.clone();
                }
                for j in 0..n {
                    let upd = &f * &a[(j, k)];
                    a[(j, i)] = a[(j, i)].clone() - upd;
                }
                for j in 0..n {
                    let upd = &f * &t[(k, j)];
                    t[(i, j)] = t[(i, j)].clone() - upd;
                }
            }
            continue;
        }
        if d.is_negative() {
            return Ok(PdResult::NotPd {
                witness: row_of(&t, k),
                value: d,
            });
        }
        // zero pivot: either a kernel direction or an indefinite 2x2 block
        match (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
            None => {
                return Ok(PdResult::NotPd {
                    witness: row_of(&t, k),
                    value: Rat::zero(),
                });
            }
            Some(j) => {
                let aa = a[(k, j)].clone();
                let djj = a[(j, j)].clone();
                let (coeff, value) = if djj.is_negative() {
                    // T_j alone is already a negative direction
                    return Ok(PdResult::NotPd {
                        witness: row_of(&t, j),
                        value: djj,
                    });
                } else if djj.is_zero() {
                    // Q(u - a w) = -2 a^2
                    (-aa.clone(), -(rat2() * &aa * &aa))
                } else {
                    // Q(u - (a/d) w) = -a^2 / d
                    (-(&aa / &djj), -(&aa * &aa) / &djj)
                };
                let u = row_of(&t, k);
                let w = row_of(&t, j);
                let witness: Vec<Rat> =
                    u.iter().zip(&w).map(|(x, y)| x + &coeff * y).collect();
                return Ok(PdResult::NotPd { witness, value });
            }
        }
    }
    Ok(PdResult::PositiveDefinite)
}

fn rat2() -> Rat {
    Rat::from_integer(2.into())
}

/// Quadratic form value `x^T M x`, used to verify witnesses.
pub fn quadratic_form(m: &Matrix<Rat>, x: &[Rat]) -> Rat {
    m.mul_vec(x)
        .iter()
        .zip(x)
        .fold(Rat::zero(), |acc, (mi, xi)| acc + mi * xi)
}

//! Dense exact-rational linear algebra: row reduction, rank, kernels.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type Vector = Vec<Rational>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Panics if rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vector {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn row_vecs(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .filter(|&i| !v[i].is_zero() && !self.data[i][j].is_zero())
                    .fold(Rational::zero(), |acc, i| acc + &v[i] * &self.data[i][j])
            })
            .collect()
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = m.data[r][c].recip();
            for v in m.data[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m.data[r].clone();
            for i in 0..m.rows {
                if i == r || m.data[i][c].is_zero() {
                    continue;
                }
                let factor = m.data[i][c].clone();
                for (v, p) in m.data[i].iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &factor * p;
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

    /// A basis of the kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.data[row][f].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b` if a solution exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            aug.data[i][..self.cols].clone_from_slice(&self.data[i]);
            aug.data[i][self.cols] = bi.clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.data[row][self.cols].clone();
        }
        Some(x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rank_of(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), dim).rank()
}

/// Indices of the `candidates` that, taken greedily in order, extend the span
/// of `base` by one dimension each.
pub fn greedy_extend(base: &[Vector], candidates: &[Vector], dim: usize) -> Vec<usize> {
    let mut current: Vec<Vector> = base.to_vec();
    let mut rank = rank_of(&current, dim);
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        current.push(c.clone());
        let r = rank_of(&current, dim);
        if r > rank {
            rank = r;
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}

pub fn unit_vector(dim: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

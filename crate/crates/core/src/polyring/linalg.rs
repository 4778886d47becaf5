use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
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
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// A particular solution, the nullspace basis and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub rank: usize,
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

/// Reduces `[m | rhs]` to reduced row echelon form. Pivot columns are taken
/// left to right, the pivot row being the first row with a nonzero entry.
fn rref(m: &Matrix, rhs: Option<&[Rational]>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let cols = m.cols;
    let width = cols + usize::from(rhs.is_some());
    let mut rows: Vec<Vec<Rational>> = (0..m.rows)
        .map(|i| {
            let mut r: Vec<Rational> = (0..cols).map(|j| m.get(i, j).clone()).collect();
            if let Some(b) = rhs {
                r.push(b[i].clone());
            }
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][c].recip();
        for v in rows[next][c..width].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..width {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

/// Exact Gaussian elimination. With `rhs = None` the homogeneous system is
/// solved and the particular solution is zero.
pub fn solve_linear_exact(m: &Matrix, rhs: Option<&[Rational]>) -> Result<LinearSolution> {
    if let Some(b) = rhs {
        if b.len() != m.rows {
            return Err(Error::Precondition(format!(
                "rhs has length {}, matrix has {} rows",
                b.len(),
                m.rows
            )));
        }
    }
    let (rows, pivots) = rref(m, rhs);
    let rank = pivots.len();
    let cols = m.cols;
    if rhs.is_some() && rows[rank..].iter().any(|r| !r[cols].is_zero()) {
        return Err(Error::Inconsistent);
    }
    let mut particular = vec![Rational::zero(); cols];
    if rhs.is_some() {
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = rows[r][cols].clone();
        }
    }
    let mut nullspace = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -rows[r][free].clone();
        }
        nullspace.push(v);
    }
    Ok(LinearSolution { rank, particular, nullspace })
}

pub fn rank(m: &Matrix) -> usize {
    rref(m, None).1.len()
}

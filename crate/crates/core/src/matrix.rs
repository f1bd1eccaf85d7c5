//! Dense square matrices over [`Rational`] with exact elimination routines.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix must be square with at least one row, got {rows} rows with lengths {lens:?}")]
    NotSquare { rows: usize, lens: Vec<usize> },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Square `n x n` rational matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

/// Result of solving `A x = b` when `A` may be singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    Inconsistent,
    /// `particular + span(nullspace)`; the nullspace basis is empty for nonsingular `A`.
    Solutions {
        particular: Vec<Rational>,
        nullspace: Vec<Vec<Rational>>,
    },
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare {
                rows: n,
                lens: rows.iter().map(Vec::len).collect(),
            });
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from `(num, den)` pairs; panics if not square.
    pub fn from_fracs(rows: &[&[(i64, i64)]]) -> Self {
        Self::from_rows(rows.iter().map(|r| crate::rational::rvec(r)).collect()).expect("square matrix")
    }

    /// Builds a matrix from integer rows; panics if not square.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| crate::rational::ivec(r)).collect()).expect("square matrix")
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if x.len() != self.n {
            return Err(MatrixError::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n).map(|i| crate::rational::dot(self.row(i), x)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix product dimension mismatch");
        Self::from_fn(self.n, |i, j| (0..self.n).map(|k| &self[(i, k)] * &other[(k, j)]).sum())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix sum dimension mismatch");
        Self::from_fn(self.n, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix difference dimension mismatch");
        Self::from_fn(self.n, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    /// Entrywise `self <= other`.
    pub fn le(&self, other: &Matrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    /// Principal submatrix on the (sorted) index set `idx`.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        Self::from_fn(idx.len(), |a, b| self[(idx[a], idx[b])].clone())
    }

    /// Exact determinant by fraction-based Gaussian elimination.
    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &p;
                for k in col..n {
                    let delta = &factor * &a[col * n + k];
                    a[r * n + k] -= delta;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            match self.solve_affine(&e) {
                AffineSolution::Solutions { particular, nullspace } if nullspace.is_empty() => cols.push(particular),
                _ => return None,
            }
        }
        Some(Self::from_fn(n, |i, j| cols[j][i].clone()))
    }

    /// Unique solution of `A x = b`, if `A` is nonsingular.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        match self.solve_affine(b) {
            AffineSolution::Solutions { particular, nullspace } if nullspace.is_empty() => Some(particular),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        let zeros = vec![Rational::zero(); self.n];
        match self.solve_affine(&zeros) {
            AffineSolution::Solutions { nullspace, .. } => self.n - nullspace.len(),
            AffineSolution::Inconsistent => unreachable!("homogeneous systems are consistent"),
        }
    }

    /// Full solution set of `A x = b` via reduced row echelon form.
    pub fn solve_affine(&self, b: &[Rational]) -> AffineSolution {
        let n = self.n;
        assert_eq!(b.len(), n, "right-hand side length mismatch");
        // augmented rows
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..n).find(|&k| !rows[k][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for v in rows[r].iter_mut() {
                *v *= &inv;
            }
            for k in 0..n {
                if k != r && !rows[k][c].is_zero() {
                    let f = rows[k][c].clone();
                    for j in c..=n {
                        let delta = &f * &rows[r][j];
                        rows[k][j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        if rows[r..].iter().any(|row| !row[n].is_zero()) {
            return AffineSolution::Inconsistent;
        }
        let mut particular = vec![Rational::zero(); n];
        for (k, &c) in pivots.iter().enumerate() {
            particular[c] = rows[k][n].clone();
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let nullspace = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); n];
                v[f] = Rational::one();
                for (k, &c) in pivots.iter().enumerate() {
                    v[c] = -rows[k][f].clone();
                }
                v
            })
            .collect();
        AffineSolution::Solutions { particular, nullspace }
    }

    /// Every nonempty principal index set in order of bitmask.
    pub fn principal_index_sets(n: usize) -> impl Iterator<Item = Vec<usize>> {
        (1u32..(1 << n)).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
    }

    pub fn is_nonneg(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|x| x.is_positive())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

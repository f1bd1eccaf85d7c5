//! Closed intervals with exact rational endpoints, and the interval vectors and
//! matrices that hold the problem data `[M]` and `[q]`.

use std::fmt;

use num_traits::Signed;

use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval lower bound {lo} exceeds upper bound {hi}")]
    Inverted { lo: Rational, hi: Rational },
    #[error("negative scale factor {0}; only nonnegative scaling is supported")]
    NegativeScale(Rational),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("interval matrix must be square and nonempty")]
    NotSquare,
    #[error("interval vector must be nonempty")]
    EmptyVector,
}

/// `[lo, hi]` with `lo <= hi`. Point intervals are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

/// Result of intersecting two intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection<T> {
    Empty,
    NonEmpty(T),
}

impl<T> Intersection<T> {
    pub fn into_option(self) -> Option<T> {
        match self {
            Intersection::Empty => None,
            Intersection::NonEmpty(v) => Some(v),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Intersection::Empty)
    }
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(v: Rational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `[a] ∩ [b]`, empty unless `a.lo <= b.hi` and `b.lo <= a.hi`.
    pub fn intersect(&self, other: &Interval) -> Intersection<Interval> {
        if self.lo <= other.hi && other.lo <= self.hi {
            Intersection::NonEmpty(Interval {
                lo: self.lo.clone().max(other.lo.clone()),
                hi: self.hi.clone().min(other.hi.clone()),
            })
        } else {
            Intersection::Empty
        }
    }

    /// `t * [a]` for `t >= 0`; the only product needed because `z >= 0`.
    pub fn scale_nonneg(&self, t: &Rational) -> Result<Interval, IntervalError> {
        if t.is_negative() {
            return Err(IntervalError::NegativeScale(t.clone()));
        }
        Ok(Interval {
            lo: &self.lo * t,
            hi: &self.hi * t,
        })
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn shift(&self, c: &Rational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Range of `q_i + sum_j m_ij z_j` over `m_ij in row[j]`, `q_i in q`, for `z >= 0`.
pub fn interval_row_image(row: &[Interval], z: &[Rational], q: &Interval) -> Result<Interval, IntervalError> {
    if row.len() != z.len() {
        return Err(IntervalError::DimensionMismatch {
            expected: row.len(),
            found: z.len(),
        });
    }
    let mut acc = q.clone();
    for (m, zj) in row.iter().zip(z) {
        acc = acc.add(&m.scale_nonneg(zj)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalVector {
    entries: Vec<Interval>,
}

impl IntervalVector {
    pub fn new(entries: Vec<Interval>) -> Result<Self, IntervalError> {
        if entries.is_empty() {
            return Err(IntervalError::EmptyVector);
        }
        Ok(Self { entries })
    }

    pub fn from_point(v: &[Rational]) -> Self {
        Self {
            entries: v.iter().cloned().map(Interval::point).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Interval] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Interval {
        &self.entries[i]
    }

    pub fn lower(&self) -> Vec<Rational> {
        self.entries.iter().map(|e| e.lo.clone()).collect()
    }

    pub fn upper(&self) -> Vec<Rational> {
        self.entries.iter().map(|e| e.hi.clone()).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.len() && self.entries.iter().zip(v).all(|(e, x)| e.contains(x))
    }

    /// Componentwise intersection; empty as soon as one component is.
    pub fn intersect(&self, other: &IntervalVector) -> Result<Intersection<IntervalVector>, IntervalError> {
        if self.len() != other.len() {
            return Err(IntervalError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match a.intersect(b) {
                Intersection::Empty => return Ok(Intersection::Empty),
                Intersection::NonEmpty(c) => out.push(c),
            }
        }
        Ok(Intersection::NonEmpty(IntervalVector { entries: out }))
    }
}

/// Square box of matrices `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalMatrix {
    n: usize,
    entries: Vec<Interval>,
}

impl IntervalMatrix {
    pub fn new(rows: Vec<Vec<Interval>>) -> Result<Self, IntervalError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(IntervalError::NotSquare);
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_bounds(lower: &Matrix, upper: &Matrix) -> Result<Self, IntervalError> {
        if lower.dim() != upper.dim() {
            return Err(IntervalError::DimensionMismatch {
                expected: lower.dim(),
                found: upper.dim(),
            });
        }
        let n = lower.dim();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(Interval::new(lower[(i, j)].clone(), upper[(i, j)].clone())?);
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_point(m: &Matrix) -> Self {
        Self {
            n: m.dim(),
            entries: m.entries().cloned().map(Interval::point).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Interval {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Interval] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn lower(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j).lo.clone())
    }

    pub fn upper(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j).hi.clone())
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.dim() == self.n && (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j).contains(&m[(i, j)])))
    }

    pub fn is_point(&self) -> bool {
        self.entries.iter().all(Interval::is_point)
    }

    /// Number of entries with `lo < hi`.
    pub fn free_entries(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_point()).count()
    }
}

impl fmt::Display for IntervalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

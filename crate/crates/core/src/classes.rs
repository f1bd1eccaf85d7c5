//! Exact membership tests for Z-, M-, H+- and P-matrices, for point matrices
//! and for every member of an interval matrix. Each positive answer carries a
//! checkable certificate; each negative answer names what failed.

use std::fmt;

use num_traits::{One, Signed};

use crate::interval::IntervalMatrix;
use crate::matrix::Matrix;
use crate::rational::{is_positive, Rational};

/// Largest dimension accepted by the vertex sweep of [`interval_is_p`].
pub const MAX_P_SWEEP_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("vertex sweep limited to n <= {MAX_P_SWEEP_DIM}, got n = {0}")]
    TooLarge(usize),
}

/// Why a matrix (or box) is not in the requested class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassFailure {
    /// Off-diagonal entry `(row, col)` is positive, so not a Z-matrix.
    PositiveOffDiagonal { row: usize, col: usize, value: Rational },
    /// Diagonal entry is not positive (H+ needs a positive diagonal).
    NonPositiveDiagonal { index: usize, value: Rational },
    Singular,
    /// `A u = 1` was solvable but `u` is not positive, so no witness exists.
    WitnessNotPositive { solution: Vec<Rational> },
    /// A principal minor of `vertex` on `indices` is `<= 0`.
    NonPositiveMinor {
        vertex: Matrix,
        indices: Vec<usize>,
        minor: Rational,
    },
}

/// Outcome of a class test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassCertificate {
    Z,
    /// `u > 0` with `A u > 0`, plus the exact inverse (checked `>= 0`).
    M { witness: Vec<Rational>, inverse: Matrix },
    /// Comparison matrix (worst case over the box for interval input) with its M-witness.
    HPlus { comparison: Matrix, witness: Vec<Rational> },
    /// Every principal minor of every checked vertex is positive.
    P { vertices_checked: usize },
    NotInClass(ClassFailure),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Z,
    M,
    HPlus,
    P,
    NotInClass,
}

impl ClassCertificate {
    pub fn kind(&self) -> ClassKind {
        match self {
            ClassCertificate::Z => ClassKind::Z,
            ClassCertificate::M { .. } => ClassKind::M,
            ClassCertificate::HPlus { .. } => ClassKind::HPlus,
            ClassCertificate::P { .. } => ClassKind::P,
            ClassCertificate::NotInClass(_) => ClassKind::NotInClass,
        }
    }

    pub fn holds(&self) -> bool {
        !matches!(self, ClassCertificate::NotInClass(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            ClassCertificate::M { witness, .. } | ClassCertificate::HPlus { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

impl fmt::Display for ClassCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassCertificate::Z => write!(f, "Z-matrix"),
            ClassCertificate::M { witness, .. } => {
                write!(f, "M-matrix, witness u = {}", crate::rational::VecDisplay(witness))
            }
            ClassCertificate::HPlus { comparison, witness } => write!(
                f,
                "H+-matrix, comparison matrix {comparison} with witness u = {}",
                crate::rational::VecDisplay(witness)
            ),
            ClassCertificate::P { vertices_checked } => {
                write!(f, "P-matrix, {vertices_checked} vertex matrices checked")
            }
            ClassCertificate::NotInClass(why) => write!(f, "not in class: {why}"),
        }
    }
}

impl fmt::Display for ClassFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassFailure::PositiveOffDiagonal { row, col, value } => {
                write!(f, "off-diagonal entry ({}, {}) = {value} is positive", row + 1, col + 1)
            }
            ClassFailure::NonPositiveDiagonal { index, value } => {
                write!(f, "diagonal entry {} = {value} is not positive", index + 1)
            }
            ClassFailure::Singular => write!(f, "matrix is singular"),
            ClassFailure::WitnessNotPositive { solution } => {
                write!(f, "solution of Au = 1 is {}, not positive", crate::rational::VecDisplay(solution))
            }
            ClassFailure::NonPositiveMinor { vertex, indices, minor } => {
                let idx: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "vertex {vertex} has principal minor {{{}}} = {minor}", idx.join(","))
            }
        }
    }
}

pub fn is_z_matrix(a: &Matrix) -> bool {
    first_positive_off_diagonal(a).is_none()
}

fn first_positive_off_diagonal(a: &Matrix) -> Option<ClassFailure> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if i != j && a[(i, j)].is_positive() {
                return Some(ClassFailure::PositiveOffDiagonal {
                    row: i,
                    col: j,
                    value: a[(i, j)].clone(),
                });
            }
        }
    }
    None
}

/// `u > 0` and `A u > 0` for a Z-matrix `A`.
pub fn verify_m_witness(a: &Matrix, u: &[Rational]) -> bool {
    is_z_matrix(a) && is_positive(u) && a.mul_vec(u).map(|au| is_positive(&au)).unwrap_or(false)
}

/// M-matrix test. Tries `u = (1, ..., 1)` first, then the exact solution of
/// `A u = 1`; the inverse is computed and checked to be nonnegative.
pub fn is_m_matrix(a: &Matrix) -> ClassCertificate {
    if let Some(fail) = first_positive_off_diagonal(a) {
        return ClassCertificate::NotInClass(fail);
    }
    let n = a.dim();
    let ones = vec![Rational::one(); n];
    let witness = if verify_m_witness(a, &ones) {
        ones
    } else {
        match a.solve(&ones) {
            None => return ClassCertificate::NotInClass(ClassFailure::Singular),
            Some(u) if is_positive(&u) => u,
            Some(u) => return ClassCertificate::NotInClass(ClassFailure::WitnessNotPositive { solution: u }),
        }
    };
    let Some(inverse) = a.inverse() else {
        return ClassCertificate::NotInClass(ClassFailure::Singular);
    };
    assert!(
        inverse.is_nonneg(),
        "Z-matrix with a positive witness must have a nonnegative inverse"
    );
    ClassCertificate::M { witness, inverse }
}

/// Comparison matrix: `|a_ii|` on the diagonal, `-|a_ij|` off it.
pub fn comparison_matrix(a: &Matrix) -> Matrix {
    Matrix::from_fn(a.dim(), |i, j| if i == j { a[(i, j)].abs() } else { -a[(i, j)].abs() })
}

pub fn is_hplus_matrix(a: &Matrix) -> ClassCertificate {
    if let Some(i) = (0..a.dim()).find(|&i| !a[(i, i)].is_positive()) {
        return ClassCertificate::NotInClass(ClassFailure::NonPositiveDiagonal {
            index: i,
            value: a[(i, i)].clone(),
        });
    }
    let comparison = comparison_matrix(a);
    match is_m_matrix(&comparison) {
        ClassCertificate::M { witness, .. } => ClassCertificate::HPlus { comparison, witness },
        other => other,
    }
}

/// All principal minors positive, checked on each index set in bitmask order.
pub fn is_p_matrix(a: &Matrix) -> ClassCertificate {
    match first_nonpositive_minor(a) {
        None => ClassCertificate::P { vertices_checked: 1 },
        Some(fail) => ClassCertificate::NotInClass(fail),
    }
}

fn first_nonpositive_minor(a: &Matrix) -> Option<ClassFailure> {
    for idx in Matrix::principal_index_sets(a.dim()) {
        let minor = a.principal(&idx).det();
        if !minor.is_positive() {
            return Some(ClassFailure::NonPositiveMinor {
                vertex: a.clone(),
                indices: idx,
                minor,
            });
        }
    }
    None
}

/// Every member of the box is an M-matrix iff all upper off-diagonal bounds
/// are `<= 0` and the lower corner is an M-matrix.
pub fn interval_is_m(a: &IntervalMatrix) -> ClassCertificate {
    if let Some(fail) = first_positive_off_diagonal(&a.upper()) {
        return ClassCertificate::NotInClass(fail);
    }
    is_m_matrix(&a.lower())
}

/// Worst-case comparison matrix of a box: lower diagonal bounds, and minus the
/// largest magnitude off the diagonal.
pub fn worst_comparison_matrix(a: &IntervalMatrix) -> Matrix {
    Matrix::from_fn(a.dim(), |i, j| {
        let e = a.get(i, j);
        if i == j {
            e.lo().clone()
        } else {
            -(e.lo().abs().max(e.hi().abs()))
        }
    })
}

pub fn interval_is_hplus(a: &IntervalMatrix) -> ClassCertificate {
    if let Some(i) = (0..a.dim()).find(|&i| !a.get(i, i).lo().is_positive()) {
        return ClassCertificate::NotInClass(ClassFailure::NonPositiveDiagonal {
            index: i,
            value: a.get(i, i).lo().clone(),
        });
    }
    let comparison = worst_comparison_matrix(a);
    match is_m_matrix(&comparison) {
        ClassCertificate::M { witness, .. } => ClassCertificate::HPlus { comparison, witness },
        other => other,
    }
}

/// Vertex matrices of the box in sweep order: entries with `lo < hi` are the
/// bits of a counter, first free entry (row-major) most significant, `0 = lo`.
pub fn vertex_matrix(a: &IntervalMatrix, free: &[(usize, usize)], code: u64) -> Matrix {
    let mut m = a.lower();
    let k = free.len();
    for (pos, &(i, j)) in free.iter().enumerate() {
        if code >> (k - 1 - pos) & 1 == 1 {
            m[(i, j)] = a.get(i, j).hi().clone();
        }
    }
    m
}

pub fn free_positions(a: &IntervalMatrix) -> Vec<(usize, usize)> {
    let n = a.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !a.get(i, j).is_point())
        .collect()
}

/// P-matrix test over the whole box by sweeping its vertex matrices.
///
/// Principal minors are multilinear in the entries, so their minimum over the
/// box is attained at a vertex. Reports the first failing vertex in sweep order.
pub fn interval_is_p(a: &IntervalMatrix) -> Result<ClassCertificate, ClassError> {
    let n = a.dim();
    if n > MAX_P_SWEEP_DIM {
        return Err(ClassError::TooLarge(n));
    }
    let free = free_positions(a);
    let count = 1u64 << free.len();
    for code in 0..count {
        let vertex = vertex_matrix(a, &free, code);
        if let Some(fail) = first_nonpositive_minor(&vertex) {
            return Ok(ClassCertificate::NotInClass(fail));
        }
    }
    Ok(ClassCertificate::P {
        vertices_checked: count as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::rational::{int, ivec, rat, rvec};

    fn box2(entries: [[(i64, i64, i64, i64); 2]; 2]) -> IntervalMatrix {
        IntervalMatrix::new(
            entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&(a, b, c, d)| Interval::new(rat(a, b), rat(c, d)).unwrap())
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    fn m_2d_example() -> IntervalMatrix {
        box2([[(1, 8, 1, 1), (-1, 4, -1, 5)], [(-1, 4, -1, 5), (1, 1, 1, 1)]])
    }

    fn hplus_2d_example() -> IntervalMatrix {
        box2([[(4, 1, 5, 1), (-1, 1, 2, 1)], [(-1, 1, 2, 1), (2, 1, 3, 1)]])
    }

    #[test]
    fn z_matrix_examples() {
        assert!(is_z_matrix(&Matrix::identity(3)));
        assert!(is_z_matrix(&m_2d_example().lower()));
        assert!(!is_z_matrix(&Matrix::from_ints(&[&[2, 7], &[6, 5]])));
    }

    #[test]
    fn m_matrix_lower_corner_2d() {
        let lower = m_2d_example().lower();
        // the hand-picked witness from the worked example is valid too
        assert!(verify_m_witness(&lower, &ivec(&[3, 1])));
        match is_m_matrix(&lower) {
            ClassCertificate::M { witness, inverse } => {
                assert_eq!(witness, ivec(&[20, 6]));
                assert_eq!(inverse, Matrix::from_ints(&[&[16, 4], &[4, 2]]));
            }
            other => panic!("expected M certificate, got {other}"),
        }
    }

    #[test]
    fn singular_one_by_one_is_not_m() {
        assert_eq!(
            is_m_matrix(&Matrix::from_ints(&[&[0]])),
            ClassCertificate::NotInClass(ClassFailure::Singular)
        );
        assert!(!is_p_matrix(&Matrix::from_ints(&[&[0]])).holds());
    }

    #[test]
    fn interval_m_examples() {
        assert_eq!(interval_is_m(&m_2d_example()).kind(), ClassKind::M);
        match interval_is_m(&hplus_2d_example()) {
            ClassCertificate::NotInClass(ClassFailure::PositiveOffDiagonal { row: 0, col: 1, value }) => {
                assert_eq!(value, int(2))
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn comparison_matrix_examples() {
        let a = Matrix::from_ints(&[&[4, -2], &[-2, 2]]);
        assert_eq!(comparison_matrix(&a), a);
        assert_eq!(comparison_matrix(&Matrix::from_ints(&[&[4, 2], &[2, 2]])), a);
        assert_eq!(comparison_matrix(&Matrix::identity(3)), Matrix::identity(3));
    }

    #[test]
    fn hplus_box_2d_has_displayed_witness() {
        match interval_is_hplus(&hplus_2d_example()) {
            ClassCertificate::HPlus { comparison, witness } => {
                assert_eq!(comparison, Matrix::from_ints(&[&[4, -2], &[-2, 2]]));
                assert_eq!(witness, rvec(&[(1, 1), (3, 2)]));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn hplus_rejects_nonpositive_diagonal() {
        let a = box2([[(0, 1, 1, 1), (0, 1, 0, 1)], [(0, 1, 0, 1), (1, 1, 1, 1)]]);
        assert!(matches!(
            interval_is_hplus(&a),
            ClassCertificate::NotInClass(ClassFailure::NonPositiveDiagonal { index: 0, .. })
        ));
    }

    #[test]
    fn p_sweep_examples() {
        let point = IntervalMatrix::from_point(&Matrix::from_ints(&[&[2, 7], &[6, 5]]));
        match interval_is_p(&point).unwrap() {
            ClassCertificate::NotInClass(ClassFailure::NonPositiveMinor { indices, minor, .. }) => {
                assert_eq!(indices, vec![0, 1]);
                assert_eq!(minor, int(-32));
            }
            other => panic!("unexpected {other}"),
        }
        assert!(interval_is_p(&IntervalMatrix::from_point(&Matrix::identity(3))).unwrap().holds());
        let big = IntervalMatrix::from_point(&Matrix::identity(5));
        assert_eq!(interval_is_p(&big), Err(ClassError::TooLarge(5)));
    }

    #[test]
    fn p_sweep_reports_first_failing_vertex() {
        // only the (hi, hi) off-diagonal vertex fails: det = 1 - 4
        let a = box2([[(1, 1, 1, 1), (0, 1, 2, 1)], [(0, 1, 2, 1), (1, 1, 1, 1)]]);
        match interval_is_p(&a).unwrap() {
            ClassCertificate::NotInClass(ClassFailure::NonPositiveMinor { vertex, .. }) => {
                assert_eq!(vertex, Matrix::from_ints(&[&[1, 2], &[2, 1]]));
            }
            other => panic!("unexpected {other}"),
        }
    }
}

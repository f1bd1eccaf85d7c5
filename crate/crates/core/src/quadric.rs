//! Quadric inequalities that every point of the symmetric solution set must
//! satisfy, and their exact classification by eigenvalue signature.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::interval::{IntervalMatrix, IntervalVector};
use crate::matrix::{AffineSolution, Matrix};
use crate::rational::{dot, Rational};
use crate::solution_set::SupportPattern;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadricError {
    #[error("expected n = {expected}, got n = {found}")]
    Dimension { expected: usize, found: usize },
    #[error("pattern {0} does not have exactly two zero slacks")]
    PatternShape(String),
    #[error("classification supports n = 2 or n = 3, got n = {0}")]
    Unsupported(usize),
}

/// Which row supplies the lower bounds: `i` (and row `j` the upper bounds),
/// or the mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadricSide {
    LowerIUpperJ,
    LowerJUpperI,
}

/// `0 <= zᵀ Q z + bᵀ z + c`, a necessary condition for `z` in the symmetric
/// solution set on a pattern where `w_i = w_j = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricInequality {
    /// Symmetric; cross terms split evenly between `(k, l)` and `(l, k)`.
    pub q: Matrix,
    pub b: Vec<Rational>,
    pub c: Rational,
    /// The identified pair `m_ij = m_ji`, with `i < j` (zero-based).
    pub pair: (usize, usize),
    pub side: QuadricSide,
}

impl QuadricInequality {
    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn value(&self, z: &[Rational]) -> Rational {
        let qz = self.q.mul_vec(z).expect("dimension");
        dot(z, &qz) + dot(&self.b, z) + &self.c
    }

    pub fn is_satisfied(&self, z: &[Rational]) -> bool {
        !self.value(z).is_negative()
    }

    /// Coefficient of `z_k z_l` in the expanded polynomial.
    pub fn monomial(&self, k: usize, l: usize) -> Rational {
        if k == l {
            self.q[(k, k)].clone()
        } else {
            &self.q[(k, l)] + &self.q[(l, k)]
        }
    }

    pub fn provenance(&self) -> String {
        let (i, j) = self.pair;
        let (lo, hi) = match self.side {
            QuadricSide::LowerIUpperJ => (i, j),
            QuadricSide::LowerJUpperI => (j, i),
        };
        format!(
            "m{}{} = m{}{}: lower bounds of row {}, upper bounds of row {}",
            i + 1,
            j + 1,
            j + 1,
            i + 1,
            lo + 1,
            hi + 1
        )
    }
}

impl fmt::Display for QuadricInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut terms: Vec<(Rational, String)> = Vec::new();
        for k in 0..n {
            for l in k..n {
                let coef = self.monomial(k, l);
                let name = if k == l {
                    format!("z{}^2", k + 1)
                } else {
                    format!("z{} z{}", k + 1, l + 1)
                };
                terms.push((coef, name));
            }
        }
        for k in 0..n {
            terms.push((self.b[k].clone(), format!("z{}", k + 1)));
        }
        write!(f, "0 <= ")?;
        let mut first = true;
        for (coef, name) in terms.into_iter().filter(|(c, _)| !c.is_zero()) {
            let mag = coef.abs();
            if first {
                if coef.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if coef.is_negative() { "-" } else { "+" })?;
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag} {name}")?;
            }
            first = false;
        }
        if !self.c.is_zero() || first {
            if first {
                write!(f, "{}", self.c)?;
            } else {
                write!(f, " {} {}", if self.c.is_negative() { "-" } else { "+" }, self.c.abs())?;
            }
        }
        Ok(())
    }
}

/// Builds the inequality with row `lo` at its lower bounds and row `hi` at its
/// upper bounds; `others` are the remaining indices with `w = 0`.
fn pair_quadric(
    a: &IntervalMatrix,
    b: &IntervalVector,
    lo: usize,
    hi: usize,
    others: &[usize],
    side: QuadricSide,
) -> QuadricInequality {
    let n = a.dim();
    let half = Rational::new(1.into(), 2.into());
    let mut q = Matrix::zeros(n);
    let mut lin = vec![Rational::zero(); n];
    q[(hi, hi)] += a.get(hi, hi).hi();
    q[(lo, lo)] -= a.get(lo, lo).lo();
    for &k in others {
        let up = a.get(hi, k).hi() * &half;
        q[(hi, k)] += &up;
        q[(k, hi)] += &up;
        let down = a.get(lo, k).lo() * &half;
        q[(lo, k)] -= &down;
        q[(k, lo)] -= &down;
    }
    lin[hi] += b.get(hi).hi();
    lin[lo] -= b.get(lo).lo();
    QuadricInequality {
        q,
        b: lin,
        c: Rational::zero(),
        pair: (lo.min(hi), lo.max(hi)),
        side,
    }
}

/// Both inequalities for every pair `i < j` with `w_i = w_j = 0` in the
/// pattern, in pair order; for each pair the lower-`i` side comes first.
///
/// Derived from `m_ij z_i z_j = m_ji z_i z_j` with each side bounded through
/// its own row, so no division by `z` is needed and the inequalities hold on
/// the whole piece, boundary included.
pub fn pattern_quadrics(a: &IntervalMatrix, b: &IntervalVector, p: &SupportPattern) -> Vec<QuadricInequality> {
    let active = p.zero_w();
    let mut out = Vec::new();
    for (x, &i) in active.iter().enumerate() {
        for &j in &active[x + 1..] {
            let others: Vec<usize> = active.iter().copied().filter(|&k| k != i && k != j).collect();
            out.push(pair_quadric(a, b, i, j, &others, QuadricSide::LowerIUpperJ));
            out.push(pair_quadric(a, b, j, i, &others, QuadricSide::LowerJUpperI));
        }
    }
    out
}

fn check_dim(a: &IntervalMatrix, n: usize) -> Result<(), QuadricError> {
    if a.dim() != n {
        return Err(QuadricError::Dimension {
            expected: n,
            found: a.dim(),
        });
    }
    Ok(())
}

/// The two inequalities on the pattern with both slacks zero (n = 2).
pub fn sym_quadrics_2d(a: &IntervalMatrix, b: &IntervalVector) -> Result<[QuadricInequality; 2], QuadricError> {
    check_dim(a, 2)?;
    let v = pattern_quadrics(a, b, &SupportPattern::new(2, &[0, 1]));
    Ok([v[0].clone(), v[1].clone()])
}

/// The six inequalities on the pattern with all slacks zero (n = 3), pairs
/// (1,2), (1,3), (2,3).
pub fn sym_quadrics_3d_interior(a: &IntervalMatrix, b: &IntervalVector) -> Result<Vec<QuadricInequality>, QuadricError> {
    check_dim(a, 3)?;
    Ok(pattern_quadrics(a, b, &SupportPattern::new(3, &[0, 1, 2])))
}

/// The two inequalities for a pattern `w_i = w_j = 0`, `z_k = 0` (n = 3).
pub fn sym_quadrics_boundary(
    a: &IntervalMatrix,
    b: &IntervalVector,
    p: &SupportPattern,
) -> Result<[QuadricInequality; 2], QuadricError> {
    check_dim(a, 3)?;
    if p.dim() != 3 || p.zero_w().len() != 2 {
        return Err(QuadricError::PatternShape(p.to_string()));
    }
    let v = pattern_quadrics(a, b, p);
    Ok([v[0].clone(), v[1].clone()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadricLabel {
    Ellipsoid,
    HyperboloidFamily,
    HyperbolicParaboloid,
    EllipticParaboloid,
    HyperbolicCylinder,
    EllipticCylinder,
    ParabolicCylinder,
    TwoIntersectingPlanes,
    OtherDegenerate,
}

impl QuadricLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuadricLabel::Ellipsoid => "ellipsoid",
            QuadricLabel::HyperboloidFamily => "hyperboloid-family",
            QuadricLabel::HyperbolicParaboloid => "hyperbolic-paraboloid",
            QuadricLabel::EllipticParaboloid => "elliptic-paraboloid",
            QuadricLabel::HyperbolicCylinder => "hyperbolic-cylinder",
            QuadricLabel::EllipticCylinder => "elliptic-cylinder",
            QuadricLabel::ParabolicCylinder => "parabolic-cylinder",
            QuadricLabel::TwoIntersectingPlanes => "two-intersecting-planes",
            QuadricLabel::OtherDegenerate => "other-degenerate",
        }
    }

    pub fn all() -> [QuadricLabel; 9] {
        [
            QuadricLabel::Ellipsoid,
            QuadricLabel::HyperboloidFamily,
            QuadricLabel::HyperbolicParaboloid,
            QuadricLabel::EllipticParaboloid,
            QuadricLabel::HyperbolicCylinder,
            QuadricLabel::EllipticCylinder,
            QuadricLabel::ParabolicCylinder,
            QuadricLabel::TwoIntersectingPlanes,
            QuadricLabel::OtherDegenerate,
        ]
    }
}

impl fmt::Display for QuadricLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Eigenvalue sign counts of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.plus, self.minus, self.zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricClass {
    /// Signature of `Q` in the quadric's own dimension.
    pub signature: Signature,
    pub label: QuadricLabel,
    /// `det(λI - Q)`, coefficients from `λ^n` down to the constant.
    pub char_poly: Vec<Rational>,
    /// A point `x0` with `2 Q x0 = -b`, when the linear part can be absorbed.
    pub center: Option<Vec<Rational>>,
    /// Constant after shifting to `center`.
    pub reduced_constant: Option<Rational>,
}

/// Coefficients of `det(λI - A)` from `λ^n` down: `(-1)^k` times the sum of
/// the `k x k` principal minors.
pub fn char_poly(a: &Matrix) -> Vec<Rational> {
    let n = a.dim();
    let mut e = vec![Rational::zero(); n + 1];
    e[0] = Rational::one();
    for idx in Matrix::principal_index_sets(n) {
        e[idx.len()] += a.principal(&idx).det();
    }
    e.into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { -v } else { v })
        .collect()
}

fn sign_changes(coeffs: impl Iterator<Item = Rational>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in coeffs.filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Signature from the characteristic polynomial. The roots are all real, so
/// Descartes' bound is attained on `p(λ)` and `p(-λ)` once the zero roots
/// (trailing zero coefficients) are removed.
pub fn signature_from_char_poly(p: &[Rational]) -> Signature {
    let n = p.len() - 1;
    let zero = p.iter().rev().take_while(|c| c.is_zero()).count().min(n);
    let reduced = &p[..p.len() - zero];
    let plus = sign_changes(reduced.iter().cloned());
    let deg = reduced.len() - 1;
    let minus = sign_changes(
        reduced
            .iter()
            .enumerate()
            .map(|(k, c)| if (deg - k) % 2 == 1 { -c } else { c.clone() }),
    );
    Signature { plus, minus, zero }
}

pub fn signature(a: &Matrix) -> Signature {
    signature_from_char_poly(&char_poly(a))
}

fn embed3(qi: &QuadricInequality) -> (Matrix, Vec<Rational>) {
    let n = qi.dim();
    let q = Matrix::from_fn(3, |k, l| if k < n && l < n { qi.q[(k, l)].clone() } else { Rational::zero() });
    let mut b = qi.b.clone();
    b.resize(3, Rational::zero());
    (q, b)
}

/// Classifies the zero set `zᵀQz + bᵀz + c = 0`. Planar quadrics (n = 2) are
/// classified as the cylinders they sweep out in three dimensions.
pub fn classify_quadric(qi: &QuadricInequality) -> Result<QuadricClass, QuadricError> {
    let n = qi.dim();
    if !(2..=3).contains(&n) {
        return Err(QuadricError::Unsupported(n));
    }
    let own_poly = char_poly(&qi.q);
    let own_sig = signature_from_char_poly(&own_poly);
    let (q3, b3) = embed3(qi);
    let sig = signature(&q3);
    let rank = 3 - sig.zero;
    let half_b: Vec<Rational> = b3.iter().map(|x| -x / Rational::from_integer(2.into())).collect();
    let (center, reduced) = match q3.solve_affine(&half_b) {
        AffineSolution::Inconsistent => (None, None),
        AffineSolution::Solutions { particular, .. } => {
            let c = &qi.c + dot(&b3, &particular) / Rational::from_integer(2.into());
            let mut x0 = particular;
            x0.truncate(n);
            (Some(x0), Some(c))
        }
    };
    let mixed = sig.plus > 0 && sig.minus > 0;
    // eigenvalue sign when all nonzero eigenvalues agree
    let definite_positive = sig.plus > 0;
    let opposite = |c: &Rational| {
        if definite_positive {
            c.is_negative()
        } else {
            c.is_positive()
        }
    };
    use QuadricLabel::*;
    let label = match (rank, &reduced) {
        (3, Some(c)) if !mixed && opposite(c) => Ellipsoid,
        (3, _) if !mixed => OtherDegenerate,
        (3, _) => HyperboloidFamily,
        (2, Some(c)) if mixed => {
            if c.is_zero() {
                TwoIntersectingPlanes
            } else {
                HyperbolicCylinder
            }
        }
        (2, Some(c)) => {
            if opposite(c) {
                EllipticCylinder
            } else {
                OtherDegenerate
            }
        }
        (2, None) if mixed => HyperbolicParaboloid,
        (2, None) => EllipticParaboloid,
        (1, None) => ParabolicCylinder,
        _ => OtherDegenerate,
    };
    Ok(QuadricClass {
        signature: own_sig,
        label,
        char_poly: own_poly,
        center,
        reduced_constant: reduced,
    })
}

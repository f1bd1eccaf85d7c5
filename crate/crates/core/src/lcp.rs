//! Exact LCP solving by complementary-support enumeration, and the monotone
//! bounds check between two ordered LCPs.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::classes::is_m_matrix;
use crate::interval::{IntervalMatrix, IntervalVector};
use crate::matrix::{AffineSolution, Matrix};
use crate::rational::{is_nonneg, vec_le, vec_lt, Rational, VecDisplay};

/// Largest dimension accepted by [`solve_lcp`].
pub const MAX_LCP_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LcpError {
    #[error("matrix is {n}x{n} but q has length {q_len}")]
    DimensionMismatch { n: usize, q_len: usize },
    #[error("support enumeration limited to n <= {MAX_LCP_DIM}, got n = {0}")]
    TooLarge(usize),
    #[error("data not ordered: need hat M <= tilde M and hat q <= tilde q entrywise")]
    NotOrdered,
    #[error("{which} z = {z} does not solve its LCP")]
    NotASolution { which: &'static str, z: String },
    #[error("neither corner matrix is certified as an M-matrix")]
    PremiseNotCertified,
}

/// `w = q + M z`, find `z >= 0`, `w >= 0`, `zᵀw = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpInstance {
    pub m: Matrix,
    pub q: Vec<Rational>,
}

impl LcpInstance {
    pub fn new(m: Matrix, q: Vec<Rational>) -> Result<Self, LcpError> {
        if m.dim() != q.len() {
            return Err(LcpError::DimensionMismatch { n: m.dim(), q_len: q.len() });
        }
        Ok(LcpInstance { m, q })
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn slack(&self, z: &[Rational]) -> Vec<Rational> {
        let mz = self.m.mul_vec(z).expect("dimension checked at construction");
        mz.into_iter().zip(&self.q).map(|(a, b)| a + b).collect()
    }

    /// The exact triple check `z >= 0`, `q + M z >= 0`, `zᵀ(q + M z) = 0`.
    pub fn is_solution(&self, z: &[Rational]) -> bool {
        if z.len() != self.dim() || !is_nonneg(z) {
            return false;
        }
        let w = self.slack(z);
        is_nonneg(&w) && z.iter().zip(&w).all(|(a, b)| a.is_zero() || b.is_zero())
    }
}

/// One-parameter family `base + t·direction` for `t` in `[0, length]`, or
/// `t >= 0` when `length` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SolutionFamily {
    pub base: Vec<Rational>,
    pub direction: Vec<Rational>,
    pub length: Option<Rational>,
}

impl SolutionFamily {
    pub fn at(&self, t: &Rational) -> Vec<Rational> {
        self.base.iter().zip(&self.direction).map(|(b, d)| b + t * d).collect()
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        // direction is nonzero; recover t from its first nonzero entry
        let Some(k) = self.direction.iter().position(|d| !d.is_zero()) else {
            return self.base == z;
        };
        let t = (&z[k] - &self.base[k]) / &self.direction[k];
        !t.is_negative() && self.length.as_ref().is_none_or(|len| t <= *len) && self.at(&t) == z
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + t·{}", VecDisplay(&self.base), VecDisplay(&self.direction))?;
        match &self.length {
            Some(len) => write!(f, ", 0 <= t <= {len}"),
            None => write!(f, ", t >= 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpSolutionSet {
    /// Isolated solutions, sorted, none lying on a recorded family.
    pub points: Vec<Vec<Rational>>,
    pub families: Vec<SolutionFamily>,
    /// False when some support had a solution space of dimension two or more.
    pub complete: bool,
}

impl LcpSolutionSet {
    pub fn unique(&self) -> Option<&[Rational]> {
        match (self.points.as_slice(), self.families.is_empty()) {
            ([z], true) => Some(z),
            _ => None,
        }
    }
}

enum SupportOutcome {
    Nothing,
    Point(Vec<Rational>),
    Family(SolutionFamily),
    Unresolved,
}

fn embed(n: usize, support: &[usize], values: &[Rational]) -> Vec<Rational> {
    let mut z = vec![Rational::zero(); n];
    for (&i, v) in support.iter().zip(values) {
        z[i] = v.clone();
    }
    z
}

fn solve_support(inst: &LcpInstance, support: &[usize]) -> SupportOutcome {
    let n = inst.dim();
    if support.is_empty() {
        return if is_nonneg(&inst.q) {
            SupportOutcome::Point(vec![Rational::zero(); n])
        } else {
            SupportOutcome::Nothing
        };
    }
    let sub = inst.m.principal(support);
    let rhs: Vec<Rational> = support.iter().map(|&i| -&inst.q[i]).collect();
    let (particular, nullspace) = match sub.solve_affine(&rhs) {
        AffineSolution::Inconsistent => return SupportOutcome::Nothing,
        AffineSolution::Solutions { particular, nullspace } => (particular, nullspace),
    };
    let p = embed(n, support, &particular);
    match nullspace.len() {
        0 => {
            if inst.is_solution(&p) {
                SupportOutcome::Point(p)
            } else {
                SupportOutcome::Nothing
            }
        }
        1 => {
            let d = embed(n, support, &nullspace[0]);
            // Every coordinate and every slack is affine in t: a·t + c >= 0.
            let wp = inst.slack(&p);
            let wd: Vec<Rational> = inst.m.mul_vec(&d).expect("square");
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            let mut constrain = |a: &Rational, c: &Rational| -> bool {
                if a.is_zero() {
                    return !c.is_negative();
                }
                let t = -c / a;
                if a.is_positive() {
                    if lo.as_ref().is_none_or(|l| t > *l) {
                        lo = Some(t);
                    }
                } else if hi.as_ref().is_none_or(|h| t < *h) {
                    hi = Some(t);
                }
                true
            };
            for i in 0..n {
                let ok = if support.contains(&i) {
                    constrain(&d[i], &p[i])
                } else {
                    constrain(&wd[i], &wp[i])
                };
                if !ok {
                    return SupportOutcome::Nothing;
                }
            }
            let point = |t: &Rational| -> Vec<Rational> { p.iter().zip(&d).map(|(a, b)| a + t * b).collect() };
            let (base, direction, length) = match (lo, hi) {
                (Some(l), Some(h)) if l > h => return SupportOutcome::Nothing,
                (Some(l), Some(h)) if l == h => return SupportOutcome::Point(point(&l)),
                (Some(l), Some(h)) => (point(&l), d.clone(), Some(h - l)),
                (Some(l), None) => (point(&l), d.clone(), None),
                (None, Some(h)) => (point(&h), d.iter().map(|x| -x).collect(), None),
                (None, None) => unreachable!("a nonzero direction in a support bounds t on one side"),
            };
            let scale = direction.iter().find(|x| !x.is_zero()).expect("nonzero direction").abs();
            let direction: Vec<Rational> = direction.iter().map(|x| x / &scale).collect();
            let length = length.map(|len| len * &scale);
            SupportOutcome::Family(SolutionFamily { base, direction, length })
        }
        _ => SupportOutcome::Unresolved,
    }
}

/// All solutions of the LCP by enumerating the `2^n` supports.
///
/// For each support `S`, `M_SS z_S = -q_S` is solved exactly with `z` zero
/// off `S`. Singular consistent systems with a one-dimensional solution space
/// become families; larger solution spaces clear `complete`.
pub fn solve_lcp(inst: &LcpInstance) -> Result<LcpSolutionSet, LcpError> {
    let n = inst.dim();
    if n > MAX_LCP_DIM {
        return Err(LcpError::TooLarge(n));
    }
    let outcomes: Vec<SupportOutcome> = (0u32..(1 << n))
        .into_par_iter()
        .map(|mask| {
            let support: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            solve_support(inst, &support)
        })
        .collect();
    let mut points = Vec::new();
    let mut families = Vec::new();
    let mut complete = true;
    for o in outcomes {
        match o {
            SupportOutcome::Nothing => {}
            SupportOutcome::Point(z) => points.push(z),
            SupportOutcome::Family(f) => families.push(f),
            SupportOutcome::Unresolved => complete = false,
        }
    }
    families.sort();
    families.dedup();
    points.sort();
    points.dedup();
    points.retain(|z| !families.iter().any(|f| f.contains(z)));
    debug_assert!(points.iter().all(|z| inst.is_solution(z)));
    Ok(LcpSolutionSet {
        points,
        families,
        complete,
    })
}

/// Which premises of the monotone bounds theorem hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MonotonePremise {
    pub hat_is_m: bool,
    pub tilde_is_m: bool,
    /// `M̂⁻¹ > O` entrywise (strict).
    pub hat_inv_positive: bool,
    pub tilde_inv_positive: bool,
}

impl MonotonePremise {
    pub fn any_m(&self) -> bool {
        self.hat_is_m || self.tilde_is_m
    }

    pub fn any_inverse_positive(&self) -> bool {
        self.hat_inv_positive || self.tilde_inv_positive
    }
}

/// The two alternative hypotheses for the strict conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupplementBranch {
    /// `z̃ > 0` and some `m̂_ij < m̃_ij` or `q̂_i < q̃_i`.
    PositiveWithGap,
    /// `q̃ = -M̃ z̃` and some `q̂_i < q̃_i`.
    ZeroSlackWithQGap,
}

impl fmt::Display for SupplementBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupplementBranch::PositiveWithGap => write!(f, "tilde z > 0 with a strict data gap"),
            SupplementBranch::ZeroSlackWithQGap => write!(f, "tilde q = -tilde M tilde z with a strict q gap"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneVerdict {
    pub premise: MonotonePremise,
    /// `z̃ <= ẑ` componentwise (reported even when no premise holds).
    pub ordering_holds: bool,
    /// First supplement branch whose data hypotheses hold, if the M premise holds.
    pub branch: Option<SupplementBranch>,
    /// `Some(z̃ < ẑ)` when the supplement applies in full.
    pub strict_holds: Option<bool>,
}

impl MonotoneVerdict {
    /// The theorem asserts something about this pair.
    pub fn asserts_ordering(&self) -> bool {
        self.premise.any_m()
    }

    pub fn supplement_applies(&self) -> bool {
        self.strict_holds.is_some()
    }

    /// Every assertion the theorem makes for this pair is true.
    pub fn consistent(&self) -> bool {
        (!self.asserts_ordering() || self.ordering_holds) && self.strict_holds != Some(false)
    }
}

impl fmt::Display for MonotoneVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.asserts_ordering() {
            return write!(f, "no premise holds; ordering {} (not asserted)", self.ordering_holds);
        }
        write!(f, "ordering tilde z <= hat z: {}", self.ordering_holds)?;
        match (&self.branch, &self.strict_holds) {
            (Some(b), Some(s)) => write!(f, "; supplement via {b}: strict {s}"),
            (Some(b), None) => write!(f, "; {b} but no inverse is positive, supplement not applicable"),
            (None, _) => write!(f, "; supplement not applicable"),
        }
    }
}

/// Checks the monotone bounds theorem on one ordered pair of LCPs.
pub fn check_monotone(
    hat: &LcpInstance,
    tilde: &LcpInstance,
    hat_z: &[Rational],
    tilde_z: &[Rational],
) -> Result<MonotoneVerdict, LcpError> {
    let n = hat.dim();
    if tilde.dim() != n {
        return Err(LcpError::DimensionMismatch { n, q_len: tilde.dim() });
    }
    if !hat.m.le(&tilde.m) || !vec_le(&hat.q, &tilde.q) {
        return Err(LcpError::NotOrdered);
    }
    if !hat.is_solution(hat_z) {
        return Err(LcpError::NotASolution {
            which: "hat",
            z: VecDisplay(hat_z).to_string(),
        });
    }
    if !tilde.is_solution(tilde_z) {
        return Err(LcpError::NotASolution {
            which: "tilde",
            z: VecDisplay(tilde_z).to_string(),
        });
    }
    let inv_positive = |m: &Matrix| m.inverse().is_some_and(|inv| inv.is_positive());
    let premise = MonotonePremise {
        hat_is_m: is_m_matrix(&hat.m).holds(),
        tilde_is_m: is_m_matrix(&tilde.m).holds(),
        hat_inv_positive: inv_positive(&hat.m),
        tilde_inv_positive: inv_positive(&tilde.m),
    };
    let ordering_holds = vec_le(tilde_z, hat_z);
    let mut verdict = MonotoneVerdict {
        premise,
        ordering_holds,
        branch: None,
        strict_holds: None,
    };
    if !premise.any_m() {
        return Ok(verdict);
    }
    let q_gap = hat.q.iter().zip(&tilde.q).any(|(a, b)| a < b);
    let m_gap = hat.m.entries().zip(tilde.m.entries()).any(|(a, b)| a < b);
    let tilde_positive = tilde_z.iter().all(|x| x.is_positive());
    let zero_slack = tilde.slack(tilde_z).iter().all(Zero::is_zero);
    verdict.branch = if tilde_positive && (m_gap || q_gap) {
        Some(SupplementBranch::PositiveWithGap)
    } else if zero_slack && q_gap {
        Some(SupplementBranch::ZeroSlackWithQGap)
    } else {
        None
    };
    if verdict.branch.is_some() && premise.any_inverse_positive() {
        verdict.strict_holds = Some(vec_lt(tilde_z, hat_z));
    }
    Ok(verdict)
}

/// Componentwise infimum and supremum of the solution set from the corner
/// problems. `sup` needs the lower corner to be an M-matrix, `inf` the upper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalSolutions {
    /// Unique solution of `(M̄, q̄)`, present when `M̄` is an M-matrix.
    pub inf: Option<Vec<Rational>>,
    /// Unique solution of `(M̲, q̲)`, present when `M̲` is an M-matrix.
    pub sup: Option<Vec<Rational>>,
}

pub fn extremal_solutions(a: &IntervalMatrix, b: &IntervalVector) -> Result<ExtremalSolutions, LcpError> {
    let corner = |m: Matrix, q: Vec<Rational>| -> Result<Option<Vec<Rational>>, LcpError> {
        if !is_m_matrix(&m).holds() {
            return Ok(None);
        }
        let inst = LcpInstance::new(m, q)?;
        let sol = solve_lcp(&inst)?;
        let z = sol.unique().expect("an M-matrix LCP has exactly one solution").to_vec();
        Ok(Some(z))
    };
    let inf = corner(a.upper(), b.upper())?;
    let sup = corner(a.lower(), b.lower())?;
    if inf.is_none() && sup.is_none() {
        return Err(LcpError::PremiseNotCertified);
    }
    Ok(ExtremalSolutions { inf, sup })
}

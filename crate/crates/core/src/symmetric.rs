//! Exact point membership in the solution set and in the symmetric solution
//! set, plus the per-piece symmetric analysis used by reports.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::interval::{interval_row_image, Intersection, Interval, IntervalMatrix, IntervalVector};
use crate::lcp::LcpInstance;
use crate::linear::{Constraint, FarkasCertificate, Feasibility, LinearSystem, Var};
use crate::matrix::Matrix;
use crate::quadric::{classify_quadric, pattern_quadrics, QuadricClass, QuadricInequality};
use crate::rational::{is_nonneg, Rational};
use crate::solution_set::{SolutionPiece, SolutionSetReport, SupportPattern};

/// `z` solves the LCP for some `M` in `[A]` and `q` in `[b]`: each row image
/// must contain `0` where `z_i > 0` and reach `0` or above where `z_i = 0`.
pub fn in_solution_set(z: &[Rational], a: &IntervalMatrix, b: &IntervalVector) -> bool {
    if z.len() != a.dim() || !is_nonneg(z) {
        return false;
    }
    (0..a.dim()).all(|i| {
        let image = interval_row_image(a.row(i), z, b.get(i)).expect("dimensions checked");
        if z[i].is_positive() {
            image.contains_zero()
        } else {
            !image.hi().is_negative()
        }
    })
}

/// The box of `m_ij = m_ji` for `i <= j`: the diagonal box, or the
/// intersection of the two off-diagonal boxes.
pub fn symmetric_box(a: &IntervalMatrix, i: usize, j: usize) -> Intersection<Interval> {
    if i == j {
        Intersection::NonEmpty(a.get(i, i).clone())
    } else {
        a.get(i, j).intersect(a.get(j, i))
    }
}

/// One step of the interval-propagation explanation for a non-member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainStep {
    /// `[a_ij] ∩ [a_ji]` is empty, so no symmetric member exists at all.
    EmptySymmetricBox { i: usize, j: usize },
    /// The image of `row` touches `0` only at an endpoint, forcing every
    /// parameter in it to the matching bound.
    Forced { row: usize, values: Vec<(Var, Rational)> },
    /// The image of `row` cannot meet the row's requirement.
    RowExcludesZero { row: usize, image: Interval, equality: bool },
}

impl fmt::Display for ChainStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainStep::EmptySymmetricBox { i, j } => {
                write!(f, "[m{a}{b}] and [m{b}{a}] are disjoint", a = i + 1, b = j + 1)
            }
            ChainStep::Forced { row, values } => {
                let parts: Vec<String> = values.iter().map(|(v, x)| format!("{v} = {x}")).collect();
                write!(f, "{} forced by row {}", parts.join(", "), row + 1)
            }
            ChainStep::RowExcludesZero { row, image, equality } => {
                if *equality {
                    write!(f, "row {} image {image} excludes 0", row + 1)
                } else {
                    write!(f, "row {} image {image} lies below 0", row + 1)
                }
            }
        }
    }
}

/// Range of `m_ii` implied by rows `i` and `j` (both with `z > 0`) once
/// `m_ij = m_ji` is eliminated, ignoring the box of `m_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRange {
    pub i: usize,
    pub j: usize,
    pub derived: Interval,
    pub allowed: Interval,
}

impl PairRange {
    pub fn contradicts(&self) -> bool {
        self.derived.intersect(&self.allowed).is_empty()
    }
}

impl fmt::Display for PairRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.i + 1;
        write!(
            f,
            "eliminating m{i}{j} = m{j}{i} forces m{i}{i} in {}, allowed {}",
            self.derived,
            self.allowed,
            j = self.j + 1
        )?;
        if self.contradicts() {
            write!(f, " (disjoint)")?;
        }
        Ok(())
    }
}

/// Symmetric `M` in `[A]` and `q` in `[b]` for which `z` solves the LCP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricWitness {
    pub m: Matrix,
    pub q: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricVerdict {
    pub member: bool,
    pub witness: Option<SymmetricWitness>,
    /// Parameter system and its Farkas certificate when not a member.
    pub certificate: Option<(LinearSystem, FarkasCertificate)>,
    /// Human-readable propagation chain; may be inconclusive when the
    /// contradiction needs more than interval reasoning.
    pub chain: Vec<ChainStep>,
    pub pair_ranges: Vec<PairRange>,
}

impl SymmetricVerdict {
    pub fn chain_text(&self) -> String {
        self.chain.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    }
}

/// Checks a witness exactly: symmetric, inside the boxes, and solving the LCP at `z`.
pub fn verify_witness(w: &SymmetricWitness, z: &[Rational], a: &IntervalMatrix, b: &IntervalVector) -> bool {
    w.m.is_symmetric()
        && a.contains(&w.m)
        && b.contains(&w.q)
        && LcpInstance::new(w.m.clone(), w.q.clone()).is_ok_and(|inst| inst.is_solution(z))
}

fn unit_row(d: usize) -> Vec<Rational> {
    vec![Rational::zero(); d]
}

/// The linear system over the free parameters `m_ij (i <= j)` and `q_i`.
/// Point entries are folded into the constants; entries multiplying only
/// zero coordinates are dropped unless their box is empty.
pub fn parameter_system(z: &[Rational], a: &IntervalMatrix, b: &IntervalVector) -> LinearSystem {
    let n = a.dim();
    let mut vars: Vec<Var> = Vec::new();
    let mut boxes: Vec<Vec<Interval>> = Vec::new();
    // constant part of entry (i <= j) when fixed
    let mut fixed: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let relevant = z[i].is_positive() || z[j].is_positive();
            match symmetric_box(a, i, j) {
                Intersection::Empty => {
                    vars.push(Var::M(i, j));
                    boxes.push(vec![a.get(i, j).clone(), a.get(j, i).clone()]);
                }
                Intersection::NonEmpty(bx) if bx.is_point() => {
                    fixed.insert((i, j), bx.lo().clone());
                }
                Intersection::NonEmpty(bx) if relevant => {
                    vars.push(Var::M(i, j));
                    boxes.push(vec![bx]);
                }
                Intersection::NonEmpty(bx) => {
                    fixed.insert((i, j), bx.lo().clone());
                }
            }
        }
    }
    let mut q_fixed: Vec<Option<Rational>> = vec![None; n];
    for i in 0..n {
        let bx = b.get(i);
        if bx.is_point() {
            q_fixed[i] = Some(bx.lo().clone());
        } else {
            vars.push(Var::Q(i));
            boxes.push(vec![bx.clone()]);
        }
    }
    let d = vars.len();
    let index: BTreeMap<Var, usize> = vars.iter().enumerate().map(|(k, v)| (*v, k)).collect();
    let mut sys = LinearSystem::new(vars.clone());
    for i in 0..n {
        let mut coeffs = unit_row(d);
        let mut constant = Rational::zero();
        match &q_fixed[i] {
            Some(v) => constant += v,
            None => coeffs[index[&Var::Q(i)]] += crate::rational::one(),
        }
        for j in 0..n {
            if z[j].is_zero() {
                continue;
            }
            let key = (i.min(j), i.max(j));
            match fixed.get(&key) {
                Some(v) => constant += v * &z[j],
                None => coeffs[index[&Var::M(key.0, key.1)]] += &z[j],
            }
        }
        let rhs = -constant;
        if z[i].is_positive() {
            sys.push(Constraint::le(coeffs.clone(), rhs.clone()));
            sys.push(Constraint::ge(coeffs, rhs));
        } else {
            sys.push(Constraint::ge(coeffs, rhs));
        }
    }
    for (k, bxs) in boxes.iter().enumerate() {
        for bx in bxs {
            let mut e = unit_row(d);
            e[k] = Rational::from_integer(1.into());
            sys.push(Constraint::ge(e.clone(), bx.lo().clone()));
            sys.push(Constraint::le(e, bx.hi().clone()));
        }
    }
    sys
}

fn assemble_witness(
    sys: &LinearSystem,
    x: &[Rational],
    z: &[Rational],
    a: &IntervalMatrix,
    b: &IntervalVector,
) -> SymmetricWitness {
    let n = a.dim();
    let value = |v: Var| sys.index_of(v).map(|k| x[k].clone());
    let m = Matrix::from_fn(n, |i, j| {
        let (p, r) = (i.min(j), i.max(j));
        value(Var::M(p, r)).unwrap_or_else(|| match symmetric_box(a, p, r) {
            Intersection::NonEmpty(bx) => bx.lo().clone(),
            Intersection::Empty => unreachable!("empty boxes are always variables"),
        })
    });
    let q = (0..n).map(|i| value(Var::Q(i)).unwrap_or_else(|| b.get(i).lo().clone())).collect();
    let w = SymmetricWitness { m, q };
    assert!(verify_witness(&w, z, a, b), "symmetric witness failed exact verification");
    w
}

/// Interval propagation explaining why `z` is not in the symmetric set.
pub fn propagation_chain(z: &[Rational], a: &IntervalMatrix, b: &IntervalVector) -> Vec<ChainStep> {
    let n = a.dim();
    let mut chain = Vec::new();
    let mut m_box: BTreeMap<(usize, usize), Interval> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            match symmetric_box(a, i, j) {
                Intersection::NonEmpty(bx) => {
                    m_box.insert((i, j), bx);
                }
                Intersection::Empty => {
                    chain.push(ChainStep::EmptySymmetricBox { i, j });
                    return chain;
                }
            }
        }
    }
    let mut q_box: Vec<Interval> = b.entries().to_vec();
    let key = |i: usize, j: usize| (i.min(j), i.max(j));
    // at most one forcing step per row and entry, so this terminates
    for _ in 0..=(n * n + n) {
        let images: Vec<Interval> = (0..n)
            .map(|i| {
                let row: Vec<Interval> = (0..n).map(|j| m_box[&key(i, j)].clone()).collect();
                interval_row_image(&row, z, &q_box[i]).expect("dimensions")
            })
            .collect();
        for (i, image) in images.iter().enumerate() {
            let equality = z[i].is_positive();
            let fails = if equality {
                !image.contains_zero()
            } else {
                image.hi().is_negative()
            };
            if fails {
                chain.push(ChainStep::RowExcludesZero {
                    row: i,
                    image: image.clone(),
                    equality,
                });
                return chain;
            }
        }
        let mut forced = None;
        for (i, image) in images.iter().enumerate() {
            let at_hi = image.hi().is_zero();
            let at_lo = image.lo().is_zero() && z[i].is_positive();
            if !(at_hi || at_lo) {
                continue;
            }
            let mut values = Vec::new();
            for j in 0..n {
                let bx = &m_box[&key(i, j)];
                if z[j].is_positive() && !bx.is_point() {
                    let v = if at_hi { bx.hi().clone() } else { bx.lo().clone() };
                    values.push((Var::M(i, j), v));
                }
            }
            if !q_box[i].is_point() {
                let v = if at_hi { q_box[i].hi().clone() } else { q_box[i].lo().clone() };
                values.push((Var::Q(i), v));
            }
            if !values.is_empty() {
                forced = Some((i, values));
                break;
            }
        }
        let Some((row, values)) = forced else {
            return chain;
        };
        for (v, x) in &values {
            match *v {
                Var::M(i, j) => {
                    m_box.insert(key(i, j), Interval::point(x.clone()));
                }
                Var::Q(i) => q_box[i] = Interval::point(x.clone()),
                _ => unreachable!(),
            }
        }
        chain.push(ChainStep::Forced { row, values });
    }
    chain
}

/// Range of `m_ii` for every ordered pair of rows with positive `z`.
pub fn pair_ranges(z: &[Rational], a: &IntervalMatrix, b: &IntervalVector) -> Vec<PairRange> {
    let n = a.dim();
    let mut out = Vec::new();
    let entry = |i: usize, j: usize| match symmetric_box(a, i, j) {
        Intersection::NonEmpty(bx) => Some(bx),
        Intersection::Empty => None,
    };
    for i in 0..n {
        for j in 0..n {
            if i == j || !z[i].is_positive() || !z[j].is_positive() {
                continue;
            }
            let mut row_j = b.get(j).add(&entry(j, j).expect("diagonal").scale_nonneg(&z[j]).expect("z >= 0"));
            let mut row_i = b.get(i).clone();
            let mut ok = true;
            for k in (0..n).filter(|&k| k != i && k != j) {
                match (entry(i, k), entry(j, k)) {
                    (Some(ik), Some(jk)) => {
                        row_i = row_i.add(&ik.scale_nonneg(&z[k]).expect("z >= 0"));
                        row_j = row_j.add(&jk.scale_nonneg(&z[k]).expect("z >= 0"));
                    }
                    _ => ok = false,
                }
            }
            if !ok {
                continue;
            }
            let ratio = &z[j] / &z[i];
            let inner = row_i.neg().add(&row_j.scale_nonneg(&ratio).expect("positive ratio"));
            let derived = inner.scale_nonneg(&z[i].recip()).expect("positive");
            out.push(PairRange {
                i,
                j,
                derived,
                allowed: a.get(i, i).clone(),
            });
        }
    }
    out
}

/// Decides whether some symmetric `M` in `[A]` and `q` in `[b]` make `z` a
/// solution, by exact Fourier–Motzkin feasibility over the free parameters.
pub fn in_symmetric_solution_set(z: &[Rational], a: &IntervalMatrix, b: &IntervalVector) -> SymmetricVerdict {
    let nonmember = |certificate, chain, pair_ranges| SymmetricVerdict {
        member: false,
        witness: None,
        certificate,
        chain,
        pair_ranges,
    };
    if z.len() != a.dim() || !is_nonneg(z) {
        return nonmember(None, Vec::new(), Vec::new());
    }
    let sys = parameter_system(z, a, b);
    match sys.feasibility() {
        Feasibility::Feasible(x) => SymmetricVerdict {
            member: true,
            witness: Some(assemble_witness(&sys, &x, z, a, b)),
            certificate: None,
            chain: Vec::new(),
            pair_ranges: Vec::new(),
        },
        Feasibility::Infeasible(cert) => {
            debug_assert!(cert.verify(&sys));
            let chain = propagation_chain(z, a, b);
            let ranges = pair_ranges(z, a, b);
            nonmember(Some((sys, cert)), chain, ranges)
        }
    }
}

/// Membership bit per grid point of a piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipGrid {
    pub step: Rational,
    /// Grid points inside the piece with their symmetric-membership bit.
    pub points: Vec<(Vec<Rational>, bool)>,
}

impl MembershipGrid {
    pub fn excluded(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.points.iter().filter(|(_, m)| !m).map(|(p, _)| p)
    }

    pub fn excluded_count(&self) -> usize {
        self.excluded().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPieceReport {
    pub pattern: SupportPattern,
    pub quadrics: Vec<(QuadricInequality, Option<QuadricClass>)>,
    /// `None` for unbounded pieces.
    pub grid: Option<MembershipGrid>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricRegionReport {
    pub pieces: Vec<SymmetricPieceReport>,
}

/// All grid points `k·step` inside `[lo, hi]` per coordinate.
pub fn grid_points(lo: &[Rational], hi: &[Rational], step: &Rational) -> Vec<Vec<Rational>> {
    let axis = |l: &Rational, h: &Rational| -> Vec<Rational> {
        let start = (l / step).ceil().to_integer();
        let end = (h / step).floor().to_integer();
        let mut out = Vec::new();
        let mut k = start;
        while k <= end {
            out.push(Rational::from_integer(k.clone()) * step);
            k += 1;
        }
        out
    };
    let mut pts: Vec<Vec<Rational>> = vec![Vec::new()];
    for (l, h) in lo.iter().zip(hi) {
        let ax = axis(l, h);
        pts = pts
            .into_iter()
            .flat_map(|p| {
                ax.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    pts
}

/// Grid points of a bounded piece (step `step`) with their membership bits.
pub fn piece_membership_grid(
    piece: &SolutionPiece,
    a: &IntervalMatrix,
    b: &IntervalVector,
    step: &Rational,
) -> Option<MembershipGrid> {
    if !piece.is_bounded() {
        return None;
    }
    let verts = piece.vertices();
    let n = piece.ambient_dim();
    let lo: Vec<Rational> = (0..n).map(|i| verts.iter().map(|v| v[i].clone()).min().unwrap()).collect();
    let hi: Vec<Rational> = (0..n).map(|i| verts.iter().map(|v| v[i].clone()).max().unwrap()).collect();
    let candidates: Vec<Vec<Rational>> = grid_points(&lo, &hi, step)
        .into_iter()
        .filter(|p| piece.contains(p))
        .collect();
    let points = candidates
        .into_par_iter()
        .map(|p| {
            let m = in_symmetric_solution_set(&p, a, b).member;
            (p, m)
        })
        .collect();
    Some(MembershipGrid {
        step: step.clone(),
        points,
    })
}

/// Quadrics, their classes and a membership grid for every piece.
pub fn symmetric_region_report(
    a: &IntervalMatrix,
    b: &IntervalVector,
    set: &SolutionSetReport,
    step: &Rational,
) -> SymmetricRegionReport {
    let pieces = set
        .pieces()
        .map(|piece| {
            let quadrics = pattern_quadrics(a, b, &piece.pattern)
                .into_iter()
                .map(|q| {
                    let class = classify_quadric(&q).ok();
                    (q, class)
                })
                .collect();
            SymmetricPieceReport {
                pattern: piece.pattern.clone(),
                quadrics,
                grid: piece_membership_grid(piece, a, b, step),
            }
        })
        .collect();
    SymmetricRegionReport { pieces }
}

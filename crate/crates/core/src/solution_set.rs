//! The solution set of an interval LCP as a union of polyhedra, one candidate
//! per complementarity pattern.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::interval::{IntervalMatrix, IntervalVector};
use crate::lcp::{extremal_solutions, ExtremalSolutions};
use crate::linear::{Constraint, FarkasCertificate, LinearSystem, Var};
use crate::polyhedron::{nonneg_system, vertex_enumeration, Polyhedron};
use crate::rational::{Rational, VecDisplay};

/// Largest dimension the pipeline accepts.
pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolutionSetError {
    #[error("dimension must be between 1 and {MAX_DIM}, got {0}")]
    Dimension(usize),
    #[error("[M] is {m}x{m} but [q] has length {q}")]
    Mismatch { m: usize, q: usize },
}

/// One complementarity case: `w_i = 0` for `i` in `zero_w`, `z_i = 0` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportPattern {
    n: usize,
    zero_w: Vec<usize>,
}

impl SupportPattern {
    /// Bit `i` of `mask` set means `w_i = 0` (so `z_i` is free).
    pub fn from_mask(n: usize, mask: u32) -> Self {
        SupportPattern {
            n,
            zero_w: (0..n).filter(|&i| mask & (1 << i) != 0).collect(),
        }
    }

    pub fn new(n: usize, zero_w: &[usize]) -> Self {
        let mut zero_w = zero_w.to_vec();
        zero_w.sort_unstable();
        zero_w.dedup();
        assert!(zero_w.iter().all(|&i| i < n), "pattern index out of range");
        SupportPattern { n, zero_w }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.zero_w.iter().map(|&i| 1u32 << i).sum()
    }

    pub fn zero_w(&self) -> &[usize] {
        &self.zero_w
    }

    pub fn zero_z(&self) -> Vec<usize> {
        (0..self.n).filter(|i| !self.zero_w.contains(i)).collect()
    }

    pub fn w_is_zero(&self, i: usize) -> bool {
        self.zero_w.contains(&i)
    }

    /// Variables of the case system: `z_i` where `w_i = 0`, else `w_i`.
    pub fn case_variables(&self) -> Vec<Var> {
        (0..self.n)
            .map(|i| if self.w_is_zero(i) { Var::Z(i) } else { Var::W(i) })
            .collect()
    }

    pub fn active_z(&self) -> Vec<Var> {
        self.zero_w.iter().map(|&i| Var::Z(i)).collect()
    }
}

impl fmt::Display for SupportPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.n)
            .map(|i| {
                if self.w_is_zero(i) {
                    format!("w{}=0", i + 1)
                } else {
                    format!("z{}=0", i + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// All `2^n` patterns in order of the `zero_w` bitmask.
pub fn enumerate_patterns(n: usize) -> Vec<SupportPattern> {
    (0u32..(1 << n)).map(|mask| SupportPattern::from_mask(n, mask)).collect()
}

fn unit(d: usize, k: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); d];
    e[k] = Rational::one();
    e
}

/// The case system of a pattern: for each row `i`,
/// `[w_i] - Σ_{j: w_j=0} m̄_ij z_j <= q̄_i` and `q̲_i <= [w_i] - Σ m̲_ij z_j`,
/// with `w_i` present only where `z_i = 0`, plus nonnegativity.
pub fn build_case_system(a: &IntervalMatrix, b: &IntervalVector, p: &SupportPattern) -> LinearSystem {
    let n = p.dim();
    let mut sys = LinearSystem::new(p.case_variables());
    for i in 0..n {
        let mut upper = vec![Rational::zero(); n];
        let mut lower = vec![Rational::zero(); n];
        if !p.w_is_zero(i) {
            upper[i] = Rational::one();
            lower[i] = Rational::one();
        }
        for &j in p.zero_w() {
            upper[j] -= a.get(i, j).hi();
            lower[j] -= a.get(i, j).lo();
        }
        sys.push(Constraint::le(upper, b.get(i).hi().clone()));
        sys.push(Constraint::ge(lower, b.get(i).lo().clone()));
    }
    for k in 0..n {
        sys.push(Constraint::ge(unit(n, k), Rational::zero()));
    }
    sys
}

/// Projects the slack variables `w` out of a case system. The result is over
/// the remaining `z` variables, free of parallel-dominated rows and of rows
/// tight at no vertex. An infeasible input yields the single row `0 <= -1`.
pub fn eliminate_slacks(sys: &LinearSystem) -> LinearSystem {
    let slacks: Vec<Var> = sys.variables.iter().copied().filter(|v| matches!(v, Var::W(_))).collect();
    let Some(projected) = sys.project_out(&slacks) else {
        let mut empty = LinearSystem::new(sys.variables.iter().copied().filter(|v| !matches!(v, Var::W(_))).collect());
        empty.push(Constraint::le(vec![Rational::zero(); empty.dim()], -Rational::one()));
        return empty;
    };
    match vertex_enumeration(&projected) {
        Ok(mut poly) if !poly.is_empty() => {
            poly.prune_untight();
            LinearSystem {
                variables: projected.variables,
                constraints: poly.halfspaces,
            }
        }
        _ => projected,
    }
}

/// A nonempty contribution of one pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPiece {
    pub pattern: SupportPattern,
    /// Vertices and rays over the case variables, slacks included.
    pub lifted: Polyhedron,
    /// The projection onto the free `z` coordinates.
    pub polyhedron: Polyhedron,
}

impl SolutionPiece {
    pub fn ambient_dim(&self) -> usize {
        self.pattern.dim()
    }

    /// Places a point over the free coordinates into `R^n` (zeros elsewhere).
    pub fn embed(&self, x: &[Rational]) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.ambient_dim()];
        for (&i, v) in self.pattern.zero_w().iter().zip(x) {
            z[i] = v.clone();
        }
        z
    }

    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let mut v: Vec<Vec<Rational>> = self.polyhedron.vertices.iter().map(|x| self.embed(x)).collect();
        v.sort();
        v
    }

    pub fn rays(&self) -> Vec<Vec<Rational>> {
        self.polyhedron.rays.iter().map(|x| self.embed(x)).collect()
    }

    pub fn is_bounded(&self) -> bool {
        self.polyhedron.is_bounded()
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        if z.len() != self.ambient_dim() {
            return false;
        }
        let zero_z = self.pattern.zero_z();
        if zero_z.iter().any(|&i| !z[i].is_zero()) {
            return false;
        }
        let x: Vec<Rational> = self.pattern.zero_w().iter().map(|&i| z[i].clone()).collect();
        self.polyhedron.contains(&x)
    }

    /// The piece as a system over all `n` coordinates.
    pub fn ambient_system(&self) -> LinearSystem {
        let n = self.ambient_dim();
        let mut sys = LinearSystem::new((0..n).map(Var::Z).collect());
        for c in &self.polyhedron.halfspaces {
            sys.push(Constraint {
                coeffs: self.embed(&c.coeffs),
                relation: c.relation,
                rhs: c.rhs.clone(),
            });
        }
        for i in self.pattern.zero_z() {
            sys.push(Constraint::le(unit(n, i), Rational::zero()));
        }
        nonneg_system(&sys)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseOutcome {
    /// Certificate over the case system's constraints.
    Empty(FarkasCertificate),
    Piece(SolutionPiece),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub pattern: SupportPattern,
    pub system: LinearSystem,
    pub outcome: CaseOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSetReport {
    pub n: usize,
    /// One entry per pattern, in pattern order.
    pub cases: Vec<CaseReport>,
    /// Componentwise bounds over all vertices; `None` when empty or unbounded.
    pub inf: Option<Vec<Rational>>,
    pub sup: Option<Vec<Rational>>,
    pub bounded: bool,
    pub components: usize,
    pub connectedness_note: String,
    /// Corner-problem bounds, when some corner is an M-matrix.
    pub extremal: Option<ExtremalSolutions>,
    /// Whether the corner-problem bounds equal the vertex bounds.
    pub extremal_agrees: Option<bool>,
}

impl SolutionSetReport {
    pub fn pieces(&self) -> impl Iterator<Item = &SolutionPiece> {
        self.cases.iter().filter_map(|c| match &c.outcome {
            CaseOutcome::Piece(p) => Some(p),
            CaseOutcome::Empty(_) => None,
        })
    }

    pub fn piece(&self, p: &SupportPattern) -> Option<&SolutionPiece> {
        self.pieces().find(|piece| &piece.pattern == p)
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        self.pieces().any(|p| p.contains(z))
    }

    pub fn is_empty(&self) -> bool {
        self.pieces().next().is_none()
    }

    /// Componentwise bounding box of all vertices.
    pub fn bounding_box(&self) -> Option<(Vec<Rational>, Vec<Rational>)> {
        Some((self.inf.clone()?, self.sup.clone()?))
    }
}

fn analyze_case(a: &IntervalMatrix, b: &IntervalVector, pattern: SupportPattern) -> CaseReport {
    let system = build_case_system(a, b, &pattern);
    let lifted = vertex_enumeration(&system).expect("case systems have at most MAX_DIM variables");
    let outcome = if let Some(cert) = &lifted.infeasibility {
        // nonnegativity rows are already part of the case system
        debug_assert_eq!(nonneg_system(&system).constraints.len(), system.constraints.len());
        CaseOutcome::Empty(cert.clone())
    } else {
        let projected = eliminate_slacks(&system);
        let polyhedron = vertex_enumeration(&projected).expect("projection lowers the dimension");
        assert!(
            !polyhedron.is_empty(),
            "projection of a nonempty case system is empty for pattern {pattern}"
        );
        CaseOutcome::Piece(SolutionPiece {
            pattern: pattern.clone(),
            lifted,
            polyhedron,
        })
    };
    CaseReport {
        pattern,
        system,
        outcome,
    }
}

fn components(pieces: &[&SolutionPiece]) -> usize {
    let k = pieces.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let systems: Vec<LinearSystem> = pieces.iter().map(|p| p.ambient_system()).collect();
    for i in 0..k {
        for j in i + 1..k {
            let mut both = systems[i].clone();
            both.constraints.extend(systems[j].constraints.iter().cloned());
            if both.feasibility().is_feasible() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    (0..k).filter(|&i| find(&mut parent, i) == i).count()
}

/// A midpoint of two vertices that lies in no piece, proving non-convexity.
fn nonconvexity_witness(report: &SolutionSetReport) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let vertices: Vec<Vec<Rational>> = report.pieces().flat_map(SolutionPiece::vertices).collect();
    let two = Rational::from_integer(2.into());
    for (i, u) in vertices.iter().enumerate() {
        for v in &vertices[i + 1..] {
            let mid: Vec<Rational> = u.iter().zip(v).map(|(a, b)| (a + b) / &two).collect();
            if !report.contains(&mid) {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}

/// Runs every pattern through build, projection and vertex enumeration and
/// assembles the union.
pub fn assemble_solution_set(a: &IntervalMatrix, b: &IntervalVector) -> Result<SolutionSetReport, SolutionSetError> {
    let n = a.dim();
    if n == 0 || n > MAX_DIM {
        return Err(SolutionSetError::Dimension(n));
    }
    if b.len() != n {
        return Err(SolutionSetError::Mismatch { m: n, q: b.len() });
    }
    let cases: Vec<CaseReport> = enumerate_patterns(n)
        .into_par_iter()
        .map(|p| analyze_case(a, b, p))
        .collect();
    let mut report = SolutionSetReport {
        n,
        cases,
        inf: None,
        sup: None,
        bounded: true,
        components: 0,
        connectedness_note: String::new(),
        extremal: None,
        extremal_agrees: None,
    };
    let pieces: Vec<&SolutionPiece> = report.pieces().collect();
    let bounded = pieces.iter().all(|p| p.is_bounded());
    let vertices: Vec<Vec<Rational>> = pieces.iter().flat_map(|p| p.vertices()).collect();
    let (mut inf, mut sup) = (None, None);
    if bounded && !vertices.is_empty() {
        let lo: Vec<Rational> = (0..n).map(|i| vertices.iter().map(|v| v[i].clone()).min().unwrap()).collect();
        let hi: Vec<Rational> = (0..n).map(|i| vertices.iter().map(|v| v[i].clone()).max().unwrap()).collect();
        inf = Some(lo);
        sup = Some(hi);
    }
    let comps = components(&pieces);
    report.inf = inf;
    report.sup = sup;
    report.bounded = bounded;
    report.components = comps;
    report.connectedness_note = if report.is_empty() {
        "empty solution set".to_string()
    } else {
        let mut note = if comps == 1 {
            format!("connected union of {} piece(s)", report.pieces().count())
        } else {
            format!("{comps} connected components")
        };
        match nonconvexity_witness(&report) {
            Some((u, v)) => note.push_str(&format!(
                "; not convex: the midpoint of {} and {} lies outside",
                VecDisplay(&u),
                VecDisplay(&v)
            )),
            None => note.push_str("; convexity not decided"),
        }
        if !bounded {
            note.push_str("; unbounded, some piece has a ray");
        }
        note
    };
    if let Ok(ext) = extremal_solutions(a, b) {
        let agree_side = |corner: &Option<Vec<Rational>>, computed: &Option<Vec<Rational>>| match corner {
            None => true,
            Some(c) => computed.as_ref() == Some(c),
        };
        report.extremal_agrees = Some(agree_side(&ext.inf, &report.inf) && agree_side(&ext.sup, &report.sup));
        report.extremal = Some(ext);
    }
    Ok(report)
}

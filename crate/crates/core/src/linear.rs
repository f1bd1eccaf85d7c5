//! Rational linear inequality systems, Fourier–Motzkin projection and exact
//! feasibility with a witness point or a Farkas certificate.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::rational::{dot, Rational};

/// Variable labels shared by the case systems and the symmetric oracle.
/// Indices are zero-based; display is one-based (`z1`, `m12`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z(usize),
    W(usize),
    /// Entry `m_ij` with `i <= j` when symmetric entries are identified.
    M(usize, usize),
    Q(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{}", i + 1),
            Var::W(i) => write!(f, "w{}", i + 1),
            Var::M(i, j) => write!(f, "m{}{}", i + 1, j + 1),
            Var::Q(i) => write!(f, "q{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
}

/// `coeffs · x (<= | >=) rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation: Relation::Le,
            rhs,
        }
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation: Relation::Ge,
            rhs,
        }
    }

    /// The same halfspace written as `a · x <= b`.
    pub fn as_le(&self) -> (Vec<Rational>, Rational) {
        match self.relation {
            Relation::Le => (self.coeffs.clone(), self.rhs.clone()),
            Relation::Ge => (self.coeffs.iter().map(|c| -c).collect(), -&self.rhs),
        }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let v = self.lhs(x);
        match self.relation {
            Relation::Le => v <= self.rhs,
            Relation::Ge => v >= self.rhs,
        }
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.lhs(x) == self.rhs
    }

    /// Formats with variable names, e.g. `w2 - 1/5 z1 <= 2`.
    pub fn display<'a>(&'a self, vars: &'a [Var]) -> ConstraintDisplay<'a> {
        ConstraintDisplay { c: self, vars }
    }
}

pub struct ConstraintDisplay<'a> {
    c: &'a Constraint,
    vars: &'a [Var],
}

impl fmt::Display for ConstraintDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_form(f, &self.c.coeffs, |k| self.vars[k].to_string())?;
        let op = match self.c.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        };
        write!(f, " {op} {}", self.c.rhs)
    }
}

/// Writes `a1 x1 + a2 x2 - ...`, skipping zero terms; `0` when all vanish.
pub fn write_linear_form(
    f: &mut impl fmt::Write,
    coeffs: &[Rational],
    name: impl Fn(usize) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        let sign = if a.is_negative() { "-" } else { "+" };
        if first {
            if a.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if mag == Rational::from_integer(1.into()) {
            write!(f, "{}", name(k))?;
        } else {
            write!(f, "{mag} {}", name(k))?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub variables: Vec<Var>,
    pub constraints: Vec<Constraint>,
}

/// Nonnegative multipliers `y` over the constraints in `<=` form with
/// `yᵀA = 0` and `yᵀb = -1`, proving that no point satisfies the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        if self.multipliers.len() != sys.constraints.len() || self.multipliers.iter().any(|y| y.is_negative()) {
            return false;
        }
        let d = sys.dim();
        let mut combo = vec![Rational::zero(); d];
        let mut rhs = Rational::zero();
        for (y, c) in self.multipliers.iter().zip(&sys.constraints) {
            if y.is_zero() {
                continue;
            }
            let (a, b) = c.as_le();
            for (acc, ak) in combo.iter_mut().zip(&a) {
                *acc += y * ak;
            }
            rhs += y * b;
        }
        combo.iter().all(Zero::is_zero) && rhs == Rational::from_integer((-1).into())
    }

    /// Indices of constraints with a positive multiplier.
    pub fn support(&self) -> Vec<usize> {
        (0..self.multipliers.len()).filter(|&k| !self.multipliers[k].is_zero()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Working row `a · x <= b` with multipliers over the original constraints.
#[derive(Debug, Clone)]
struct Row {
    a: Vec<Rational>,
    b: Rational,
    lambda: Vec<Rational>,
}

enum Simplified {
    Rows(Vec<Row>),
    Contradiction(Row),
}

/// Drops trivially true constant rows, normalizes each row by its first
/// nonzero magnitude and keeps the tightest row per direction.
fn simplify(rows: Vec<Row>) -> Simplified {
    let mut best: BTreeMap<Vec<Rational>, Row> = BTreeMap::new();
    for mut row in rows {
        let Some(lead) = row.a.iter().find(|c| !c.is_zero()).map(|c| c.abs()) else {
            if row.b.is_negative() {
                return Simplified::Contradiction(row);
            }
            continue;
        };
        if lead != Rational::from_integer(1.into()) {
            for c in row.a.iter_mut() {
                *c /= &lead;
            }
            row.b /= &lead;
            for l in row.lambda.iter_mut() {
                *l /= &lead;
            }
        }
        match best.get(&row.a) {
            Some(existing) if existing.b <= row.b => {}
            _ => {
                best.insert(row.a.clone(), row);
            }
        }
    }
    Simplified::Rows(best.into_values().collect())
}

fn eliminate(rows: &[Row], v: usize) -> Simplified {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for r in rows {
        if r.a[v].is_positive() {
            pos.push(r);
        } else if r.a[v].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let sp = -&n.a[v];
            let sn = p.a[v].clone();
            let a = p.a.iter().zip(&n.a).map(|(x, y)| &sp * x + &sn * y).collect::<Vec<_>>();
            let b = &sp * &p.b + &sn * &n.b;
            let lambda = p.lambda.iter().zip(&n.lambda).map(|(x, y)| &sp * x + &sn * y).collect();
            let mut row = Row { a, b, lambda };
            row.a[v] = Rational::zero();
            out.push(row);
        }
    }
    simplify(out)
}

fn pick_variable(rows: &[Row], candidates: &[usize]) -> usize {
    *candidates
        .iter()
        .min_by_key(|&&v| {
            let pos = rows.iter().filter(|r| r.a[v].is_positive()).count();
            let neg = rows.iter().filter(|r| r.a[v].is_negative()).count();
            (pos * neg, v)
        })
        .expect("at least one variable to eliminate")
}

impl LinearSystem {
    pub fn new(variables: Vec<Var>) -> Self {
        LinearSystem {
            variables,
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn push(&mut self, c: Constraint) {
        debug_assert_eq!(c.coeffs.len(), self.dim());
        self.constraints.push(c);
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.variables.iter().position(|&x| x == v)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    fn rows(&self) -> Vec<Row> {
        let m = self.constraints.len();
        self.constraints
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let (a, b) = c.as_le();
                let mut lambda = vec![Rational::zero(); m];
                lambda[k] = Rational::from_integer(1.into());
                Row { a, b, lambda }
            })
            .collect()
    }

    /// Fourier–Motzkin projection onto the variables not listed in `drop`.
    /// Returns `None` when the system is infeasible.
    pub fn project_out(&self, drop: &[Var]) -> Option<LinearSystem> {
        let drop_idx: Vec<usize> = drop.iter().filter_map(|&v| self.index_of(v)).collect();
        let mut rows = match simplify(self.rows()) {
            Simplified::Rows(r) => r,
            Simplified::Contradiction(_) => return None,
        };
        let mut remaining = drop_idx.clone();
        while !remaining.is_empty() {
            let v = pick_variable(&rows, &remaining);
            remaining.retain(|&x| x != v);
            rows = match eliminate(&rows, v) {
                Simplified::Rows(r) => r,
                Simplified::Contradiction(_) => return None,
            };
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|k| !drop_idx.contains(k)).collect();
        let mut out = LinearSystem::new(keep.iter().map(|&k| self.variables[k]).collect());
        for r in rows {
            out.push(Constraint::le(keep.iter().map(|&k| r.a[k].clone()).collect(), r.b));
        }
        Some(out)
    }

    /// Decides feasibility by eliminating every variable. A feasible system
    /// yields a point by back-substitution (midpoint of two finite bounds, the
    /// single finite bound otherwise, `0` when unconstrained).
    pub fn feasibility(&self) -> Feasibility {
        let d = self.dim();
        let contradiction = |row: Row| {
            let scale = -row.b;
            Feasibility::Infeasible(FarkasCertificate {
                multipliers: row.lambda.into_iter().map(|l| l / &scale).collect(),
            })
        };
        let mut rows = match simplify(self.rows()) {
            Simplified::Rows(r) => r,
            Simplified::Contradiction(row) => return contradiction(row),
        };
        let mut stages: Vec<(usize, Vec<Row>)> = Vec::with_capacity(d);
        let mut remaining: Vec<usize> = (0..d).collect();
        while !remaining.is_empty() {
            let v = pick_variable(&rows, &remaining);
            remaining.retain(|&x| x != v);
            let next = match eliminate(&rows, v) {
                Simplified::Rows(r) => r,
                Simplified::Contradiction(row) => return contradiction(row),
            };
            stages.push((v, std::mem::replace(&mut rows, next)));
        }
        let mut x = vec![Rational::zero(); d];
        for (v, stage_rows) in stages.iter().rev() {
            let v = *v;
            let mut lower: Option<Rational> = None;
            let mut upper: Option<Rational> = None;
            for r in stage_rows.iter().filter(|r| !r.a[v].is_zero()) {
                let rest: Rational = r
                    .a
                    .iter()
                    .zip(&x)
                    .enumerate()
                    .filter(|&(k, _)| k != v)
                    .map(|(_, (a, xk))| a * xk)
                    .sum();
                let bound = (&r.b - rest) / &r.a[v];
                if r.a[v].is_positive() {
                    if upper.as_ref().is_none_or(|u| bound < *u) {
                        upper = Some(bound);
                    }
                } else if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            }
            x[v] = match (lower, upper) {
                (Some(l), Some(u)) => {
                    debug_assert!(l <= u);
                    (l + u) / Rational::from_integer(2.into())
                }
                (Some(l), None) => l,
                (None, Some(u)) => u,
                (None, None) => Rational::zero(),
            };
        }
        assert!(self.is_satisfied(&x), "back-substituted point violates the system");
        Feasibility::Feasible(x)
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(f, "{}", c.display(&self.variables))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ivec, rat, rvec};

    fn two_var() -> LinearSystem {
        LinearSystem::new(vec![Var::Z(0), Var::W(1)])
    }

    #[test]
    fn projection_of_a_triangle() {
        // x >= 0, y >= 0, x + y <= 2 projects onto 0 <= x <= 2
        let mut s = two_var();
        s.push(Constraint::ge(ivec(&[1, 0]), int(0)));
        s.push(Constraint::ge(ivec(&[0, 1]), int(0)));
        s.push(Constraint::le(ivec(&[1, 1]), int(2)));
        let p = s.project_out(&[Var::W(1)]).unwrap();
        assert_eq!(p.variables, vec![Var::Z(0)]);
        let mut bounds: Vec<(Vec<Rational>, Rational)> = p.constraints.iter().map(Constraint::as_le).collect();
        bounds.sort();
        assert_eq!(bounds, vec![(ivec(&[-1]), int(0)), (ivec(&[1]), int(2))]);
    }

    #[test]
    fn infeasible_system_has_verified_certificate() {
        let mut s = two_var();
        s.push(Constraint::ge(ivec(&[1, 0]), int(0)));
        s.push(Constraint::le(ivec(&[1, 1]), int(-1)));
        s.push(Constraint::ge(ivec(&[0, 1]), int(0)));
        match s.feasibility() {
            Feasibility::Infeasible(cert) => {
                assert!(cert.verify(&s));
                assert_eq!(cert.support(), vec![0, 1, 2]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn constant_contradiction_detected_up_front() {
        let mut s = two_var();
        s.push(Constraint::le(ivec(&[0, 0]), int(-3)));
        let Feasibility::Infeasible(cert) = s.feasibility() else { panic!() };
        assert!(cert.verify(&s));
    }

    #[test]
    fn feasible_witness_uses_midpoints() {
        let mut s = two_var();
        s.push(Constraint::ge(ivec(&[1, 0]), int(1)));
        s.push(Constraint::le(ivec(&[1, 0]), int(3)));
        s.push(Constraint::ge(ivec(&[0, 1]), int(0)));
        s.push(Constraint::le(rvec(&[(1, 1), (1, 1)]), int(4)));
        let Feasibility::Feasible(x) = s.feasibility() else { panic!() };
        assert!(s.is_satisfied(&x));
    }

    #[test]
    fn domination_keeps_tightest_parallel_row() {
        let mut s = LinearSystem::new(vec![Var::Z(0)]);
        s.push(Constraint::le(ivec(&[2]), int(8)));
        s.push(Constraint::le(ivec(&[1]), int(5)));
        s.push(Constraint::ge(ivec(&[1]), rat(1, 2)));
        let p = s.project_out(&[]).unwrap();
        assert_eq!(p.constraints.len(), 2);
        assert!(p.is_satisfied(&ivec(&[4])));
        assert!(!p.is_satisfied(&rvec(&[(9, 2)])));
    }

    #[test]
    fn display_uses_variable_names() {
        let c = Constraint::le(rvec(&[(-1, 5), (1, 1)]), int(2));
        assert_eq!(c.display(&[Var::Z(0), Var::W(1)]).to_string(), "-1/5 z1 + w2 <= 2");
        assert_eq!(Var::M(0, 1).to_string(), "m12");
    }
}

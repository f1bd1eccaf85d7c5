//! Runs the pipeline on a problem and assembles the serialized report,
//! checking internal invariants along the way.

use std::collections::BTreeSet;

use lcpset::classes::{
    interval_is_hplus, interval_is_m, interval_is_p, is_hplus_matrix, is_m_matrix, is_p_matrix, is_z_matrix,
    ClassCertificate, ClassError,
};
use lcpset::interval::{IntervalMatrix, IntervalVector};
use lcpset::lcp::{check_monotone, solve_lcp, LcpError, LcpInstance, LcpSolutionSet};
use lcpset::rational::{Rational, VecDisplay};
use lcpset::solution_set::{assemble_solution_set, CaseOutcome, SolutionSetError, SolutionSetReport};
use lcpset::symmetric::{
    in_solution_set, in_symmetric_solution_set, symmetric_region_report, verify_witness, SymmetricRegionReport,
};
use lcpset::Matrix;
use num_traits::Signed;

use crate::problem::Problem;
use crate::report::*;

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    SolutionSet(#[from] SolutionSetError),
    #[error(transparent)]
    Lcp(#[from] LcpError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("bad point: {0}")]
    BadPoint(String),
}

impl AnalysisError {
    pub fn exit_code(&self) -> u8 {
        match self {
            AnalysisError::BadPoint(_) => 2,
            _ => 4,
        }
    }
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<(), AnalysisError> {
    if ok {
        Ok(())
    } else {
        Err(AnalysisError::Invariant(what()))
    }
}

pub struct Analysis {
    pub report: RegionReport,
    pub set: SolutionSetReport,
    pub symmetric: SymmetricRegionReport,
}

fn entry(cert: &ClassCertificate) -> CertificateEntry {
    CertificateEntry {
        holds: cert.holds(),
        detail: cert.to_string(),
        witness: cert.witness().map(nums),
    }
}

fn point_classes(m: &Matrix) -> PointClasses {
    PointClasses {
        z: is_z_matrix(m),
        m: entry(&is_m_matrix(m)),
        hplus: entry(&is_hplus_matrix(m)),
        p: entry(&is_p_matrix(m)),
    }
}

pub fn classify(problem: &Problem) -> Result<ClassesReport, AnalysisError> {
    let a = &problem.a;
    let m = interval_is_m(a);
    if let ClassCertificate::M { witness, .. } = &m {
        invariant(lcpset::classes::verify_m_witness(&a.lower(), witness), || {
            format!("M witness {} fails on the lower corner", VecDisplay(witness))
        })?;
    }
    Ok(ClassesReport {
        interval: IntervalClasses {
            m: entry(&m),
            hplus: entry(&interval_is_hplus(a)),
            p: entry(&interval_is_p(a)?),
        },
        lower: point_classes(&a.lower()),
        upper: point_classes(&a.upper()),
    })
}

fn data_report(a: &IntervalMatrix, b: &IntervalVector) -> DataReport {
    let n = a.dim();
    let pair = |x: &lcpset::Interval| [Num::new(x.lo()), Num::new(x.hi())];
    DataReport {
        m: (0..n).map(|i| (0..n).map(|j| pair(a.get(i, j))).collect()).collect(),
        q: b.entries().iter().map(pair).collect(),
    }
}

fn lcp_entry(set: &LcpSolutionSet) -> LcpEntry {
    LcpEntry {
        points: set.points.iter().map(|p| nums(p)).collect(),
        families: set
            .families
            .iter()
            .map(|f| FamilyEntry {
                base: nums(&f.base),
                direction: nums(&f.direction),
                length: f.length.as_ref().map(Num::new),
            })
            .collect(),
        complete: set.complete,
    }
}

fn monotonicity(a: &IntervalMatrix, b: &IntervalVector) -> Result<MonotonicityReport, AnalysisError> {
    let hat = LcpInstance::new(a.lower(), b.lower())?;
    let tilde = LcpInstance::new(a.upper(), b.upper())?;
    let hat_set = solve_lcp(&hat)?;
    let tilde_set = solve_lcp(&tilde)?;
    let mut verdicts = Vec::new();
    for hz in &hat_set.points {
        for tz in &tilde_set.points {
            let v = check_monotone(&hat, &tilde, hz, tz)?;
            invariant(v.consistent(), || format!("monotone verdict contradicts its premise: {v}"))?;
            verdicts.push(MonotoneEntry {
                hat_z: nums(hz),
                tilde_z: nums(tz),
                hat_is_m: v.premise.hat_is_m,
                tilde_is_m: v.premise.tilde_is_m,
                hat_inverse_positive: v.premise.hat_inv_positive,
                tilde_inverse_positive: v.premise.tilde_inv_positive,
                ordering_holds: v.ordering_holds,
                branch: v.branch.map(|b| b.to_string()),
                strict_holds: v.strict_holds,
                summary: v.to_string(),
            });
        }
    }
    Ok(MonotonicityReport {
        lower_corner: lcp_entry(&hat_set),
        upper_corner: lcp_entry(&tilde_set),
        verdicts,
    })
}

/// Both memberships of `z`, with the witness or the refutation.
pub fn point_check(z: &[Rational], a: &IntervalMatrix, b: &IntervalVector) -> Result<PointCheck, AnalysisError> {
    let in_sigma = in_solution_set(z, a, b);
    let v = in_symmetric_solution_set(z, a, b);
    invariant(!v.member || in_sigma, || {
        format!("{} is symmetric-feasible but outside the solution set", VecDisplay(z))
    })?;
    if let Some(w) = &v.witness {
        invariant(verify_witness(w, z, a, b), || format!("witness at {} does not verify", VecDisplay(z)))?;
    }
    if let Some((sys, cert)) = &v.certificate {
        invariant(cert.verify(sys), || format!("certificate at {} does not verify", VecDisplay(z)))?;
    }
    invariant(v.member != v.certificate.is_some(), || {
        format!("verdict at {} has neither witness nor certificate", VecDisplay(z))
    })?;
    Ok(PointCheck {
        point: nums(z),
        in_solution_set: in_sigma,
        in_symmetric_solution_set: v.member,
        witness: v.witness.as_ref().map(|w| WitnessEntry {
            m: w.m.rows().iter().map(|r| nums(r)).collect(),
            q: nums(&w.q),
        }),
        chain: if v.member { Vec::new() } else { v.chain.iter().map(ToString::to_string).collect() },
        pair_ranges: if v.member {
            Vec::new()
        } else {
            v.pair_ranges.iter().map(ToString::to_string).collect()
        },
        certificate_rows: v.certificate.as_ref().map(|(_, c)| c.support().len()),
    })
}

pub fn check_point(problem: &Problem, z: &[Rational]) -> Result<PointCheck, AnalysisError> {
    let n = problem.dim();
    if z.len() != n {
        return Err(AnalysisError::BadPoint(format!("expected {n} coordinates, got {}", z.len())));
    }
    if z.iter().any(Signed::is_negative) {
        return Err(AnalysisError::BadPoint(format!("{} has a negative coordinate", VecDisplay(z))));
    }
    point_check(z, &problem.a, &problem.b)
}

fn case_entries(set: &SolutionSetReport) -> Result<Vec<CaseEntry>, AnalysisError> {
    let mut out = Vec::new();
    for case in &set.cases {
        let sys = &case.system;
        let system = sys.constraints.iter().map(|c| c.display(&sys.variables).to_string()).collect();
        let mut e = CaseEntry {
            pattern: case.pattern.to_string(),
            mask: case.pattern.mask(),
            status: CaseStatus::Empty,
            system,
            certificate: None,
            halfspaces: Vec::new(),
            vertices: Vec::new(),
            rays: Vec::new(),
        };
        match &case.outcome {
            CaseOutcome::Empty(cert) => {
                invariant(cert.verify(sys), || format!("emptiness certificate fails for {}", case.pattern))?;
                e.certificate = Some(nums(&cert.multipliers));
            }
            CaseOutcome::Piece(piece) => {
                let poly = &piece.polyhedron;
                e.status = CaseStatus::Piece;
                e.halfspaces = poly.halfspaces.iter().map(|c| c.display(&poly.variables).to_string()).collect();
                e.vertices = piece.vertices().iter().map(|v| nums(v)).collect();
                e.rays = piece.rays().iter().map(|r| nums(r)).collect();
            }
        }
        out.push(e);
    }
    Ok(out)
}

fn symmetric_entries(sym: &SymmetricRegionReport) -> Vec<SymmetricPieceEntry> {
    sym.pieces
        .iter()
        .map(|p| SymmetricPieceEntry {
            pattern: p.pattern.to_string(),
            quadrics: p
                .quadrics
                .iter()
                .map(|(q, class)| QuadricEntry {
                    inequality: q.to_string(),
                    provenance: q.provenance(),
                    label: class.as_ref().map(|c| c.label.to_string()),
                    signature: class.as_ref().map(|c| [c.signature.plus, c.signature.minus, c.signature.zero]),
                    center: class.as_ref().and_then(|c| c.center.as_deref().map(nums)),
                    reduced_constant: class.as_ref().and_then(|c| c.reduced_constant.as_ref().map(Num::new)),
                })
                .collect(),
            membership: p.grid.as_ref().map(|g| MembershipEntry {
                step: Num::new(&g.step),
                points: g.points.len(),
                excluded: g.excluded().map(|z| nums(z)).collect(),
            }),
        })
        .collect()
}

pub fn analyze(problem: &Problem) -> Result<Analysis, AnalysisError> {
    let (a, b) = (&problem.a, &problem.b);
    let classes = classify(problem)?;
    let set = assemble_solution_set(a, b)?;
    let cases = case_entries(&set)?;
    invariant(set.extremal_agrees != Some(false), || {
        "corner-problem bounds disagree with the vertex bounds".into()
    })?;

    let vertices: BTreeSet<Vec<Rational>> = set.pieces().flat_map(|p| p.vertices()).collect();
    let mut vertex_checks = Vec::new();
    for z in &vertices {
        let check = point_check(z, a, b)?;
        invariant(check.in_solution_set, || format!("vertex {} is outside the solution set", VecDisplay(z)))?;
        vertex_checks.push(check);
    }

    let symmetric = symmetric_region_report(a, b, &set, &problem.grid_step);
    for piece in &symmetric.pieces {
        let quadrics = &piece.quadrics;
        for (z, member) in piece.grid.iter().flat_map(|g| &g.points) {
            invariant(!quadrics.iter().any(|(q, _)| !q.is_satisfied(z)) || !member, || {
                format!("symmetric member {} violates a quadric of {}", VecDisplay(z), piece.pattern)
            })?;
        }
    }

    let report = RegionReport {
        name: problem.name.clone(),
        n: problem.dim(),
        data: data_report(a, b),
        classes,
        cases,
        union: UnionReport {
            pieces: set.pieces().count(),
            bounded: set.bounded,
            components: set.components,
            connectedness: set.connectedness_note.clone(),
            inf: set.inf.as_deref().map(nums),
            sup: set.sup.as_deref().map(nums),
        },
        extremal: set.extremal.as_ref().map(|e| ExtremalReport {
            inf: e.inf.as_deref().map(nums),
            sup: e.sup.as_deref().map(nums),
            agrees_with_vertices: set.extremal_agrees,
        }),
        monotonicity: monotonicity(a, b)?,
        symmetric: symmetric_entries(&symmetric),
        vertex_checks,
    };
    Ok(Analysis { report, set, symmetric })
}

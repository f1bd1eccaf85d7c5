//! Serialized report types. Every number carries its exact rational string
//! and a decimal approximation for readers; only `exact` is authoritative.

use lcpset::rational::{parse_rational, to_f64, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Num {
    pub exact: String,
    pub approx: f64,
}

impl Num {
    pub fn new(r: &Rational) -> Self {
        Num {
            exact: r.to_string(),
            approx: to_f64(r),
        }
    }

    pub fn value(&self) -> Rational {
        parse_rational(&self.exact).expect("report numbers are exact rationals")
    }
}

pub fn nums(v: &[Rational]) -> Vec<Num> {
    v.iter().map(Num::new).collect()
}

pub fn values(v: &[Num]) -> Vec<Rational> {
    v.iter().map(Num::value).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataReport {
    #[serde(rename = "M")]
    pub m: Vec<Vec<[Num; 2]>>,
    pub q: Vec<[Num; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub holds: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointClasses {
    pub z: bool,
    pub m: CertificateEntry,
    pub hplus: CertificateEntry,
    pub p: CertificateEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalClasses {
    pub m: CertificateEntry,
    pub hplus: CertificateEntry,
    pub p: CertificateEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassesReport {
    pub interval: IntervalClasses,
    pub lower: PointClasses,
    pub upper: PointClasses,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Empty,
    Piece,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseEntry {
    pub pattern: String,
    pub mask: u32,
    pub status: CaseStatus,
    /// Case system over the active `z` and `w` variables.
    pub system: Vec<String>,
    /// Farkas multipliers over `system`, for empty cases.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Vec<Num>>,
    /// Projected halfspaces over the free `z` coordinates.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub halfspaces: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub vertices: Vec<Vec<Num>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rays: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionReport {
    pub pieces: usize,
    pub bounded: bool,
    pub components: usize,
    pub connectedness: String,
    pub inf: Option<Vec<Num>>,
    pub sup: Option<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalReport {
    /// Solution of the upper-corner problem.
    pub inf: Option<Vec<Num>>,
    /// Solution of the lower-corner problem.
    pub sup: Option<Vec<Num>>,
    pub agrees_with_vertices: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub base: Vec<Num>,
    pub direction: Vec<Num>,
    pub length: Option<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcpEntry {
    pub points: Vec<Vec<Num>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub families: Vec<FamilyEntry>,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneEntry {
    pub hat_z: Vec<Num>,
    pub tilde_z: Vec<Num>,
    pub hat_is_m: bool,
    pub tilde_is_m: bool,
    pub hat_inverse_positive: bool,
    pub tilde_inverse_positive: bool,
    pub ordering_holds: bool,
    pub branch: Option<String>,
    pub strict_holds: Option<bool>,
    pub summary: String,
}

/// The corner problems `(M̲, q̲)` and `(M̄, q̄)` and the monotone bounds
/// verdict for each pair of their solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub lower_corner: LcpEntry,
    pub upper_corner: LcpEntry,
    pub verdicts: Vec<MonotoneEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadricEntry {
    pub inequality: String,
    pub provenance: String,
    pub label: Option<String>,
    pub signature: Option<[usize; 3]>,
    pub center: Option<Vec<Num>>,
    pub reduced_constant: Option<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipEntry {
    pub step: Num,
    pub points: usize,
    pub excluded: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricPieceEntry {
    pub pattern: String,
    pub quadrics: Vec<QuadricEntry>,
    pub membership: Option<MembershipEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessEntry {
    #[serde(rename = "M")]
    pub m: Vec<Vec<Num>>,
    pub q: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCheck {
    pub point: Vec<Num>,
    pub in_solution_set: bool,
    pub in_symmetric_solution_set: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub chain: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub pair_ranges: Vec<String>,
    /// Number of rows combined by the infeasibility certificate.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_rows: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub name: String,
    pub n: usize,
    pub data: DataReport,
    pub classes: ClassesReport,
    pub cases: Vec<CaseEntry>,
    pub union: UnionReport,
    pub extremal: Option<ExtremalReport>,
    pub monotonicity: MonotonicityReport,
    pub symmetric: Vec<SymmetricPieceEntry>,
    /// Both memberships at every vertex of every piece.
    pub vertex_checks: Vec<PointCheck>,
}

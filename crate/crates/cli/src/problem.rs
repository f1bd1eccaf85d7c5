//! Problem files: a single JSON document with the interval data as exact
//! rational strings.

use std::collections::BTreeMap;
use std::path::Path;

use lcpset::interval::{Interval, IntervalMatrix, IntervalVector};
use lcpset::rational::{parse_rational, Rational};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

pub const MAX_DIM: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("dimension {0} is not supported (at most {MAX_DIM})")]
    TooLarge(usize),
}

impl ProblemError {
    pub fn exit_code(&self) -> u8 {
        match self {
            ProblemError::Io { .. } | ProblemError::Parse { .. } => 2,
            ProblemError::TooLarge(_) => 3,
        }
    }
}

/// `"v"` is the point `[v, v]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawEntry {
    Point(String),
    Box([String; 2]),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_step: Option<String>,
    /// Fixed coordinates for a 2D view, keyed `"z1"`, `"z2"`, ...
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub slice: BTreeMap<String, String>,
    /// Grid cells per axis used to trace quadric curves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProblem {
    #[serde(default)]
    pub name: Option<String>,
    pub n: usize,
    #[serde(rename = "M")]
    pub m: Vec<Vec<RawEntry>>,
    pub q: Vec<RawEntry>,
    #[serde(default)]
    pub options: RawOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub name: String,
    pub a: IntervalMatrix,
    pub b: IntervalVector,
    pub grid_step: Rational,
    /// Zero-based coordinate and value.
    pub slice: Vec<(usize, Rational)>,
    pub resolution: usize,
}

impl Problem {
    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

pub const DEFAULT_RESOLUTION: usize = 120;

fn default_grid_step() -> Rational {
    Rational::new(1.into(), 8.into())
}

/// 1-based line and column of the first occurrence of `needle` in `source`.
fn locate(source: &str, needle: &str) -> (usize, usize) {
    let Some(offset) = source.find(needle) else {
        return (1, 1);
    };
    let before = &source[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

/// Parses `"z2"` or `"2"` into a zero-based coordinate.
pub fn parse_coord(text: &str, n: usize) -> Result<usize, String> {
    let digits = text.trim().trim_start_matches(['z', 'Z']);
    let k: usize = digits.parse().map_err(|_| format!("bad coordinate {text:?}, expected z1..z{n}"))?;
    if k == 0 || k > n {
        return Err(format!("coordinate {text:?} out of range z1..z{n}"));
    }
    Ok(k - 1)
}

/// Parses `"z2=0"` slice arguments.
pub fn parse_slice_arg(arg: &str, n: usize) -> Result<(usize, Rational), String> {
    let (coord, value) = arg.split_once('=').ok_or_else(|| format!("bad slice {arg:?}, expected COORD=VALUE"))?;
    let k = parse_coord(coord, n)?;
    let v = parse_rational(value.trim()).map_err(|e| format!("bad slice value {value:?}: {e}"))?;
    Ok((k, v))
}

/// Parses `"a/b,c/d,..."` into a point.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(|e| format!("bad coordinate {s:?}: {e}")))
        .collect()
}

pub fn parse_problem(source: &str, path: &str) -> Result<Problem, ProblemError> {
    let raw: RawProblem = serde_json::from_str(source).map_err(|e| ProblemError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    let fail = |needle: &str, message: String| {
        let (line, column) = locate(source, needle);
        ProblemError::Parse {
            path: path.to_string(),
            line,
            column,
            message,
        }
    };
    let n = raw.n;
    if n == 0 {
        return Err(fail("\"n\"", "n must be at least 1".into()));
    }
    if n > MAX_DIM {
        return Err(ProblemError::TooLarge(n));
    }
    let rational = |text: &str| {
        parse_rational(text).map_err(|e| fail(&format!("\"{text}\""), format!("bad rational {text:?}: {e}")))
    };
    let entry = |e: &RawEntry| -> Result<Interval, ProblemError> {
        match e {
            RawEntry::Point(v) => Ok(Interval::point(rational(v)?)),
            RawEntry::Box([lo, hi]) => {
                let (l, h) = (rational(lo)?, rational(hi)?);
                Interval::new(l, h).map_err(|_| fail(&format!("\"{hi}\""), format!("empty interval [{lo}, {hi}]")))
            }
        }
    };
    if raw.m.len() != n || raw.m.iter().any(|row| row.len() != n) {
        return Err(fail("\"M\"", format!("M must be {n}x{n}")));
    }
    if raw.q.len() != n {
        return Err(fail("\"q\"", format!("q must have {n} entries")));
    }
    let rows = raw
        .m
        .iter()
        .map(|row| row.iter().map(entry).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let a = IntervalMatrix::new(rows).expect("shape checked");
    let b = IntervalVector::new(raw.q.iter().map(entry).collect::<Result<_, _>>()?).expect("length checked");
    let grid_step = match &raw.options.grid_step {
        Some(s) => {
            let v = rational(s)?;
            if !v.is_positive() {
                return Err(fail(&format!("\"{s}\""), "grid_step must be positive".into()));
            }
            v
        }
        None => default_grid_step(),
    };
    let mut slice = Vec::new();
    for (coord, value) in &raw.options.slice {
        let k = parse_coord(coord, n).map_err(|m| fail(&format!("\"{coord}\""), m))?;
        slice.push((k, rational(value)?));
    }
    Ok(Problem {
        name: raw.name.unwrap_or_else(|| "problem".into()),
        a,
        b,
        grid_step,
        slice,
        resolution: raw.options.resolution.unwrap_or(DEFAULT_RESOLUTION).max(4),
    })
}

pub fn load_problem(path: &Path) -> Result<Problem, ProblemError> {
    let display = path.display().to_string();
    let source = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
        path: display.clone(),
        source,
    })?;
    parse_problem(&source, &display)
}

//! Exact vertex enumeration for polyhedra in the nonnegative orthant by the
//! double description method.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linear::{Constraint, FarkasCertificate, Feasibility, LinearSystem, Var};
use crate::rational::{dot, Rational, VecDisplay};

/// Largest dimension handled by [`vertex_enumeration`].
pub const MAX_VERTEX_DIM: usize = 4;

/// A polyhedron `{x >= 0 : halfspaces}` with its vertices and extreme rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    pub variables: Vec<Var>,
    pub halfspaces: Vec<Constraint>,
    /// Sorted lexicographically, pairwise distinct.
    pub vertices: Vec<Vec<Rational>>,
    /// Extreme rays of the recession cone, first nonzero magnitude scaled to 1.
    pub rays: Vec<Vec<Rational>>,
    /// Present exactly when the polyhedron is empty.
    pub infeasibility: Option<FarkasCertificate>,
}

impl Polyhedron {
    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim() && x.iter().all(|v| !v.is_negative()) && self.halfspaces.iter().all(|c| c.is_satisfied(x))
    }

    /// Drops halfspaces tight at no vertex. Valid for nonempty pointed
    /// polyhedra: every facet contains a vertex.
    pub fn prune_untight(&mut self) {
        if self.vertices.is_empty() {
            return;
        }
        let vertices = &self.vertices;
        self.halfspaces.retain(|c| vertices.iter().any(|v| c.is_tight(v)));
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        let names: Vec<String> = self.variables.iter().map(Var::to_string).collect();
        write!(f, "vertices in ({}):", names.join(", "))?;
        for v in &self.vertices {
            write!(f, " {}", VecDisplay(v))?;
        }
        if !self.rays.is_empty() {
            write!(f, "; rays:")?;
            for r in &self.rays {
                write!(f, " {}", VecDisplay(r))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyhedronError {
    #[error("vertex enumeration limited to dimension {MAX_VERTEX_DIM}, got {0}")]
    TooLarge(usize),
}

struct Ray {
    y: Vec<Rational>,
    tight: Vec<bool>,
}

fn normalize(y: &mut [Rational]) {
    let t = y.last().expect("homogenizing coordinate");
    let scale = if t.is_positive() {
        t.clone()
    } else {
        match y.iter().find(|c| !c.is_zero()) {
            Some(c) => c.abs(),
            None => return,
        }
    };
    if !scale.is_one() {
        for c in y.iter_mut() {
            *c /= &scale;
        }
    }
}

/// Enumerates vertices and extreme rays of `{x >= 0 : sys}`.
///
/// Works on the homogenized cone `{(x, t) >= 0 : a·x - b t <= 0}`, starting
/// from the orthant and adding one halfspace at a time. Two rays are combined
/// only when adjacent: no third ray is tight on every constraint they share.
pub fn vertex_enumeration(sys: &LinearSystem) -> Result<Polyhedron, PolyhedronError> {
    let d = sys.dim();
    if d > MAX_VERTEX_DIM {
        return Err(PolyhedronError::TooLarge(d));
    }
    let cone_dim = d + 1;
    let homog: Vec<Vec<Rational>> = sys
        .constraints
        .iter()
        .map(|c| {
            let (mut a, b) = c.as_le();
            a.push(-b);
            a
        })
        .collect();
    // Tight-set slots: the d + 1 orthant facets, then each added halfspace.
    let slots = cone_dim + homog.len();
    let mut rays: Vec<Ray> = (0..cone_dim)
        .map(|k| {
            let mut y = vec![Rational::zero(); cone_dim];
            y[k] = Rational::one();
            let mut tight = vec![false; slots];
            for (s, t) in tight.iter_mut().enumerate().take(cone_dim) {
                *t = s != k;
            }
            Ray { y, tight }
        })
        .collect();

    for (h_idx, h) in homog.iter().enumerate() {
        let slot = cone_dim + h_idx;
        let vals: Vec<Rational> = rays.iter().map(|r| dot(h, &r.y)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if !v.is_positive() {
                let mut tight = r.tight.clone();
                tight[slot] = v.is_zero();
                next.push(Ray { y: r.y.clone(), tight });
            }
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<bool> = rays[p].tight.iter().zip(&rays[n].tight).map(|(a, b)| *a && *b).collect();
                let count = common.iter().filter(|&&c| c).count();
                if count + 2 < cone_dim {
                    continue;
                }
                let adjacent = !rays.iter().enumerate().any(|(k, r)| {
                    k != p && k != n && common.iter().zip(&r.tight).all(|(c, t)| !*c || *t)
                });
                if !adjacent {
                    continue;
                }
                let sp = -&vals[n];
                let sn = vals[p].clone();
                let mut y: Vec<Rational> = rays[p].y.iter().zip(&rays[n].y).map(|(a, b)| &sp * a + &sn * b).collect();
                normalize(&mut y);
                let mut tight = common;
                tight[slot] = true;
                next.push(Ray { y, tight });
            }
        }
        rays = next;
    }

    let mut vertices = Vec::new();
    let mut directions = Vec::new();
    for mut r in rays {
        normalize(&mut r.y);
        let t = r.y.pop().expect("homogenizing coordinate");
        if t.is_positive() {
            vertices.push(r.y);
        } else {
            directions.push(r.y);
        }
    }
    vertices.sort();
    vertices.dedup();
    directions.sort();
    directions.dedup();

    let infeasibility = if vertices.is_empty() {
        directions.clear();
        Some(orthant_farkas(sys))
    } else {
        None
    };
    Ok(Polyhedron {
        variables: sys.variables.clone(),
        halfspaces: sys.constraints.clone(),
        vertices,
        rays: directions,
        infeasibility,
    })
}

/// Certificate over the constraints of [`nonneg_system`]`(sys)`.
fn orthant_farkas(sys: &LinearSystem) -> FarkasCertificate {
    match nonneg_system(sys).feasibility() {
        Feasibility::Infeasible(cert) => cert,
        Feasibility::Feasible(x) => panic!("double description found no vertex but {} is feasible", VecDisplay(&x)),
    }
}

/// `sys` with `x_k >= 0` appended for every variable not already bounded by
/// that exact row.
pub fn nonneg_system(sys: &LinearSystem) -> LinearSystem {
    let mut out = sys.clone();
    let d = sys.dim();
    for k in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[k] = Rational::one();
        let c = Constraint::ge(e, Rational::zero());
        if !out.constraints.contains(&c) {
            out.push(c);
        }
    }
    out
}

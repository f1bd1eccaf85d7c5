//! Exact computation of solution sets of interval linear complementarity
//! problems: find `z >= 0` with `w = q + M z >= 0` and `z^T w = 0` for some
//! `M` and `q` in given interval bounds.

pub mod classes;
pub mod interval;
pub mod lcp;
pub mod linear;
pub mod matrix;
pub mod polyhedron;
pub mod quadric;
pub mod rational;
pub mod solution_set;
pub mod symmetric;

pub use interval::{Interval, IntervalMatrix, IntervalVector};
pub use matrix::Matrix;
pub use rational::Rational;

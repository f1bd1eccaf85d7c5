#![allow(dead_code)]

use lcpset::interval::{Interval, IntervalMatrix, IntervalVector};
use lcpset::rational::{parse_rational, Rational};
use lcpset::Matrix;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub mod oracles;

pub fn r(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn rv(xs: &[&str]) -> Vec<Rational> {
    xs.iter().map(|s| r(s)).collect()
}

/// `"a"` is a point, `"a..b"` a box.
pub fn iv(s: &str) -> Interval {
    match s.split_once("..") {
        Some((lo, hi)) => Interval::new(r(lo), r(hi)).unwrap(),
        None => Interval::point(r(s)),
    }
}

pub fn imat(rows: &[&[&str]]) -> IntervalMatrix {
    IntervalMatrix::new(rows.iter().map(|row| row.iter().map(|s| iv(s)).collect()).collect()).unwrap()
}

pub fn ivec(xs: &[&str]) -> IntervalVector {
    IntervalVector::new(xs.iter().map(|s| iv(s)).collect()).unwrap()
}

pub struct Example {
    pub name: &'static str,
    pub a: IntervalMatrix,
    pub b: IntervalVector,
}

pub fn m_matrix_2d() -> Example {
    Example {
        name: "m_matrix_2d",
        a: imat(&[&["1/8..1", "-1/4..-1/5"], &["-1/4..-1/5", "1"]]),
        b: ivec(&["-3..-1", "1..2"]),
    }
}

pub fn hplus_2d() -> Example {
    Example {
        name: "hplus_2d",
        a: imat(&[&["4..5", "-1..2"], &["-1..2", "2..3"]]),
        b: ivec(&["-2..-1", "-1..1"]),
    }
}

pub fn p_matrix_3d() -> Example {
    Example {
        name: "p_matrix_3d",
        a: imat(&[&["1", "0..1/2", "0..1/2"], &["0..1/2", "1", "0..1/2"], &["0..1/2", "0..1/2", "1"]]),
        b: ivec(&["-6", "1..2", "-3..-2"]),
    }
}

pub fn m_matrix_3d() -> Example {
    Example {
        name: "m_matrix_3d",
        a: imat(&[
            &["1/3..1/2", "-1/8..-1/10", "-1/8..-1/10"],
            &["-1/8..-1/10", "3/5..7/10", "-1/5..-1/6"],
            &["-1/8..-1/10", "-1/5..-1/6", "1/2..2/3"],
        ]),
        b: ivec(&["-2..4", "-2..3", "1..2"]),
    }
}

pub fn hplus_3d() -> Example {
    Example {
        name: "hplus_3d",
        a: imat(&[&["4..5", "-1..2", "0"], &["-1..2", "2..3", "1"], &["0", "1", "2"]]),
        b: ivec(&["-2..-1", "-1..1", "-2..-1"]),
    }
}

pub fn worked_examples() -> Vec<Example> {
    vec![m_matrix_2d(), hplus_2d(), p_matrix_3d(), m_matrix_3d(), hplus_3d()]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `lo..=hi` and denominator in `1..=den`.
pub fn rand_rat(rng: &mut impl Rng, lo: i64, hi: i64, den: i64) -> Rational {
    let d = rng.gen_range(1..=den);
    Rational::new(rng.gen_range(lo * d..=hi * d).into(), d.into())
}

/// Strictly diagonally dominant Z-matrix, hence an M-matrix. With `dense`
/// every off-diagonal entry is negative, which makes the inverse positive.
pub fn random_m_matrix(rng: &mut impl Rng, n: usize, dense: bool) -> Matrix {
    let mut off = vec![vec![Rational::zero(); n]; n];
    for (i, row) in off.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if i != j && (dense || rng.gen_bool(0.6)) {
                *x = -rand_rat(rng, 0, 3, 4);
                if dense && x.is_zero() {
                    *x = -Rational::new(1.into(), 4.into());
                }
            }
        }
    }
    Matrix::from_fn(n, |i, j| {
        if i == j {
            let s: Rational = off[i].iter().map(|x| -x.clone()).sum();
            s + rand_rat(rng, 0, 2, 4) + Rational::new(1.into(), 8.into())
        } else {
            off[i][j].clone()
        }
    })
}

/// Random point inside a box, on a small denominator lattice.
pub fn sample_interval(rng: &mut impl Rng, x: &Interval) -> Rational {
    if x.is_point() {
        return x.lo().clone();
    }
    let k: i64 = rng.gen_range(0..=12);
    x.lo() + x.width() * Rational::new(k.into(), 12.into())
}

pub fn sample_matrix(rng: &mut impl Rng, a: &IntervalMatrix) -> Matrix {
    let n = a.dim();
    let vals: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| sample_interval(rng, a.get(i, j))).collect()).collect();
    Matrix::from_fn(n, |i, j| vals[i][j].clone())
}

/// Random convex combination of the given points.
pub fn convex_combination(rng: &mut impl Rng, pts: &[Vec<Rational>]) -> Vec<Rational> {
    let weights: Vec<Rational> = pts.iter().map(|_| Rational::from_integer(rng.gen_range(0..=6).into())).collect();
    let mut total: Rational = weights.iter().cloned().sum();
    let mut weights = weights;
    if total.is_zero() {
        weights[0] = Rational::one();
        total = Rational::one();
    }
    let n = pts[0].len();
    (0..n)
        .map(|k| pts.iter().zip(&weights).map(|(p, w)| &p[k] * w).sum::<Rational>() / &total)
        .collect()
}

/// Grid points `k·step` in `[lo, hi]`.
pub fn grid(lo: &[Rational], hi: &[Rational], step: &Rational) -> Vec<Vec<Rational>> {
    lcpset::symmetric::grid_points(lo, hi, step)
}

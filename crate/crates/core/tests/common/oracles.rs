//! Independent oracles and generators shared by the property suites.

use lcpset::classes::interval_is_p;
use lcpset::interval::{Interval, IntervalMatrix, IntervalVector};
use lcpset::lcp::{LcpInstance, LcpSolutionSet};
use lcpset::quadric::Signature;
use lcpset::{Matrix, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{rand_rat, random_m_matrix};

/// Polynomial with coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().unwrap()
    }

    fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer((k as i64).into())).collect()).trim()
    }

    fn monic(&self) -> Poly {
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / d.lead();
            for (i, c) in d.0.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quot[k] = f;
            rem.pop();
        }
        (Poly(quot).trim(), Poly(rem).trim())
    }

    fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while b.degree().is_some() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Faddeev–LeVerrier: `det(λI - A)`.
pub fn leverrier(a: &Matrix) -> Poly {
    let n = a.dim();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = Matrix::zeros(n);
    for k in 1..=n {
        let shifted = mk.add(&Matrix::from_fn(n, |i, j| if i == j { c[n - k + 1].clone() } else { Rational::zero() }));
        let am = a.mul(&shifted);
        let tr: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
        c[n - k] = -tr / Rational::from_integer((k as i64).into());
        mk = am;
    }
    Poly(c)
}

/// Yun's algorithm: square-free factors with their multiplicities.
pub fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let f = f.monic();
    let d = f.derivative();
    let mut a = Poly::gcd(&f, &d);
    let mut b = f.div_rem(&a).0;
    let mut c = d.div_rem(&a).0;
    let mut dpoly = {
        let bp = b.derivative();
        sub(&c, &bp)
    };
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        a = Poly::gcd(&b, &dpoly);
        let next_b = b.div_rem(&a).0;
        c = dpoly.div_rem(&a).0;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = next_b;
        dpoly = sub(&c, &b.derivative());
        i += 1;
    }
    out
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.0.len().max(b.0.len());
    Poly((0..n)
        .map(|k| a.0.get(k).cloned().unwrap_or_default() - b.0.get(k).cloned().unwrap_or_default())
        .collect())
    .trim()
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while chain.last().unwrap().degree().unwrap_or(0) > 0 {
        let k = chain.len();
        let r = chain[k - 2].div_rem(&chain[k - 1]).1;
        if r.degree().is_none() {
            break;
        }
        chain.push(Poly(r.0.iter().map(|c| -c.clone()).collect()));
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &Rational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Isolates the roots of a square-free polynomial in `(lo, hi]` by bisection,
/// then narrows each to width below `tol`.
fn isolate(chain: &[Poly], lo: Rational, hi: Rational, tol: &Rational, out: &mut Vec<(Rational, Rational)>) {
    let count = sign_variations(chain, &lo) - sign_variations(chain, &hi);
    if count == 0 {
        return;
    }
    if count == 1 && &hi - &lo < *tol {
        out.push((lo, hi));
        return;
    }
    let mid = (&lo + &hi) / Rational::from_integer(2.into());
    isolate(chain, lo, mid.clone(), tol, out);
    isolate(chain, mid, hi, tol, out);
}

/// Signature from the exact characteristic polynomial by root isolation.
pub fn bisection_signature(a: &Matrix) -> Signature {
    let p = leverrier(a);
    let (mut plus, mut minus, mut zero) = (0, 0, 0);
    let tol = Rational::new(1.into(), 1_000_000.into());
    for (factor, mult) in square_free(&p) {
        let mut g = factor;
        if g.eval(&Rational::zero()).is_zero() {
            zero += mult;
            g = g.div_rem(&Poly(vec![Rational::zero(), Rational::one()])).0;
        }
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let bound = Rational::one() + g.0.iter().map(|c| (c / g.lead()).abs()).fold(Rational::zero(), |m, x| m.max(x));
        let chain = sturm_chain(&g);
        let mut roots = Vec::new();
        isolate(&chain, -bound.clone(), Rational::zero(), &tol, &mut roots);
        let negatives = roots.len();
        isolate(&chain, Rational::zero(), bound, &tol, &mut roots);
        minus += mult * negatives;
        plus += mult * (roots.len() - negatives);
    }
    Signature { plus, minus, zero }
}

pub fn random_symmetric(rng: &mut impl Rng) -> Matrix {
    let kind = rng.gen_range(0..4);
    if kind == 0 {
        // low rank: sum of one or two outer products with signs
        let terms = rng.gen_range(1..=2);
        let mut m = Matrix::zeros(3);
        for _ in 0..terms {
            let v: Vec<Rational> = (0..3).map(|_| rand_rat(rng, -3, 3, 2)).collect();
            let s = if rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() };
            m = m.add(&Matrix::from_fn(3, |i, j| &s * &v[i] * &v[j]));
        }
        return m;
    }
    let mut e = vec![vec![Rational::zero(); 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let x = if rng.gen_bool(0.2) { Rational::zero() } else { rand_rat(rng, -5, 5, 4) };
            e[i][j] = x.clone();
            e[j][i] = x;
        }
    }
    Matrix::from_fn(3, |i, j| e[i][j].clone())
}

/// Every point of a solution set report: isolated points, and the base, a
/// unit step and the end of each family.
pub fn solutions(set: &LcpSolutionSet) -> Vec<Vec<Rational>> {
    let mut out = set.points.clone();
    for fam in &set.families {
        out.push(fam.base.clone());
        out.push(fam.at(&Rational::one()));
        if let Some(len) = &fam.length {
            out.push(fam.at(len));
        }
    }
    out
}

/// Ordered pair with the M-matrix on a random side.
pub fn random_ordered_pair(rng: &mut impl Rng, n: usize) -> (LcpInstance, LcpInstance) {
    let dense = rng.gen_bool(0.5);
    let base = random_m_matrix(rng, n, dense);
    let bump = Matrix::from_fn(n, |_, _| if rng.gen_bool(0.4) { rand_rat(rng, 0, 1, 4) } else { Rational::zero() });
    let (m_hat, m_tilde) = if rng.gen_bool(0.5) {
        (base.clone(), base.add(&bump))
    } else {
        (base.sub(&bump), base)
    };
    let q_hat: Vec<Rational> = (0..n).map(|_| rand_rat(rng, -5, 2, 2)).collect();
    let q_tilde: Vec<Rational> = q_hat
        .iter()
        .map(|q| if rng.gen_bool(0.5) { q + rand_rat(rng, 0, 2, 2) } else { q.clone() })
        .collect();
    (LcpInstance::new(m_hat, q_hat).unwrap(), LcpInstance::new(m_tilde, q_tilde).unwrap())
}

/// Random 3x3 box certified as a P-matrix box.
pub fn random_p_box(rng: &mut impl Rng) -> IntervalMatrix {
    loop {
        let rows = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let (lo, width) = if i == j {
                            (rand_rat(rng, 1, 4, 4), rand_rat(rng, 0, 2, 4))
                        } else {
                            (rand_rat(rng, -2, 1, 4), rand_rat(rng, 0, 1, 4))
                        };
                        if rng.gen_bool(0.25) {
                            Interval::point(lo)
                        } else {
                            Interval::new(lo.clone(), lo + width).unwrap()
                        }
                    })
                    .collect()
            })
            .collect();
        let a = IntervalMatrix::new(rows).unwrap();
        if interval_is_p(&a).unwrap().holds() {
            return a;
        }
    }
}

pub fn random_q(rng: &mut impl Rng) -> IntervalVector {
    IntervalVector::new(
        (0..3)
            .map(|_| {
                let lo = rand_rat(rng, -4, 2, 2);
                Interval::new(lo.clone(), lo + rand_rat(rng, 0, 2, 2)).unwrap()
            })
            .collect(),
    )
    .unwrap()
}


mod common;

use common::*;
use lcpset::classes::*;
use lcpset::{Matrix, Rational};

#[test]
fn m_implies_hplus_implies_p_on_random_matrices() {
    let mut rng = rng(11);
    for k in 0..200 {
        let n = 2 + k % 3;
        let a = random_m_matrix(&mut rng, n, k % 2 == 0);
        let m = is_m_matrix(&a);
        assert!(m.holds(), "{a}");
        let u = m.witness().unwrap();
        assert!(verify_m_witness(&a, u));
        assert!(a.inverse().unwrap().is_nonneg());
        assert!(is_hplus_matrix(&a).holds(), "{a}");
        assert!(is_p_matrix(&a).holds(), "{a}");
    }
}

#[test]
fn class_chain_on_worked_example_matrices() {
    for ex in worked_examples() {
        for corner in [ex.a.lower(), ex.a.upper()] {
            if is_m_matrix(&corner).holds() {
                assert!(is_hplus_matrix(&corner).holds(), "{}", ex.name);
            }
            if is_hplus_matrix(&corner).holds() {
                assert!(is_p_matrix(&corner).holds(), "{}", ex.name);
            }
        }
    }
}

#[test]
fn larger_z_matrix_above_an_m_matrix_is_m_with_smaller_inverse() {
    let mut rng = rng(12);
    for k in 0..200 {
        let n = 2 + k % 3;
        let m = random_m_matrix(&mut rng, n, false);
        // raise entries but keep off-diagonals nonpositive
        let a = Matrix::from_fn(n, |i, j| {
            let x = m[(i, j)].clone();
            let bump = rand_rat(&mut rng, 0, 1, 4);
            if i == j {
                x + bump
            } else {
                let raised = &x + bump;
                if raised > Rational::from_integer(0.into()) {
                    Rational::from_integer(0.into())
                } else {
                    raised
                }
            }
        });
        assert!(m.le(&a) && is_z_matrix(&a));
        let cert = is_m_matrix(&a);
        assert!(cert.holds(), "{a}");
        let (ai, mi) = (a.inverse().unwrap(), m.inverse().unwrap());
        assert!(ai.le(&mi), "inverse not antitone for {m} <= {a}");
    }
}

#[test]
fn p_sweep_agrees_with_interior_samples() {
    let mut rng = rng(13);
    let mut fixtures: Vec<_> = worked_examples().into_iter().map(|e| (e.name.to_string(), e.a)).collect();
    // a box that fails only away from its lower corner
    fixtures.push(("fails_inside".into(), imat(&[&["1", "0..2"], &["0..2", "1"]])));
    for (name, a) in fixtures {
        let sweep = interval_is_p(&a).unwrap();
        let mut interior_failure = false;
        for _ in 0..1000 {
            let m = sample_matrix(&mut rng, &a);
            assert!(a.contains(&m));
            if !is_p_matrix(&m).holds() {
                interior_failure = true;
                assert!(!sweep.holds(), "{name}: interior sample {m} is not P but every vertex is");
            }
        }
        if name == "fails_inside" {
            assert!(interior_failure && !sweep.holds());
            match sweep {
                ClassCertificate::NotInClass(ClassFailure::NonPositiveMinor { vertex, .. }) => {
                    assert!(!is_p_matrix(&vertex).holds())
                }
                other => panic!("unexpected certificate {other:?}"),
            }
        }
    }
}

#[test]
fn interval_certificates_for_worked_examples() {
    assert!(interval_is_m(&m_matrix_2d().a).holds());
    assert!(interval_is_m(&m_matrix_3d().a).holds());
    assert!(!interval_is_m(&hplus_2d().a).holds());
    assert!(interval_is_hplus(&hplus_2d().a).holds());
    assert!(interval_is_hplus(&hplus_3d().a).holds());
    assert!(interval_is_p(&p_matrix_3d().a).unwrap().holds());
    let mut rng = rng(14);
    // every sampled member of a certified box inherits the class
    for ex in worked_examples() {
        let m_cert = interval_is_m(&ex.a).holds();
        let h_cert = interval_is_hplus(&ex.a).holds();
        for _ in 0..100 {
            let m = sample_matrix(&mut rng, &ex.a);
            if m_cert {
                assert!(is_m_matrix(&m).holds(), "{}", ex.name);
            }
            if h_cert {
                assert!(is_hplus_matrix(&m).holds(), "{}", ex.name);
            }
        }
    }
}

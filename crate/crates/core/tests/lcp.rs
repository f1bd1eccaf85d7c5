mod common;

use common::oracles::*;
use common::*;
use lcpset::classes::{interval_is_hplus, interval_is_m, interval_is_p, is_m_matrix};
use lcpset::lcp::*;
use lcpset::rational::vec_lt;
use lcpset::solution_set::{assemble_solution_set, SupportPattern};
use lcpset::symmetric::{in_solution_set, in_symmetric_solution_set};
use lcpset::{Matrix, Rational};
use num_traits::Signed;

#[test]
fn p_certified_boxes_give_unique_solutions() {
    let mut rng = rng(21);
    for ex in worked_examples() {
        let certified = interval_is_p(&ex.a).unwrap().holds()
            || interval_is_m(&ex.a).holds()
            || interval_is_hplus(&ex.a).holds();
        assert!(certified, "{}", ex.name);
        let n = ex.a.dim();
        for _ in 0..100 {
            let m = sample_matrix(&mut rng, &ex.a);
            let q: Vec<Rational> = (0..n).map(|_| rand_rat(&mut rng, -6, 6, 3)).collect();
            let inst = LcpInstance::new(m, q).unwrap();
            let set = solve_lcp(&inst).unwrap();
            assert!(set.complete && set.families.is_empty(), "{}", ex.name);
            assert_eq!(set.points.len(), 1, "{}: {:?}", ex.name, set.points);
            assert!(inst.is_solution(&set.points[0]));
        }
    }
}

#[test]
fn monotone_bounds_on_random_ordered_pairs() {
    let mut rng = rng(22);
    let (mut instances, mut strict_checked, mut attempts) = (0, 0, 0);
    // count only pairs where both problems are solvable
    while instances < 500 {
        attempts += 1;
        assert!(attempts < 5000);
        let n = 2 + attempts % 3;
        let (hat, tilde) = random_ordered_pair(&mut rng, n);
        assert!(is_m_matrix(&hat.m).holds() || is_m_matrix(&tilde.m).holds());
        let hat_sols = solutions(&solve_lcp(&hat).unwrap());
        let tilde_sols = solutions(&solve_lcp(&tilde).unwrap());
        if hat_sols.is_empty() || tilde_sols.is_empty() {
            continue;
        }
        instances += 1;
        for hz in &hat_sols {
            for tz in &tilde_sols {
                let v = check_monotone(&hat, &tilde, hz, tz).unwrap();
                assert!(v.asserts_ordering());
                assert!(v.ordering_holds, "{tz:?} not below {hz:?}");
                assert!(v.consistent(), "{v}");
                if v.supplement_applies() {
                    assert_eq!(v.strict_holds, Some(true));
                    strict_checked += 1;
                }
            }
        }
    }
    assert!(strict_checked >= 50, "only {strict_checked} strict cases exercised");
}

#[test]
fn check_monotone_rejects_bad_input() {
    let hat = LcpInstance::new(Matrix::from_ints(&[&[2, 0], &[0, 5]]), vec![r("-4"), r("-5")]).unwrap();
    let tilde = LcpInstance::new(Matrix::from_ints(&[&[2, 7], &[6, 5]]), vec![r("-4"), r("-5")]).unwrap();
    assert_eq!(check_monotone(&tilde, &hat, &rv(&["2", "0"]), &rv(&["2", "1"])), Err(LcpError::NotOrdered));
    assert!(matches!(
        check_monotone(&hat, &tilde, &rv(&["1", "1"]), &rv(&["2", "0"])),
        Err(LcpError::NotASolution { which: "hat", .. })
    ));
}

#[test]
fn strict_bound_holds_below_the_symmetric_supremum() {
    let ex = hplus_2d();
    let hat = LcpInstance::new(ex.a.lower(), ex.b.lower()).unwrap();
    let z_hat = solve_lcp(&hat).unwrap().unique().unwrap().to_vec();
    let report = assemble_solution_set(&ex.a, &ex.b).unwrap();
    let piece = report.piece(&SupportPattern::new(2, &[0, 1])).unwrap();
    let verts = piece.vertices();
    let mut rng = rng(23);
    let mut tested = 0;
    for _ in 0..200 {
        let z = convex_combination(&mut rng, &verts);
        if z == z_hat {
            continue;
        }
        let verdict = in_symmetric_solution_set(&z, &ex.a, &ex.b);
        let Some(w) = verdict.witness else { continue };
        let tilde = LcpInstance::new(w.m, w.q).unwrap();
        let v = check_monotone(&hat, &tilde, &z_hat, &z).unwrap();
        if z.iter().all(Signed::is_positive) {
            assert_eq!(v.strict_holds, Some(true), "{z:?}");
            tested += 1;
        }
    }
    assert!(tested > 50);
}

#[test]
fn strict_bound_fails_for_the_p_matrix_example() {
    let ex = p_matrix_3d();
    let sup = extremal_solutions(&ex.a, &ex.b).unwrap().sup.unwrap();
    assert_eq!(sup, rv(&["6", "0", "3"]));
    let other = rv(&["6", "0", "0"]);
    assert!(in_solution_set(&other, &ex.a, &ex.b));
    assert!(!vec_lt(&other, &sup));
    let report = assemble_solution_set(&ex.a, &ex.b).unwrap();
    assert!(report.contains(&other));
}

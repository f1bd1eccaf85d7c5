mod common;

use common::oracles::*;
use common::*;

use lcpset::quadric::*;
use lcpset::solution_set::SupportPattern;
use lcpset::Rational;

#[test]
fn leverrier_matches_minor_sums() {
    let mut rng = rng(51);
    for _ in 0..50 {
        let a = random_symmetric(&mut rng);
        let ours: Vec<Rational> = char_poly(&a).into_iter().rev().collect();
        assert_eq!(Poly(ours), leverrier(&a));
    }
}

#[test]
fn signature_matches_bisection_oracle() {
    let mut rng = rng(52);
    let mut with_zero = 0;
    for _ in 0..1000 {
        let a = random_symmetric(&mut rng);
        let expected = bisection_signature(&a);
        assert_eq!(signature(&a), expected, "{a}");
        if expected.zero > 0 {
            with_zero += 1;
        }
    }
    assert!(with_zero > 100);
}

#[test]
fn p_matrix_quadrics_are_never_elliptic() {
    let forbidden = [
        QuadricLabel::Ellipsoid,
        QuadricLabel::EllipticParaboloid,
        QuadricLabel::EllipticCylinder,
        QuadricLabel::ParabolicCylinder,
    ];
    let mut rng = rng(53);
    for _ in 0..100 {
        let a = random_p_box(&mut rng);
        let b = random_q(&mut rng);
        for q in sym_quadrics_3d_interior(&a, &b).unwrap() {
            let class = classify_quadric(&q).unwrap();
            assert!(!forbidden.contains(&class.label), "{q}: {:?}", class.label);
        }
        for zero_w in [[0, 1], [0, 2], [1, 2]] {
            for q in sym_quadrics_boundary(&a, &b, &SupportPattern::new(3, &zero_w)).unwrap() {
                let class = classify_quadric(&q).unwrap();
                assert!(
                    matches!(class.label, QuadricLabel::HyperbolicCylinder | QuadricLabel::TwoIntersectingPlanes),
                    "{q}: {:?}",
                    class.label
                );
            }
        }
    }
}

use doublept::circle_maps::{random_map, PLCircleMap};
use doublept::double_points::{
    closure_orientability, lift_obstruction_check, sigma, CurveKind, DoublePointCurve,
};
use doublept::{Rational, Scalar};
use proptest::prelude::*;

fn map(seed: u64, folds: usize, degree: i64) -> PLCircleMap<Rational> {
    random_map(seed, folds, degree).unwrap()
}

/// Sample points of the torus that avoid breakpoints and tangencies.
fn probe_points(f: &PLCircleMap<Rational>) -> Vec<Rational> {
    (0..23)
        .map(|k| Rational::ratio(k, 23) + Rational::ratio(1, 7919))
        .filter(|x| f.vertices().iter().all(|v| v.x != *x))
        .collect()
}

fn check_tau_equivariance(s: &DoublePointCurve<Rational>) {
    for (c, comp) in s.components().iter().enumerate() {
        let partner = comp.tau_partner;
        assert_eq!(s.components()[partner].tau_partner, c);
        // Swapping a sample point lands in the partner component.
        let mid_piece = comp.pieces[0];
        let p = &s.pieces()[mid_piece];
        let v = Rational::midpoint(&p.lo, &p.hi);
        let (ps, pt) = s.piece_point(mid_piece, &v);
        assert_eq!(
            s.component_containing(&pt.mod_one(), &ps.mod_one()),
            Some(partner)
        );
        if comp.is_compact() && partner != c {
            assert_eq!(s.components()[partner].p1_degree, comp.p2_degree);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn sigma_invariants(seed in any::<u64>(), folds in 0usize..=12, degree in 0i64..=4) {
        prop_assume!(degree > 0 || folds >= 2);
        let f = map(seed, folds, degree);
        let s = sigma(&f);
        let d = f.degree();
        check_tau_equivariance(&s);
        for (c, comp) in s.components().iter().enumerate() {
            match comp.kind {
                CurveKind::Circle => {
                    prop_assert_eq!(d * comp.p1_degree, d * comp.p2_degree);
                    prop_assert_eq!(comp.target_degree, d * comp.p1_degree);
                    if s.is_tau_invariant(c) {
                        prop_assert_eq!(comp.target_degree % 2, 0);
                    }
                    // Projection degrees stay below the map degree.
                    let ok = (0 <= comp.p1_degree && comp.p1_degree < d)
                        || (comp.p1_degree == 0 && d == 0);
                    prop_assert!(ok, "component {} has p1 {} for degree {}", c, comp.p1_degree, d);
                }
                CurveKind::OpenArc { .. } => {
                    prop_assert!(!s.is_tau_invariant(c));
                    prop_assert_eq!(comp.p1_degree, 0);
                }
            }
        }
        for x in probe_points(&f) {
            let y = f.lift_evaluate(&x);
            if !f.is_regular_value(&y) {
                continue;
            }
            prop_assert_eq!(s.points_over(&x).len(), f.fiber(&y).len() - 1);
        }
        prop_assert!(!lift_obstruction_check(&s).violation);
        for k in 0..s.closure().len() {
            let r = closure_orientability(&s, k);
            prop_assert!(r.orientable);
            prop_assert!(r.sign_rule_holds);
            prop_assert_eq!(r.crossings % 2, 0);
        }
    }

    #[test]
    fn degree_matches_signed_fibers(seed in any::<u64>(), folds in 0usize..=10, degree in 0i64..=5) {
        prop_assume!(degree > 0 || folds >= 2);
        let f = map(seed, folds, degree);
        for k in 0..20 {
            let y = Rational::ratio(k, 20) + Rational::ratio(1, 6007);
            if f.is_regular_value(&y) {
                prop_assert_eq!(f.signed_fiber_count(&y), f.degree());
            }
        }
    }
}

#[test]
fn four_fold_cover_pairing() {
    let s = sigma(&PLCircleMap::<Rational>::covering(4));
    let invariant: Vec<usize> = (0..3).filter(|&c| s.is_tau_invariant(c)).collect();
    assert_eq!(invariant.len(), 1);
}

use doublept::circle_maps::{
    classify_preimage, random_map, Angle, ArcKind, Endpoint, PLCircleMap, TransverseArc,
};
use doublept::double_points::sigma;
use doublept::unfolding::{
    corner_connectivity, eliminate_negative_arcs, eulerian_resolution, find_balanced_path,
    pair_degree_check, random_euler_graph, surgery_parity, GraphComponent, IntervalMapPair,
    PathError, UnfoldMode,
};
use doublept::{Rational, Scalar};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn map(seed: u64, folds: usize, degree: i64) -> PLCircleMap<Rational> {
    random_map(seed, folds, degree).unwrap()
}

/// Endpoints over 997 never meet the critical values, whose denominators
/// divide 960.
fn arc(a: i64, len: i64) -> TransverseArc<Rational> {
    TransverseArc::new(Angle::new(q(a, 997)), Angle::new(q(a + len, 997)), 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn balanced_paths_close(
        seed in any::<u64>(),
        folds in 2usize..=10,
        degree in 0i64..=3,
        a in 0i64..997,
        len in 1i64..600,
    ) {
        let f = map(seed, folds, degree);
        let cls = classify_preimage(&f, &arc(a, len)).unwrap();
        for (i, c) in cls.components.iter().enumerate() {
            if !matches!(c.kind, ArcKind::Positive | ArcKind::Negative) {
                continue;
            }
            match find_balanced_path(&f, &cls, i) {
                Ok(path) => {
                    prop_assert!(path.closed());
                    prop_assert!(path.one_sided());
                    prop_assert_ne!(cls.components[path.end_arc].kind, c.kind);
                    prop_assert_eq!(path.passed_positive, path.passed_negative);
                }
                Err(PathError::NoOppositeArc) => prop_assert!(cls.m() == 0 || cls.p() == 0),
                Err(e) => {
                    // Negative arcs always find a partner; only surplus
                    // positive arcs may lack one.
                    prop_assert_eq!(c.kind, ArcKind::Positive, "{}", e);
                }
            }
        }
    }

    #[test]
    fn elimination_reaches_zero(
        seed in any::<u64>(),
        folds in 0usize..=10,
        degree in 0i64..=4,
        a in 0i64..997,
        len in 1i64..600,
        keep_lo in any::<bool>(),
    ) {
        prop_assume!(degree > 0 || folds >= 2);
        let f = map(seed, folds, degree);
        let mode = if keep_lo {
            UnfoldMode::OpenSubset { keep: Endpoint::Lo }
        } else {
            UnfoldMode::Plain
        };
        let j0 = arc(a, len);
        let r = eliminate_negative_arcs(&f, &j0, &mode).unwrap();
        prop_assert_eq!(r.classification.m(), 0);
        prop_assert_eq!(r.classification.p() as i64, f.degree());
        prop_assert!(r.trace.strictly_decreasing());
        prop_assert!(r.trace.steps.iter().all(|s| s.identity_holds));
        // The new arc contains the old one.
        prop_assert!(r.arc.lo() <= j0.lo() && r.arc.hi() >= j0.hi());
        if keep_lo {
            prop_assert_eq!(r.arc.lo(), j0.lo());
        } else {
            prop_assert_eq!(r.arc.hi(), j0.hi());
        }
        // An independent reclassification agrees.
        let again = classify_preimage(&f, &r.arc).unwrap();
        prop_assert_eq!(again.m(), 0);
    }

    #[test]
    fn regular_value_mode(
        seed in any::<u64>(),
        folds in 2usize..=8,
        degree in 0i64..=3,
        a in 0i64..997,
        len in 2i64..600,
        frac in 1i64..6,
    ) {
        let f = map(seed, folds, degree);
        let j0 = arc(a, len);
        let z = q(a, 997) + q(len * frac, 997 * 6) + q(1, 6979);
        prop_assume!(z < q(a + len, 997) && f.is_regular_value(&z));
        let r = eliminate_negative_arcs(&f, &j0, &UnfoldMode::RegularValue(z)).unwrap();
        let (_, ok) = r.regular_value.unwrap();
        prop_assert!(ok);
        prop_assert!(r.trace.strictly_decreasing());
    }

    #[test]
    fn euler_resolution_matches_enumeration(seed in any::<u64>(), v in 1usize..=6) {
        let g = random_euler_graph(seed, v, 0);
        for (c, comp) in g.components().iter().enumerate() {
            let GraphComponent::Vertices(vs) = comp else { continue };
            let r = eulerian_resolution(&g, c).unwrap();
            prop_assert_eq!(r.circuits, 1);
            // The choice lies in the enumerated single-circuit set, which
            // is never empty.
            let mut feasible = Vec::new();
            for mask in 0u32..(1 << vs.len()) {
                let mut choices = vec![0u8; g.vertex_count()];
                for (k, &w) in vs.iter().enumerate() {
                    choices[w] = ((mask >> k) & 1) as u8;
                }
                if trace_circuits(&g, vs, &choices) == 1 {
                    feasible.push(choices);
                }
            }
            prop_assert!(feasible.contains(&r.choices));
        }
    }

    #[test]
    fn surgery_symmetry(a in 1u64..40, b in 1u64..40, n in 0u64..80) {
        prop_assert_eq!(
            surgery_parity(a, b, n).map_err(|_| ()),
            surgery_parity(b, a, n).map_err(|_| ())
        );
    }
}

/// Circuit count by walking transitions written out per vertex.
fn trace_circuits(g: &doublept::unfolding::EulerGraph, vs: &[usize], choices: &[u8]) -> usize {
    let edges = g.edges();
    let mut next = vec![usize::MAX; edges.len()];
    for &v in vs {
        let ins: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].1 == v).collect();
        let outs: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].0 == v).collect();
        for k in 0..2 {
            next[ins[k]] = outs[k ^ usize::from(choices[v])];
        }
    }
    let mut seen = vec![false; edges.len()];
    let mut count = 0;
    for e in 0..edges.len() {
        if seen[e] || !vs.contains(&edges[e].0) {
            continue;
        }
        count += 1;
        let mut cur = e;
        while !seen[cur] {
            seen[cur] = true;
            cur = next[cur];
        }
    }
    count
}

#[test]
fn degree_formula_on_unfolded_arcs() {
    let mut checked = 0;
    for seed in 0..500u64 {
        let degree = (seed % 6) as i64;
        let f = map(seed, 8, degree);
        let j0 = arc((seed * 37 % 997) as i64, 150);
        let r = eliminate_negative_arcs(&f, &j0, &UnfoldMode::Plain).unwrap();
        let report = pair_degree_check(&f, &r.arc, &sigma(&f)).unwrap();
        assert!(report.all_equal(), "seed {seed}: {:?}", report.rows);
        if degree == 0 {
            assert!(report.rows.iter().all(|row| row.p1_degree == 0));
        }
        checked += 1;
    }
    assert_eq!(checked, 500);
}

fn random_interval_map(seed: u64, laps: usize, salt: i64) -> Vec<(Rational, Rational)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = laps | 1;
    let mut pts = vec![(q(0, 1), q(0, 1))];
    for k in 1..n {
        let y = 2 * rng.gen_range(1..500i64) + salt;
        pts.push((q(k as i64, n as i64), q(y, 1001)));
    }
    pts.push((q(1, 1), q(1, 1)));
    pts
}

#[test]
fn corners_connected_for_random_pairs() {
    let mut valid = 0;
    for seed in 0..100u64 {
        let f = random_interval_map(seed, 1 + (seed % 5) as usize, 0);
        let g = random_interval_map(seed ^ 0xABCD, 1 + (seed % 4) as usize, 1);
        let Ok(pair) = IntervalMapPair::new(f, g) else {
            continue;
        };
        let r = corner_connectivity(&pair);
        assert!(r.connected, "seed {seed}");
        assert_eq!(r.witness.first().map(|p| p.0.is_integer()), Some(true));
        valid += 1;
    }
    assert!(valid >= 90, "only {valid} valid pairs");
}

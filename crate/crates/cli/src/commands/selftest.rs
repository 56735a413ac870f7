//! Seeded run of the invariant suite across all modules.

use std::panic::{self, AssertUnwindSafe};

use doublept::circle_maps::{classify_preimage, random_map, ArcKind, PLCircleMap, TransverseArc};
use doublept::double_points::{hopf_invariant, lift_obstruction_check, sigma, DoublePointCurve};
use doublept::space_forms::{
    build_group, cover_realizable, dcover_consistency, hopf_of_cover, involution_count,
    nonrealizable_map_exists, Family, FiniteSubgroupS3, Pi1,
};
use doublept::sweeps::{assign_disks, embedding_certificate, random_movie, SweepMovie};
use doublept::unfolding::{
    eliminate_negative_arcs, eulerian_resolution, find_balanced_path, interior_regular_value,
    pair_degree_check, random_euler_graph, signed_fiber_sums, surgery_parity, GraphComponent,
    UnfoldMode,
};
use doublept::{Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::analyze;
use crate::report::{Outcome, Status};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Everything one case needs, generated from its seed.
struct Case {
    index: u64,
    seed: u64,
    map: PLCircleMap<Rational>,
    curve: DoublePointCurve<Rational>,
    arc: TransverseArc<Rational>,
    movie: SweepMovie<Rational>,
    rng: ChaCha8Rng,
}

impl Case {
    fn new(index: u64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = random_map(rng.gen(), 16, 5).expect("feasible parameters");
        let curve = sigma(&map);
        // Denominator 997 keeps arc ends off the critical values.
        let lo = Rational::ratio(rng.gen_range(1..997), 997);
        let hi = lo.clone() + Rational::ratio(rng.gen_range(1..997), 997);
        let arc = TransverseArc::from_lifted(lo, hi).expect("nondegenerate arc");
        let movie = random_movie(rng.gen(), 20);
        Case {
            index,
            seed,
            map,
            curve,
            arc,
            movie,
            rng,
        }
    }
}

type Property = (&'static str, fn(&mut Case, &[FiniteSubgroupS3]) -> Check);

const PROPERTIES: &[Property] = &[
    ("circle_maps.signed_fiber_degree", signed_fiber_degree),
    (
        "circle_maps.classification_identity",
        classification_identity,
    ),
    (
        "circle_maps.normalization_idempotent",
        normalization_idempotent,
    ),
    ("double_points.tau_equivariance", tau_equivariance),
    ("double_points.degree_coherence", degree_coherence),
    ("double_points.projection_bound", projection_bound),
    ("double_points.fiber_sum", fiber_sum),
    ("double_points.lift_obstruction", lift_obstruction),
    ("double_points.cover_hopf_parity", cover_hopf_parity),
    ("unfolding.elimination", elimination),
    ("unfolding.balanced_paths", balanced_paths),
    ("unfolding.pair_degree", pair_degree),
    ("unfolding.eulerian_resolution", euler_resolution),
    ("unfolding.surgery_symmetry", surgery_symmetry),
    ("space_forms.involution_parity", involution_parity),
    (
        "space_forms.realizable_matches_hopf",
        realizable_matches_hopf,
    ),
    ("space_forms.dcover_consistency", dcover_agrees),
    ("space_forms.nonrealizable_verdict", nonrealizable_verdict),
    ("sweeps.certificate", sweep_certificate),
    ("sweeps.population", sweep_population),
    ("sweeps.placement_determinism", placement_determinism),
    ("sweeps.slice_injectivity", slice_injectivity),
    ("cli.report_determinism", report_determinism),
];

fn signed_fiber_degree(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    for k in 0..20 {
        let y = Rational::ratio(k, 20) + Rational::ratio(1, 6007);
        if c.map.is_regular_value(&y) {
            let n = c.map.signed_fiber_count(&y);
            ensure(n == c.map.degree(), || format!("signed count {n} over {y}"))?;
        }
    }
    Ok(())
}

fn classification_identity(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let f = &c.map;
    let cls = classify_preimage(f, &c.arc).map_err(|e| e.to_string())?;
    let z = interior_regular_value(f, &c.arc);
    let sums = signed_fiber_sums(f, &cls, &z);
    let onto: i64 = cls
        .components
        .iter()
        .zip(&sums)
        .filter(|(k, _)| matches!(k.kind, ArcKind::Positive | ArcKind::Negative))
        .map(|(_, s)| s)
        .sum();
    let (p, m) = (cls.p() as i64, cls.m() as i64);
    ensure(p - m == onto, || {
        format!("p - m = {} but onto sum {onto}", p - m)
    })?;
    let abs: i64 = sums.iter().map(|s| s.abs()).sum();
    ensure(2 * m + f.degree() == abs, || {
        format!("2m + deg = {} but absolute sum {abs}", 2 * m + f.degree())
    })
}

fn normalization_idempotent(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let again = PLCircleMap::new(c.map.breakpoints(), c.map.degree()).map_err(|e| e.to_string())?;
    ensure(again == c.map, || "renormalizing changed the map".into())
}

fn tau_equivariance(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let s = &c.curve;
    for (k, comp) in s.components().iter().enumerate() {
        let partner = comp.tau_partner;
        ensure(s.components()[partner].tau_partner == k, || {
            format!("pairing of {k} is not an involution")
        })?;
        for &i in &comp.pieces {
            let p = &s.pieces()[i];
            let (ps, pt) = s.piece_point(i, &Rational::midpoint(&p.lo, &p.hi));
            let swapped = s.component_containing(&pt.mod_one(), &ps.mod_one());
            ensure(swapped == Some(partner), || {
                format!("swap of piece {i} of component {k} lands in {swapped:?}, not {partner}")
            })?;
        }
    }
    Ok(())
}

fn degree_coherence(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let s = &c.curve;
    let d = c.map.degree();
    for (k, comp) in s.components().iter().enumerate() {
        if !comp.is_compact() {
            continue;
        }
        ensure(d * comp.p1_degree == d * comp.p2_degree, || {
            format!("component {k}: d p1 != d p2")
        })?;
        ensure(comp.target_degree == d * comp.p1_degree, || {
            format!("component {k}: target degree")
        })?;
        if s.is_tau_invariant(k) {
            ensure(comp.target_degree % 2 == 0, || {
                format!("invariant component {k} has odd target degree")
            })?;
        }
    }
    Ok(())
}

fn projection_bound(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let d = c.map.degree();
    for (k, comp) in c.curve.components().iter().enumerate() {
        let p = comp.p1_degree;
        ensure((0 <= p && p < d) || (p == 0 && d == 0), || {
            format!("component {k} has p1 {p} for degree {d}")
        })?;
    }
    Ok(())
}

fn fiber_sum(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let f = &c.map;
    for k in 0..23 {
        let x = Rational::ratio(k, 23) + Rational::ratio(1, 7919);
        let y = f.lift_evaluate(&x);
        if !f.is_regular_value(&y) {
            continue;
        }
        let (got, want) = (c.curve.points_over(&x).len(), f.fiber(&y).len() - 1);
        ensure(got == want, || {
            format!("{got} double points over {x}, expected {want}")
        })?;
    }
    Ok(())
}

fn lift_obstruction(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    ensure(!lift_obstruction_check(&c.curve).violation, || {
        "compact component maps through an arc without lifting".into()
    })
}

fn cover_hopf_parity(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let d = 2 + (c.index % 11) as i64;
    let h = hopf_invariant(&sigma(&PLCircleMap::<Rational>::covering(d)));
    ensure(h == u8::from(d % 2 == 0), || {
        format!("h = {h} for the {d}-cover")
    })
}

fn elimination(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let res =
        eliminate_negative_arcs(&c.map, &c.arc, &UnfoldMode::Plain).map_err(|e| e.to_string())?;
    ensure(res.trace.strictly_decreasing(), || {
        "m does not strictly decrease".into()
    })?;
    ensure(res.trace.steps.iter().all(|s| s.identity_holds), || {
        "fiber identity fails on a step".into()
    })?;
    ensure(res.classification.m() == 0, || {
        format!("final m = {}", res.classification.m())
    })?;
    ensure(res.classification.p() as i64 == c.map.degree(), || {
        format!(
            "final p = {} for degree {}",
            res.classification.p(),
            c.map.degree()
        )
    })
}

fn balanced_paths(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let cls = classify_preimage(&c.map, &c.arc).map_err(|e| e.to_string())?;
    for i in cls.indices_of(ArcKind::Negative) {
        let p = find_balanced_path(&c.map, &cls, i).map_err(|e| format!("arc {i}: {e}"))?;
        ensure(p.closed() && p.one_sided(), || {
            format!("path from arc {i} is not closed and one-sided")
        })?;
        ensure(cls.components[p.end_arc].kind == ArcKind::Positive, || {
            format!("path from arc {i} ends on a non-positive arc")
        })?;
    }
    Ok(())
}

fn pair_degree(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let res =
        eliminate_negative_arcs(&c.map, &c.arc, &UnfoldMode::Plain).map_err(|e| e.to_string())?;
    let r = pair_degree_check(&c.map, &res.arc, &c.curve).map_err(|e| e.to_string())?;
    ensure(r.all_equal(), || {
        format!("{} unlocated pairs, rows {:?}", r.unlocated, r.rows)
    })
}

fn euler_resolution(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let vertices = 1 + (c.index % 12) as usize;
    let g = random_euler_graph(c.rng.gen(), vertices, (c.index % 2) as usize);
    for (k, comp) in g.components().iter().enumerate() {
        let r = eulerian_resolution(&g, k).map_err(|e| e.to_string())?;
        if let GraphComponent::Vertices(vs) = comp {
            let n = g.circuits_on(vs, &r.choices);
            ensure(n == 1, || {
                format!("component {k} resolves into {n} circuits")
            })?;
        }
    }
    Ok(())
}

fn surgery_symmetry(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let (a, b, n) = (
        c.rng.gen_range(1..20),
        c.rng.gen_range(1..20),
        c.rng.gen_range(0..30),
    );
    ensure(
        surgery_parity(a, b, n).ok() == surgery_parity(b, a, n).ok(),
        || format!("asymmetric at ({a}, {b}, {n})"),
    )
}

fn pick(c: &Case, groups: &[FiniteSubgroupS3]) -> usize {
    (c.index % groups.len() as u64) as usize
}

fn involution_parity(c: &mut Case, groups: &[FiniteSubgroupS3]) -> Check {
    let g = &groups[pick(c, groups)];
    let n = involution_count(g);
    ensure(n == usize::from(g.order().is_multiple_of(2)), || {
        format!("order {} with {n} involutions", g.order())
    })
}

fn realizable_matches_hopf(c: &mut Case, groups: &[FiniteSubgroupS3]) -> Check {
    let g = &groups[pick(c, groups)];
    ensure(cover_realizable(g) == (hopf_of_cover(g) == 0), || {
        format!("order {}", g.order())
    })
}

fn dcover_agrees(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let d = 2 + (c.index % 11) as u32;
    let r = dcover_consistency(d).map_err(|e| e.to_string())?;
    ensure(r.agree, || format!("d = {d}: {r:?}"))
}

fn nonrealizable_verdict(c: &mut Case, groups: &[FiniteSubgroupS3]) -> Check {
    let g = &groups[pick(c, groups)];
    ensure(
        nonrealizable_map_exists(Pi1::Finite(g)) == !cover_realizable(g),
        || format!("order {}", g.order()),
    )
}

fn sweep_certificate(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    embedding_certificate(&c.movie, &assign_disks(&c.movie), 10)
        .map(|_| ())
        .map_err(|e| e.to_string())
}

fn sweep_population(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let m = &c.movie;
    let bps = m.breakpoints();
    let pop = |k: usize| m.slice_population(&Rational::midpoint(&bps[k], &bps[k + 1])) as i64;
    ensure(pop(0) == m.initial().len() as i64, || {
        "initial population".into()
    })?;
    for (k, e) in m.events().iter().enumerate() {
        let (before, after) = (pop(k), pop(k + 1));
        ensure(after - before == e.event.count_change(), || {
            format!("event {k} ({}) changes {before} -> {after}", e.event.kind())
        })?;
        ensure(m.live_in_interval(k + 1).len() as i64 == after, || {
            format!("live labels after event {k}")
        })?;
    }
    Ok(())
}

fn placement_determinism(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    ensure(assign_disks(&c.movie) == assign_disks(&c.movie), || {
        "placements differ".into()
    })
}

fn slice_injectivity(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let placement = assign_disks(&c.movie);
    for iv in &placement.intervals {
        let t = Rational::midpoint(&iv.start, &iv.end);
        let disks: Vec<_> = iv.tracks.iter().map(|tr| tr.at(&t)).collect();
        for i in 0..disks.len() {
            for j in i + 1..disks.len() {
                ensure(disks[i].disjoint(&disks[j]), || {
                    format!("disks meet at {t}")
                })?;
            }
        }
    }
    Ok(())
}

fn report_determinism(c: &mut Case, _: &[FiniteSubgroupS3]) -> Check {
    let a = analyze::run(&c.map).result.to_string();
    let b = analyze::run(&c.map).result.to_string();
    ensure(a == b, || "analyze payload differs between runs".into())
}

fn catalog() -> Vec<FiniteSubgroupS3> {
    let mut families: Vec<Family> = (1..=12).map(Family::Cyclic).collect();
    families.extend((2..=6).map(Family::BinaryDihedral));
    families.extend([
        Family::BinaryTetrahedral,
        Family::BinaryOctahedral,
        Family::BinaryIcosahedral,
    ]);
    families
        .into_iter()
        .map(|f| build_group(f).expect("catalog group builds"))
        .collect()
}

struct Tally {
    passed: usize,
    failed: usize,
    first_failure: Option<Value>,
}

pub fn run(cases: u64, seed: u64) -> Outcome {
    let groups = catalog();
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut tallies: Vec<Tally> = PROPERTIES
        .iter()
        .map(|_| Tally {
            passed: 0,
            failed: 0,
            first_failure: None,
        })
        .collect();

    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    for index in 0..cases {
        let case_seed: u64 = master.gen();
        let mut case = match panic::catch_unwind(|| Case::new(index, case_seed)) {
            Ok(c) => c,
            Err(_) => {
                for t in &mut tallies {
                    t.failed += 1;
                    t.first_failure
                        .get_or_insert_with(|| json!({ "case": index, "seed": case_seed, "detail": "case generation panicked" }));
                }
                continue;
            }
        };
        for ((_, check), tally) in PROPERTIES.iter().zip(&mut tallies) {
            let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(&mut case, &groups)))
                .unwrap_or_else(|_| Err("panicked".into()));
            match outcome {
                Ok(()) => tally.passed += 1,
                Err(detail) => {
                    tally.failed += 1;
                    tally.first_failure.get_or_insert_with(
                        || json!({ "case": case.index, "seed": case.seed, "detail": detail }),
                    );
                }
            }
        }
    }
    panic::set_hook(hook);

    let all = tallies.iter().all(|t| t.failed == 0);
    let mut summary = vec![format!(
        "{} properties x {cases} cases, seed {seed}: {}",
        PROPERTIES.len(),
        if all {
            "all passed"
        } else {
            "violations found"
        }
    )];
    let mut rows = Vec::new();
    for ((name, _), t) in PROPERTIES.iter().zip(&tallies) {
        summary.push(format!(
            "{name}: {}/{} passed",
            t.passed,
            t.passed + t.failed
        ));
        rows.push(json!({
            "name": name,
            "passed": t.passed,
            "failed": t.failed,
            "first_failure": t.first_failure,
        }));
    }
    Outcome {
        status: Status::from_ok(all),
        result: json!({
            "cases": cases,
            "seed": seed,
            "properties": rows,
            "all_passed": all,
        }),
        summary,
    }
}

use doublept::sweeps::{assign_disks, embedding_certificate, random_movie, Event};
use doublept::{Movie, Rational, Scalar};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn placements_certify(seed in any::<u64>(), max_events in 1usize..=20) {
        let m: Movie = random_movie(seed, max_events);
        let p = assign_disks(&m);
        prop_assert_eq!(&p, &assign_disks(&m));
        let report = embedding_certificate(&m, &p, 10).unwrap();
        prop_assert_eq!(report.checked_times.len(), 10 * (m.events().len() + 1) + m.events().len());
    }

    #[test]
    fn population_bookkeeping(seed in any::<u64>(), max_events in 1usize..=20) {
        let m: Movie = random_movie(seed, max_events);
        let bps = m.breakpoints();
        let mid = |k: usize| Rational::midpoint(&bps[k], &bps[k + 1]);
        for (i, ev) in m.events().iter().enumerate() {
            let before = m.slice_population(&mid(i)) as i64;
            let after = m.slice_population(&mid(i + 1)) as i64;
            let expected = match ev.event {
                Event::Birth(_) | Event::Split { .. } => 1,
                Event::Death(_) | Event::Merge { .. } => -1,
                Event::Band { .. } | Event::Isolated(_) => 0,
            };
            prop_assert_eq!(after - before, expected);
            prop_assert_eq!(after - before, ev.event.count_change());
            // Placement tracks agree with the recomputed population.
            prop_assert_eq!(m.live_in_interval(i + 1).len() as i64, after);
        }
    }
}

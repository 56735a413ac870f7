//! Counting circles and surgeries through a movie.

use super::movie::{parse_movie, validate_movie, Event, MovieError, SweepMovie};
use crate::scalar::Scalar;
use crate::unfolding::{surgery_parity, SurgeryParity};
use crate::Rational;

/// Bundled movie: four circles at the start, fifteen surgeries along three
/// edges, twelve circles at the end.
pub const BUNDLED_MOVIE: &str = include_str!("../../data/tropic_to_polar.json");

/// Initial circles, surgeries and final circles of the bundled movie.
pub const EXPECTED_CENSUS: (usize, usize, usize) = (4, 15, 12);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub initial_circles: usize,
    pub surgeries: usize,
    pub final_circles: usize,
    /// Circle count after each event, recomputed by slicing.
    pub slice_counts: Vec<usize>,
    pub merges: usize,
    pub splits: usize,
    pub bands: usize,
    /// `None` when the surgery count cannot reach the final count.
    pub parity: Option<SurgeryParity>,
    /// Departures from [`EXPECTED_CENSUS`] and from its parity verdict.
    pub deviations: Vec<String>,
}

impl CensusReport {
    pub fn matches_expected(&self) -> bool {
        self.deviations.is_empty()
    }
}

pub fn census<T: Scalar>(movie: &SweepMovie<T>) -> CensusReport {
    let events = movie.events();
    let bps = movie.breakpoints();
    let slice_counts: Vec<usize> = (0..=events.len())
        .map(|k| movie.slice_population(&T::midpoint(&bps[k], &bps[k + 1])))
        .collect();
    let count = |f: fn(&Event<usize>) -> bool| events.iter().filter(|e| f(&e.event)).count();
    let merges = count(|e| matches!(e, Event::Merge { .. }));
    let splits = count(|e| matches!(e, Event::Split { .. }));
    let bands = count(|e| matches!(e, Event::Band { .. }));
    let surgeries = merges + splits + bands;
    let initial_circles = slice_counts[0];
    let final_circles = slice_counts[slice_counts.len() - 1];
    let parity = surgery_parity(
        initial_circles as u64,
        final_circles as u64,
        surgeries as u64,
    )
    .ok();

    let mut deviations = Vec::new();
    let (ei, es, ef) = EXPECTED_CENSUS;
    for (what, got, want) in [
        ("initial circles", initial_circles, ei),
        ("surgeries", surgeries, es),
        ("final circles", final_circles, ef),
    ] {
        if got != want {
            deviations.push(format!("count mismatch: {got} {what}, expected {want}"));
        }
    }
    match parity {
        Some(p) if p.orientable_only_feasible => deviations.push(
            "parity: orientable-only surgery is feasible, expected at least one non-orientable"
                .into(),
        ),
        None => deviations.push("parity: surgery count cannot reach the final circle count".into()),
        Some(_) => {}
    }
    if bands == 0 && parity.is_some_and(|p| p.min_nonorientable > 0) {
        deviations
            .push("script has no count-preserving surgery although parity demands one".into());
    }
    CensusReport {
        initial_circles,
        surgeries,
        final_circles,
        slice_counts,
        merges,
        splits,
        bands,
        parity,
        deviations,
    }
}

pub fn bundled_movie() -> SweepMovie<Rational> {
    load_movie(BUNDLED_MOVIE).expect("bundled movie is valid")
}

pub fn load_movie<T: Scalar>(json: &str) -> Result<SweepMovie<T>, MovieError> {
    validate_movie(&parse_movie(json)?)
}

pub fn bundled_census() -> CensusReport {
    census(&bundled_movie())
}

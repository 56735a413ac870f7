//! Seeded generator of generic circle maps.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::PLCircleMap;
use crate::scalar::Scalar;

const X_DENOM: i64 = 4096;
const Y_DENOM: i64 = 960;
const MAX_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RandomMapError {
    #[error("no map with at most {max_folds} folds and degree in 0..={max_degree}")]
    InfeasibleParameters { max_folds: usize, max_degree: i64 },
}

/// A generic map with an even number of folds at most `max_folds` and
/// degree in `0..=max_degree`, determined by `seed`.
pub fn random_map<T: Scalar>(
    seed: u64,
    max_folds: usize,
    max_degree: i64,
) -> Result<PLCircleMap<T>, RandomMapError> {
    let infeasible = RandomMapError::InfeasibleParameters {
        max_folds,
        max_degree,
    };
    if max_degree < 0 || (max_degree == 0 && max_folds < 2) {
        return Err(infeasible);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = rng.gen_range(0..=max_degree);
    if degree == 0 && max_folds < 2 {
        degree = 1;
    }
    let min_pairs = usize::from(degree == 0);
    let pairs = rng.gen_range(min_pairs..=max_folds / 2);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(f) = attempt(&mut rng, degree, 2 * pairs) {
            return Ok(f);
        }
    }
    unreachable!("random map generation kept colliding")
}

fn attempt<T: Scalar>(rng: &mut ChaCha8Rng, degree: i64, folds: usize) -> Option<PLCircleMap<T>> {
    let start = rng.gen_range(0..Y_DENOM);
    if folds == 0 {
        let f = PLCircleMap::new(vec![(T::zero(), T::ratio(start, Y_DENOM))], degree);
        return f.ok();
    }
    let mut xs: Vec<i64> = index::sample(rng, X_DENOM as usize, folds)
        .into_iter()
        .map(|i| i as i64)
        .collect();
    xs.sort_unstable();
    let half = folds / 2;
    let downs: Vec<i64> = (0..half).map(|_| rng.gen_range(1..=2 * Y_DENOM)).collect();
    let total_up = degree * Y_DENOM + downs.iter().sum::<i64>();
    let ups = split_positive(rng, total_up, half)?;
    let mut lift = start;
    let mut breakpoints = Vec::with_capacity(folds);
    for i in 0..folds {
        breakpoints.push((T::ratio(xs[i], X_DENOM), T::ratio(lift, Y_DENOM)));
        lift += if i % 2 == 0 {
            ups[i / 2]
        } else {
            -downs[i / 2]
        };
    }
    PLCircleMap::new(breakpoints, degree).ok()
}

/// `total` as an ordered sum of `parts` positive integers.
fn split_positive(rng: &mut ChaCha8Rng, total: i64, parts: usize) -> Option<Vec<i64>> {
    if total < parts as i64 {
        return None;
    }
    let mut cuts: Vec<i64> = index::sample(rng, (total - 1) as usize, parts - 1)
        .into_iter()
        .map(|i| i as i64 + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(total);
    let mut prev = 0;
    Some(
        cuts.into_iter()
            .map(|c| {
                let part = c - prev;
                prev = c;
                part
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn deterministic_in_seed() {
        let a: PLCircleMap<BigRational> = random_map(1, 6, 3).unwrap();
        let b: PLCircleMap<BigRational> = random_map(1, 6, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn infeasible_parameters() {
        assert_eq!(
            random_map::<BigRational>(2, 0, 0).unwrap_err(),
            RandomMapError::InfeasibleParameters {
                max_folds: 0,
                max_degree: 0
            }
        );
    }

    #[test]
    fn many_seeds_validate_and_respect_bounds() {
        for seed in 0..1000 {
            let f: PLCircleMap<BigRational> = random_map(seed, 8, 4).unwrap();
            assert!(f.fold_count() <= 8 && f.fold_count().is_multiple_of(2));
            assert!((0..=4).contains(&f.degree()));
            let again = PLCircleMap::new(f.breakpoints(), f.degree()).unwrap();
            assert_eq!(again, f);
        }
    }
}

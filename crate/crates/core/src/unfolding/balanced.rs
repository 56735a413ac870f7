//! Balanced paths between arcs of opposite sign.

use thiserror::Error;

use crate::circle_maps::{
    band_window, lift_extrema, walk_band, ArcKind, Endpoint, PLCircleMap, PreimageClassification,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("component {0} is not a positive or negative arc")]
    NotAnArc(usize),
    #[error("no arc of the opposite sign exists")]
    NoOppositeArc,
    #[error("no arc of the opposite sign is reachable in either direction")]
    NoBalancedPartner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// A domain path from one arc to an arc of opposite sign along which the
/// lift leaves and returns to the same level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPath<T> {
    pub start_arc: usize,
    pub end_arc: usize,
    pub direction: Direction,
    pub sheet: i64,
    /// The endpoint of the arc over which the path begins and ends.
    pub base: Endpoint,
    /// Lifted domain interval covered by the path, `from < to`.
    pub from: T,
    pub to: T,
    pub start_level: T,
    pub end_level: T,
    pub min_level: T,
    pub max_level: T,
    /// Other components of the preimage lying strictly inside the path.
    pub passed: Vec<usize>,
    pub passed_positive: usize,
    pub passed_negative: usize,
}

impl<T: Scalar> BalancedPath<T> {
    /// The lift returns to its starting level.
    pub fn closed(&self) -> bool {
        self.start_level == self.end_level
    }

    /// The lift stays on one side of its starting level.
    pub fn one_sided(&self) -> bool {
        match self.base {
            Endpoint::Hi => self.max_level == self.start_level,
            Endpoint::Lo => self.min_level == self.start_level,
        }
    }

    pub fn is_embedded(&self) -> bool {
        self.to.clone() - self.from.clone() < T::one()
    }
}

fn opposite(kind: ArcKind) -> ArcKind {
    match kind {
        ArcKind::Positive => ArcKind::Negative,
        ArcKind::Negative => ArcKind::Positive,
        other => other,
    }
}

/// Finds the first arc of opposite sign reachable from `start`.
///
/// An arc of the minority sign (negative when `deg f >= 0`) is followed
/// forwards, or backwards when the degree is negative; a majority arc tries
/// forwards first and then backwards.
pub fn find_balanced_path<T: Scalar>(
    f: &PLCircleMap<T>,
    cls: &PreimageClassification<T>,
    start: usize,
) -> Result<BalancedPath<T>, PathError> {
    let kind = cls
        .components
        .get(start)
        .map(|c| c.kind)
        .ok_or(PathError::NotAnArc(start))?;
    if !matches!(kind, ArcKind::Positive | ArcKind::Negative) {
        return Err(PathError::NotAnArc(start));
    }
    if cls.count(opposite(kind)) == 0 {
        return Err(PathError::NoOppositeArc);
    }
    let d = f.degree();
    let minority = if d >= 0 {
        ArcKind::Negative
    } else {
        ArcKind::Positive
    };
    let order: &[Direction] = if kind == minority {
        if d >= 0 {
            &[Direction::Forward]
        } else {
            &[Direction::Backward]
        }
    } else {
        &[Direction::Forward, Direction::Backward]
    };
    for &dir in order {
        if let Some(path) = balanced_path_towards(f, cls, start, dir) {
            return Ok(path);
        }
    }
    Err(PathError::NoBalancedPartner)
}

/// Walks from `start` in a fixed direction to the first arc of opposite
/// sign in the same sheet.
pub fn balanced_path_towards<T: Scalar>(
    f: &PLCircleMap<T>,
    cls: &PreimageClassification<T>,
    start: usize,
    direction: Direction,
) -> Option<BalancedPath<T>> {
    let arc = &cls.arc;
    let comp = &cls.components[start];
    let target = opposite(comp.kind);
    let shift = T::from_int(comp.sheet);
    let band_lo = arc.lo().clone() + shift.clone();
    let band_hi = arc.hi().clone() + shift;
    let periodic = f.degree() == 0;
    let forward = direction == Direction::Forward;
    let walk_from = if forward { &comp.end } else { &comp.start };
    let limit = if periodic {
        if forward {
            walk_from.clone() + T::one()
        } else {
            walk_from.clone() - T::one()
        }
    } else {
        let (lo, hi) = band_window(f, &band_lo, &band_hi)?;
        if forward {
            hi
        } else {
            lo
        }
    };
    let mut found: Option<(T, T)> = None;
    walk_band(f, &band_lo, &band_hi, walk_from, &limit, forward, |c| {
        let (entry, exit) = if forward {
            (c.entry, c.exit)
        } else {
            (c.exit, c.entry)
        };
        if ArcKind::from_ends(entry, exit) == target {
            found = Some(if forward {
                (c.t_in.clone(), c.t_out.clone())
            } else {
                (c.t_out.clone(), c.t_in.clone())
            });
            true
        } else {
            false
        }
    });
    let (p_start, p_end) = found?;
    let end_arc = cls.find(comp.sheet, &Scalar::midpoint(&p_start, &p_end), periodic)?;
    let (from, to) = if forward {
        (comp.start.clone(), p_end)
    } else {
        (p_start, comp.end.clone())
    };
    let (min_level, max_level) = lift_extrema(f, &from, &to);
    let (start_level, end_level) = if forward {
        (f.lift_evaluate(&from), f.lift_evaluate(&to))
    } else {
        (f.lift_evaluate(&to), f.lift_evaluate(&from))
    };
    let base = match (comp.kind, forward) {
        (ArcKind::Negative, true) | (ArcKind::Positive, false) => Endpoint::Hi,
        _ => Endpoint::Lo,
    };
    let mut passed = Vec::new();
    for (i, c) in cls.components.iter().enumerate() {
        if i == start || i == end_arc || c.kind == ArcKind::Circle {
            continue;
        }
        let j = (from.clone() - c.start.clone()).floor() + T::one();
        let s = c.start.clone() + j.clone();
        let e = c.end.clone() + j;
        if s > from && e < to {
            passed.push(i);
        }
    }
    let count = |k: ArcKind| {
        passed
            .iter()
            .filter(|&&i| cls.components[i].kind == k)
            .count()
    };
    Some(BalancedPath {
        start_arc: start,
        end_arc,
        direction,
        sheet: comp.sheet,
        base,
        passed_positive: count(ArcKind::Positive),
        passed_negative: count(ArcKind::Negative),
        passed,
        from,
        to,
        start_level,
        end_level,
        min_level,
        max_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_maps::{classify_preimage, Angle, TransverseArc};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn arc(a: Q, b: Q) -> TransverseArc<Q> {
        TransverseArc::new(Angle::new(a), Angle::new(b), 1).unwrap()
    }

    #[test]
    fn tent_map_negative_to_positive() {
        let f = PLCircleMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4))], 0).unwrap();
        let cls = classify_preimage(&f, &arc(q(1, 4), q(3, 8))).unwrap();
        let neg = cls.indices_of(ArcKind::Negative)[0];
        let path = find_balanced_path(&f, &cls, neg).unwrap();
        assert_eq!(cls.components[path.end_arc].kind, ArcKind::Positive);
        assert!(path.closed());
        assert!(path.one_sided());
        assert_eq!(path.start_level, q(3, 8));
        assert_eq!(path.min_level, q(0, 1));
        assert!(path.passed.is_empty());
    }

    #[test]
    fn skips_a_balanced_pair() {
        // Four monotone laps up, up, down, down across two lifts of J.
        let f = PLCircleMap::new(
            vec![
                (q(0, 1), q(0, 1)),
                (q(1, 4), q(17, 10)),
                (q(1, 2), q(13, 10)),
                (q(3, 4), q(21, 10)),
            ],
            0,
        )
        .unwrap();
        let j = arc(q(1, 5), q(2, 5));
        let cls = classify_preimage(&f, &j).unwrap();
        let kinds: Vec<ArcKind> = cls.components.iter().map(|c| c.kind).collect();
        assert_eq!(cls.p(), 2);
        assert_eq!(cls.m(), 2);
        let first_negative = kinds.iter().position(|&k| k == ArcKind::Negative).unwrap();
        let path = find_balanced_path(&f, &cls, first_negative).unwrap();
        assert!(path.closed() && path.one_sided());
        assert_eq!((path.passed_positive, path.passed_negative), (1, 1));
    }

    #[test]
    fn covers_have_no_opposite_arc() {
        let f: PLCircleMap<Q> = PLCircleMap::covering(3);
        let cls = classify_preimage(&f, &arc(q(1, 8), q(1, 4))).unwrap();
        assert_eq!(
            find_balanced_path(&f, &cls, 0).unwrap_err(),
            PathError::NoOppositeArc
        );
    }

    #[test]
    fn reflected_tent_from_either_sign() {
        let f = PLCircleMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4))], 0)
            .unwrap()
            .reflect_target();
        let cls = classify_preimage(&f, &arc(q(5, 8), q(3, 4))).unwrap();
        for i in 0..cls.components.len() {
            let path = find_balanced_path(&f, &cls, i).unwrap();
            assert!(path.closed());
            assert_ne!(cls.components[path.end_arc].kind, cls.components[i].kind);
        }
    }
}

//! Exact piecewise-linear maps of the circle `R/Z` to itself.
//!
//! A map is stored through its lift: breakpoints `(x_i, l_i)` with `x_i`
//! strictly increasing in `[0, 1)`, closed up by `x_m = x_0 + 1` and
//! `l_m = l_0 + d` where `d` is the degree. Between breakpoints the lift is
//! linear.

mod arcs;
mod random;

pub use arcs::{
    classify_preimage, ArcError, ArcKind, Endpoint, PreimageClassification, PreimageComponent,
    TransverseArc,
};
pub use random::{random_map, RandomMapError};

pub(crate) use arcs::{band_window, lift_extrema, walk_band};

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

/// A point of the circle, stored as its representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle<T>(T);

impl<T: Scalar> Angle<T> {
    pub fn new(value: T) -> Self {
        Angle(value.mod_one())
    }

    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn into_inner(self) -> T {
        self.0
    }
}

impl<T: Scalar> fmt::Display for Angle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Breakpoint<T> {
    pub x: T,
    pub lift: T,
}

/// One linear piece of the lift, in lifted domain coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment<T> {
    pub x0: T,
    pub x1: T,
    pub y0: T,
    pub y1: T,
}

impl<T: Scalar> Segment<T> {
    pub fn slope(&self) -> T {
        (self.y1.clone() - self.y0.clone()) / (self.x1.clone() - self.x0.clone())
    }

    pub fn increasing(&self) -> bool {
        self.y1 > self.y0
    }

    /// `+1` on increasing segments, `-1` on decreasing ones.
    pub fn sign(&self) -> i64 {
        if self.increasing() {
            1
        } else {
            -1
        }
    }

    pub fn min_value(&self) -> &T {
        std::cmp::min(&self.y0, &self.y1)
    }

    pub fn max_value(&self) -> &T {
        std::cmp::max(&self.y0, &self.y1)
    }

    pub fn value_at(&self, x: &T) -> T {
        self.y0.clone() + (x.clone() - self.x0.clone()) * self.slope()
    }

    /// The domain point where the segment takes the value `y`.
    pub fn preimage(&self, y: &T) -> T {
        self.x0.clone() + (y.clone() - self.y0.clone()) / self.slope()
    }

    /// The same segment moved `periods` turns along the domain.
    pub fn shifted(&self, periods: i64, degree: i64) -> Self {
        let dx = T::from_int(periods);
        let dy = T::from_int(periods * degree);
        Segment {
            x0: self.x0.clone() + dx.clone(),
            x1: self.x1.clone() + dx,
            y0: self.y0.clone() + dy.clone(),
            y1: self.y1.clone() + dy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("a circle map needs at least one breakpoint")]
    Empty,
    #[error("breakpoint {index} lies outside [0, 1)")]
    OutOfRange { index: usize },
    #[error("breakpoint abscissae are not strictly increasing at index {index}")]
    NonIncreasingDomain { index: usize },
    #[error("breakpoints {first} and {second} have equal values mod 1")]
    DuplicateVertexValue { first: usize, second: usize },
    #[error("segment {index} has zero slope")]
    ZeroSlopeSegment { index: usize },
}

/// A generic piecewise-linear map `S^1 -> S^1`.
///
/// Construction merges adjacent segments of equal monotonicity, so after
/// [`PLCircleMap::new`] every breakpoint is a fold, except for the single
/// breakpoint of a fold-free map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLCircleMap<T> {
    vertices: Vec<Breakpoint<T>>,
    degree: i64,
}

impl<T: Scalar> PLCircleMap<T> {
    pub fn new(breakpoints: Vec<(T, T)>, degree: i64) -> Result<Self, MapError> {
        if breakpoints.is_empty() {
            return Err(MapError::Empty);
        }
        for (index, (x, _)) in breakpoints.iter().enumerate() {
            if x.is_negative() || *x >= T::one() {
                return Err(MapError::OutOfRange { index });
            }
            if index > 0 && breakpoints[index - 1].0 >= *x {
                return Err(MapError::NonIncreasingDomain { index });
            }
        }
        for first in 0..breakpoints.len() {
            for second in first + 1..breakpoints.len() {
                if breakpoints[first].1.mod_one() == breakpoints[second].1.mod_one() {
                    return Err(MapError::DuplicateVertexValue { first, second });
                }
            }
        }
        let vertices: Vec<Breakpoint<T>> = breakpoints
            .into_iter()
            .map(|(x, lift)| Breakpoint { x, lift })
            .collect();
        let raw = PLCircleMap { vertices, degree };
        for index in 0..raw.segment_count() {
            let seg = raw.segment(index);
            if seg.y0 == seg.y1 {
                return Err(MapError::ZeroSlopeSegment { index });
            }
        }
        Ok(raw.normalized())
    }

    /// The `d`-fold cover `x -> d x`.
    pub fn covering(degree: i64) -> Self {
        assert!(degree != 0, "a covering has nonzero degree");
        PLCircleMap {
            vertices: vec![Breakpoint {
                x: T::zero(),
                lift: T::zero(),
            }],
            degree,
        }
    }

    pub fn identity() -> Self {
        Self::covering(1)
    }

    fn normalized(self) -> Self {
        let m = self.vertices.len();
        if m == 1 {
            return self;
        }
        let signs: Vec<i64> = (0..m).map(|i| self.segment(i).sign()).collect();
        let keep: Vec<usize> = (0..m)
            .filter(|&i| signs[(i + m - 1) % m] != signs[i])
            .collect();
        let vertices = if keep.is_empty() {
            vec![self.vertices[0].clone()]
        } else {
            keep.iter().map(|&i| self.vertices[i].clone()).collect()
        };
        PLCircleMap {
            vertices,
            degree: self.degree,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn vertices(&self) -> &[Breakpoint<T>] {
        &self.vertices
    }

    pub fn breakpoints(&self) -> Vec<(T, T)> {
        self.vertices
            .iter()
            .map(|v| (v.x.clone(), v.lift.clone()))
            .collect()
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len()
    }

    /// Segment `i` runs from breakpoint `i` to breakpoint `i + 1`, the last
    /// one wrapping to the first breakpoint shifted by `(1, degree)`.
    pub fn segment(&self, i: usize) -> Segment<T> {
        let m = self.vertices.len();
        let a = &self.vertices[i];
        let (x1, y1) = if i + 1 < m {
            let b = &self.vertices[i + 1];
            (b.x.clone(), b.lift.clone())
        } else {
            let b = &self.vertices[0];
            (
                b.x.clone() + T::one(),
                b.lift.clone() + T::from_int(self.degree),
            )
        };
        Segment {
            x0: a.x.clone(),
            x1,
            y0: a.lift.clone(),
            y1,
        }
    }

    pub fn segments(&self) -> Vec<Segment<T>> {
        (0..self.segment_count()).map(|i| self.segment(i)).collect()
    }

    /// Indices of the breakpoints where the lift changes monotonicity.
    pub fn fold_indices(&self) -> Vec<usize> {
        if self.vertices.len() == 1 {
            Vec::new()
        } else {
            (0..self.vertices.len()).collect()
        }
    }

    pub fn fold_count(&self) -> usize {
        self.fold_indices().len()
    }

    /// Critical values in `[0, 1)`, sorted.
    pub fn critical_values(&self) -> Vec<T> {
        let mut values: Vec<T> = self
            .fold_indices()
            .into_iter()
            .map(|i| self.vertices[i].lift.mod_one())
            .collect();
        values.sort();
        values
    }

    pub fn is_regular_value(&self, y: &T) -> bool {
        let y = y.mod_one();
        self.fold_indices()
            .into_iter()
            .all(|i| self.vertices[i].lift.mod_one() != y)
    }

    /// Largest lifted critical value strictly below `y`, if the map has folds.
    pub fn critical_value_below(&self, y: &T) -> Option<T> {
        self.critical_values()
            .into_iter()
            .map(|c| {
                let mut k = (y.clone() - c.clone()).floor();
                if c.clone() + k.clone() == *y {
                    k = k - T::one();
                }
                c + k
            })
            .max()
    }

    /// Smallest lifted critical value strictly above `y`, if the map has folds.
    pub fn critical_value_above(&self, y: &T) -> Option<T> {
        self.critical_values()
            .into_iter()
            .map(|c| {
                let k = (y.clone() - c.clone()).floor() + T::one();
                c + k
            })
            .min()
    }

    /// Splits a lifted domain point into `(segment, periods)` so that
    /// `x - periods` lies in `[x_seg, x_{seg+1})`.
    pub fn locate(&self, x: &T) -> (usize, i64) {
        let x0 = &self.vertices[0].x;
        let periods = (x.clone() - x0.clone()).floor_int();
        let local = x.clone() - T::from_int(periods);
        let seg = match self.vertices.iter().rposition(|v| v.x <= local) {
            Some(i) => i,
            None => self.vertices.len() - 1,
        };
        (seg, periods)
    }

    /// The continuous lift, satisfying `lift(x + 1) = lift(x) + degree`.
    pub fn lift_evaluate(&self, x: &T) -> T {
        let (seg, periods) = self.locate(x);
        self.segment(seg).shifted(periods, self.degree).value_at(x)
    }

    pub fn evaluate(&self, x: &Angle<T>) -> Angle<T> {
        Angle::new(self.lift_evaluate(x.value()))
    }

    /// Signed slope of the lift at a non-breakpoint domain point.
    pub fn local_sign(&self, x: &T) -> i64 {
        let (seg, _) = self.locate(x);
        self.segment(seg).sign()
    }

    /// All preimages of `y` in `[0, 1)` with the sign of the lift there,
    /// sorted by position. Breakpoints are attributed to the segment they
    /// start.
    pub fn fiber(&self, y: &T) -> Vec<(T, i64)> {
        let mut points = Vec::new();
        for i in 0..self.segment_count() {
            let seg = self.segment(i);
            let lo = seg.min_value().clone();
            let hi = seg.max_value().clone();
            let k_min = (lo.clone() - y.clone()).floor_int() - 1;
            let k_max = (hi.clone() - y.clone()).floor_int() + 1;
            for k in k_min..=k_max {
                let target = y.clone() + T::from_int(k);
                if target < lo || target > hi {
                    continue;
                }
                let x = seg.preimage(&target);
                if x == seg.x1 {
                    continue;
                }
                points.push((x.mod_one(), seg.sign()));
            }
        }
        points.sort();
        points.dedup();
        points
    }

    pub fn signed_fiber_count(&self, y: &T) -> i64 {
        self.fiber(y).iter().map(|(_, s)| s).sum()
    }

    /// Post-composition with the reflection `y -> -y` of the target.
    pub fn reflect_target(&self) -> Self {
        PLCircleMap {
            vertices: self
                .vertices
                .iter()
                .map(|v| Breakpoint {
                    x: v.x.clone(),
                    lift: -v.lift.clone(),
                })
                .collect(),
            degree: -self.degree,
        }
    }

    /// Minimum and maximum of the lift over one period.
    pub fn lift_range(&self) -> (T, T) {
        let segs = self.segments();
        let lo = segs.iter().map(|s| s.min_value().clone()).min().unwrap();
        let hi = segs.iter().map(|s| s.max_value().clone()).max().unwrap();
        (lo, hi)
    }
}

/// Degree of the map.
pub fn degree<T: Scalar>(f: &PLCircleMap<T>) -> i64 {
    f.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn tent() -> PLCircleMap<Q> {
        PLCircleMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4))], 0).unwrap()
    }

    #[test]
    fn two_cover_has_no_folds() {
        let f = PLCircleMap::new(vec![(q(0, 1), q(0, 1))], 2).unwrap();
        assert_eq!(f.fold_count(), 0);
        assert_eq!(f.degree(), 2);
        assert_eq!(f.evaluate(&Angle::new(q(1, 3))), Angle::new(q(2, 3)));
    }

    #[test]
    fn tent_map_evaluation() {
        let f = tent();
        assert_eq!(f.fold_count(), 2);
        assert_eq!(f.degree(), 0);
        assert_eq!(f.lift_evaluate(&q(1, 4)), q(3, 8));
        assert_eq!(f.lift_evaluate(&q(3, 4)), q(3, 8));
    }

    #[test]
    fn duplicate_vertex_value_is_rejected() {
        let err = PLCircleMap::new(
            vec![(q(0, 1), q(0, 1)), (q(1, 4), q(1, 2)), (q(1, 2), q(0, 1))],
            0,
        )
        .unwrap_err();
        assert_eq!(
            err,
            MapError::DuplicateVertexValue {
                first: 0,
                second: 2
            }
        );
    }

    #[test]
    fn other_validation_errors() {
        assert_eq!(
            PLCircleMap::<Q>::new(vec![(q(0, 1), q(0, 1))], 0).unwrap_err(),
            MapError::ZeroSlopeSegment { index: 0 }
        );
        assert_eq!(
            PLCircleMap::new(vec![(q(1, 2), q(0, 1)), (q(1, 4), q(1, 3))], 0).unwrap_err(),
            MapError::NonIncreasingDomain { index: 1 }
        );
        assert_eq!(
            PLCircleMap::new(vec![(q(1, 1), q(0, 1))], 1).unwrap_err(),
            MapError::OutOfRange { index: 0 }
        );
        assert_eq!(
            PLCircleMap::<Q>::new(vec![], 1).unwrap_err(),
            MapError::Empty
        );
    }

    #[test]
    fn same_sign_segments_are_merged() {
        // 0 -> 1/3 -> 2/3 -> 1 is monotone: only the first breakpoint survives.
        let f = PLCircleMap::new(
            vec![(q(0, 1), q(0, 1)), (q(1, 4), q(1, 3)), (q(1, 2), q(2, 3))],
            1,
        )
        .unwrap();
        assert_eq!(f.segment_count(), 1);
        // up, up, down, down: folds at the first and third breakpoints
        let g = PLCircleMap::new(
            vec![
                (q(0, 1), q(0, 1)),
                (q(1, 4), q(1, 5)),
                (q(1, 2), q(3, 5)),
                (q(3, 4), q(2, 5)),
            ],
            0,
        )
        .unwrap();
        assert_eq!(
            g.breakpoints(),
            vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 5))]
        );
        let again = PLCircleMap::new(g.breakpoints(), g.degree()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn lift_closure() {
        let f = tent();
        for x in [q(0, 1), q(1, 7), q(-5, 3)] {
            let step = f.lift_evaluate(&(x.clone() + Q::one())) - f.lift_evaluate(&x);
            assert_eq!(step, Q::from_int(f.degree()));
        }
        let g: PLCircleMap<Q> = PLCircleMap::covering(3);
        assert_eq!(
            g.lift_evaluate(&q(7, 6)) - g.lift_evaluate(&q(1, 6)),
            Q::from_int(3)
        );
    }

    #[test]
    fn fibers_of_tent() {
        let f = tent();
        assert_eq!(f.fiber(&q(1, 4)), vec![(q(1, 6), 1), (q(5, 6), -1)]);
        assert_eq!(f.signed_fiber_count(&q(1, 4)), 0);
        assert!(f.fiber(&q(9, 10)).is_empty());
        assert!(!f.is_regular_value(&q(3, 4)));
        assert!(f.is_regular_value(&q(1, 4)));
    }

    #[test]
    fn critical_neighbours() {
        let f = tent();
        assert_eq!(f.critical_value_below(&q(0, 1)), Some(q(-1, 4)));
        assert_eq!(f.critical_value_below(&q(1, 2)), Some(q(0, 1)));
        assert_eq!(f.critical_value_above(&q(3, 4)), Some(q(1, 1)));
    }

    #[test]
    fn reflection_negates_degree() {
        let f: PLCircleMap<Q> = PLCircleMap::covering(2);
        let g = f.reflect_target();
        assert_eq!(g.degree(), -2);
        assert_eq!(g.lift_evaluate(&q(1, 4)), q(-1, 2));
    }
}

//! Projection degrees of `Σ_f` counted by pairs of positive-arc endpoints.

use super::eliminate::UnfoldError;
use crate::circle_maps::{classify_preimage, ArcKind, PLCircleMap, TransverseArc};
use crate::double_points::DoublePointCurve;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDegreeRow {
    pub component: usize,
    pub p1_degree: i64,
    pub pair_count: usize,
}

impl PairDegreeRow {
    pub fn equal(&self) -> bool {
        self.p1_degree == self.pair_count as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDegreeReport<T> {
    /// Low endpoints of the positive arcs, sorted on the circle.
    pub points: Vec<T>,
    pub rows: Vec<PairDegreeRow>,
    /// Pairs `(x_1, x_i)` that could not be located on `Σ_f`.
    pub unlocated: usize,
}

impl<T> PairDegreeReport<T> {
    pub fn all_equal(&self) -> bool {
        self.unlocated == 0 && self.rows.iter().all(PairDegreeRow::equal)
    }
}

/// Compares each component's first projection degree with the number of
/// pairs `(x_1, x_i)` it contains.
pub fn pair_degree_check<T: Scalar>(
    f: &PLCircleMap<T>,
    arc: &TransverseArc<T>,
    curve: &DoublePointCurve<T>,
) -> Result<PairDegreeReport<T>, UnfoldError> {
    let d = f.degree();
    if d < 0 {
        return Err(UnfoldError::NegativeDegree(d));
    }
    let cls = classify_preimage(f, arc)?;
    if cls.m() != 0 || cls.p() as i64 != d {
        return Err(UnfoldError::PreconditionUnmet(format!(
            "expected {d} positive and no negative arcs, found {} and {}",
            cls.p(),
            cls.m()
        )));
    }
    let mut points: Vec<T> = cls
        .components
        .iter()
        .filter(|c| c.kind == ArcKind::Positive)
        .map(|c| c.start.mod_one())
        .collect();
    points.sort();
    let mut counts = vec![0usize; curve.components().len()];
    let mut unlocated = 0;
    for xi in points.iter().skip(1) {
        match curve.component_containing(&points[0], xi) {
            Some(c) => counts[c] += 1,
            None => unlocated += 1,
        }
    }
    let rows = curve
        .components()
        .iter()
        .enumerate()
        .map(|(c, comp)| PairDegreeRow {
            component: c,
            p1_degree: comp.p1_degree,
            pair_count: counts[c],
        })
        .collect();
    Ok(PairDegreeReport {
        points,
        rows,
        unlocated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_maps::Angle;
    use crate::double_points::sigma;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    #[test]
    fn covers_score_one_per_component() {
        for d in 2..=5 {
            let f: PLCircleMap<Q> = PLCircleMap::covering(d);
            let j = TransverseArc::new(Angle::new(q(1, 7)), Angle::new(q(1, 5)), 1).unwrap();
            let r = pair_degree_check(&f, &j, &sigma(&f)).unwrap();
            assert_eq!(r.points.len() as i64, d);
            assert!(r.all_equal());
            assert!(r.rows.iter().all(|row| row.pair_count == 1));
        }
    }

    #[test]
    fn unfolded_arc_required() {
        let f = PLCircleMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4))], 0).unwrap();
        let j = TransverseArc::new(Angle::new(q(1, 4)), Angle::new(q(3, 8)), 1).unwrap();
        assert!(matches!(
            pair_degree_check(&f, &j, &sigma(&f)),
            Err(UnfoldError::PreconditionUnmet(_))
        ));
    }
}

//! Growing a transverse arc until its preimage has no negative arcs.

use thiserror::Error;

use super::balanced::{balanced_path_towards, BalancedPath, Direction};
use crate::circle_maps::{
    classify_preimage, ArcError, ArcKind, Endpoint, PLCircleMap, PreimageClassification,
    TransverseArc,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnfoldError {
    #[error("the map has negative degree {0}; reflect the target first")]
    NegativeDegree(i64),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("the value {0} is critical or outside the starting arc")]
    BadRegularValue(String),
    #[error("no balanced partner for negative arc {0}")]
    NoPartner(usize),
    #[error("arc extension did not lower the number of negative arcs ({before} -> {after})")]
    NoProgress { before: usize, after: usize },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UnfoldMode<T> {
    /// Move the low end only.
    Plain,
    /// Move only the end opposite to `keep`, so the starting arc minus the
    /// moving end stays an open subset.
    OpenSubset { keep: Endpoint },
    /// Produce an arc through `z` on which every component meeting the
    /// fiber over `z` is a positive arc or a circle.
    RegularValue(T),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Plain,
    Upper,
    Lower,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Plain => "plain",
            Phase::Upper => "upper",
            Phase::Lower => "lower",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldStep<T> {
    pub phase: Phase,
    pub arc: TransverseArc<T>,
    pub m: usize,
    pub p: usize,
    /// `2m + deg f` equals the summed absolute signed fiber counts.
    pub identity_holds: bool,
    /// The path used to build the next arc of the phase.
    pub path: Option<BalancedPath<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnfoldTrace<T> {
    pub steps: Vec<UnfoldStep<T>>,
}

impl<T: Scalar> UnfoldTrace<T> {
    /// Within every phase the m-values strictly decrease.
    pub fn strictly_decreasing(&self) -> bool {
        self.steps
            .windows(2)
            .all(|w| w[0].phase != w[1].phase || w[1].m < w[0].m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldResult<T> {
    pub arc: TransverseArc<T>,
    pub classification: PreimageClassification<T>,
    pub trace: UnfoldTrace<T>,
    /// Lifted value of `z` in regular-value mode, with the verdict that
    /// every component over it is positive or a circle.
    pub regular_value: Option<(T, bool)>,
}

/// A regular value inside the open arc `(lo, hi)`.
pub fn interior_regular_value<T: Scalar>(f: &PLCircleMap<T>, arc: &TransverseArc<T>) -> T {
    let lo = arc.lo();
    let cap = match f.critical_value_above(lo) {
        Some(c) if c < *arc.hi() => c,
        _ => arc.hi().clone(),
    };
    T::midpoint(lo, &cap)
}

/// Signed count of the points over the lifted value `z` in each component.
pub fn signed_fiber_sums<T: Scalar>(
    f: &PLCircleMap<T>,
    cls: &PreimageClassification<T>,
    z: &T,
) -> Vec<i64> {
    let mut sums = vec![0; cls.components.len()];
    for (x, sign) in f.fiber(z) {
        for (i, c) in cls.components.iter().enumerate() {
            let level = z.clone() + T::from_int(c.sheet);
            if c.kind == ArcKind::Circle {
                if f.lift_evaluate(&x) == level {
                    sums[i] += sign;
                }
                continue;
            }
            let mut xl = x.clone() + (c.start.clone() - x.clone()).ceil();
            while xl <= c.end {
                if xl >= c.start && f.lift_evaluate(&xl) == level {
                    sums[i] += sign;
                }
                xl = xl + T::one();
            }
        }
    }
    sums
}

fn identity_holds<T: Scalar>(f: &PLCircleMap<T>, cls: &PreimageClassification<T>) -> bool {
    let z = interior_regular_value(f, &cls.arc);
    let total: i64 = signed_fiber_sums(f, cls, &z).iter().map(|s| s.abs()).sum();
    2 * cls.m() as i64 + f.degree() == total
}

fn step<T: Scalar>(
    f: &PLCircleMap<T>,
    phase: Phase,
    cls: &PreimageClassification<T>,
) -> UnfoldStep<T> {
    UnfoldStep {
        phase,
        arc: cls.arc.clone(),
        m: cls.m(),
        p: cls.p(),
        identity_holds: identity_holds(f, cls),
        path: None,
    }
}

/// Runs one phase, moving only the end opposite to `keep`.
fn run_phase<T: Scalar>(
    f: &PLCircleMap<T>,
    start: TransverseArc<T>,
    keep: Endpoint,
    phase: Phase,
    trace: &mut UnfoldTrace<T>,
) -> Result<PreimageClassification<T>, UnfoldError> {
    let mut cls = classify_preimage(f, &start)?;
    trace.steps.push(step(f, phase, &cls));
    while cls.m() > 0 {
        let negative = cls.indices_of(ArcKind::Negative)[0];
        let direction = match keep {
            Endpoint::Hi => Direction::Forward,
            Endpoint::Lo => Direction::Backward,
        };
        let path = balanced_path_towards(f, &cls, negative, direction)
            .ok_or(UnfoldError::NoPartner(negative))?;
        let offset = T::from_int(path.sheet);
        let arc = &cls.arc;
        let next = match keep {
            Endpoint::Hi => {
                let low = path.min_level.clone() - offset;
                let below = f
                    .critical_value_below(&low)
                    .expect("a map with negative arcs has folds");
                arc.with_bounds(T::midpoint(&below, &low), arc.hi().clone())
            }
            Endpoint::Lo => {
                let high = path.max_level.clone() - offset;
                let above = f
                    .critical_value_above(&high)
                    .expect("a map with negative arcs has folds");
                arc.with_bounds(arc.lo().clone(), T::midpoint(&high, &above))
            }
        };
        trace.steps.last_mut().unwrap().path = Some(path);
        let next_cls = classify_preimage(f, &next)?;
        if next_cls.m() >= cls.m() {
            return Err(UnfoldError::NoProgress {
                before: cls.m(),
                after: next_cls.m(),
            });
        }
        cls = next_cls;
        trace.steps.push(step(f, phase, &cls));
    }
    Ok(cls)
}

/// Grows `j0` to an arc whose preimage has no negative arcs.
pub fn eliminate_negative_arcs<T: Scalar>(
    f: &PLCircleMap<T>,
    j0: &TransverseArc<T>,
    mode: &UnfoldMode<T>,
) -> Result<UnfoldResult<T>, UnfoldError> {
    if f.degree() < 0 {
        return Err(UnfoldError::NegativeDegree(f.degree()));
    }
    let mut trace = UnfoldTrace { steps: Vec::new() };
    match mode {
        UnfoldMode::Plain | UnfoldMode::OpenSubset { keep: Endpoint::Hi } => {
            let cls = run_phase(f, j0.clone(), Endpoint::Hi, Phase::Plain, &mut trace)?;
            Ok(UnfoldResult {
                arc: cls.arc.clone(),
                classification: cls,
                trace,
                regular_value: None,
            })
        }
        UnfoldMode::OpenSubset { keep: Endpoint::Lo } => {
            let cls = run_phase(f, j0.clone(), Endpoint::Lo, Phase::Plain, &mut trace)?;
            Ok(UnfoldResult {
                arc: cls.arc.clone(),
                classification: cls,
                trace,
                regular_value: None,
            })
        }
        UnfoldMode::RegularValue(z) => {
            let z_lift = j0.lo().clone() + (z.clone() - j0.lo().clone()).mod_one();
            if !f.is_regular_value(z) || z_lift == *j0.lo() || z_lift >= *j0.hi() {
                return Err(UnfoldError::BadRegularValue(z.to_string()));
            }
            let whole = run_phase(f, j0.clone(), Endpoint::Hi, Phase::Plain, &mut trace)?;
            let (a, b) = (whole.arc.lo().clone(), whole.arc.hi().clone());
            let upper = TransverseArc::from_lifted(z_lift.clone(), b)?;
            let upper = run_phase(f, upper, Endpoint::Lo, Phase::Upper, &mut trace)?;
            let lower = TransverseArc::from_lifted(a, z_lift.clone())?;
            let lower = run_phase(f, lower, Endpoint::Hi, Phase::Lower, &mut trace)?;
            let arc = j0.with_bounds(lower.arc.lo().clone(), upper.arc.hi().clone());
            let cls = classify_preimage(f, &arc)?;
            let ok = components_meeting_z_ok(f, &cls, &z_lift);
            Ok(UnfoldResult {
                arc,
                classification: cls,
                trace,
                regular_value: Some((z_lift, ok)),
            })
        }
    }
}

/// Every component containing a point over `z` is a positive arc or a circle.
fn components_meeting_z_ok<T: Scalar>(
    f: &PLCircleMap<T>,
    cls: &PreimageClassification<T>,
    z: &T,
) -> bool {
    for (i, c) in cls.components.iter().enumerate() {
        let meets = meets_level(f, cls, i, z);
        if meets && !matches!(c.kind, ArcKind::Positive | ArcKind::Circle) {
            return false;
        }
    }
    true
}

fn meets_level<T: Scalar>(
    f: &PLCircleMap<T>,
    cls: &PreimageClassification<T>,
    i: usize,
    z: &T,
) -> bool {
    let c = &cls.components[i];
    let level = z.clone() + T::from_int(c.sheet);
    f.fiber(z).into_iter().any(|(x, _)| {
        if c.kind == ArcKind::Circle {
            return f.lift_evaluate(&x) == level;
        }
        let mut xl = x.clone() + (c.start.clone() - x).ceil();
        while xl <= c.end {
            if xl >= c.start && f.lift_evaluate(&xl) == level {
                return true;
            }
            xl = xl + T::one();
        }
        false
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_maps::Angle;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn arc(a: Q, b: Q) -> TransverseArc<Q> {
        TransverseArc::new(Angle::new(a), Angle::new(b), 1).unwrap()
    }

    fn tent() -> PLCircleMap<Q> {
        PLCircleMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4))], 0).unwrap()
    }

    #[test]
    fn covers_need_no_work() {
        let f: PLCircleMap<Q> = PLCircleMap::covering(3);
        let j = arc(q(1, 8), q(1, 4));
        let r = eliminate_negative_arcs(&f, &j, &UnfoldMode::Plain).unwrap();
        assert_eq!(r.arc, j);
        assert_eq!(r.trace.steps.len(), 1);
        assert_eq!(r.trace.steps[0].m, 0);
    }

    #[test]
    fn tent_unfolds_to_nothing_signed() {
        let r =
            eliminate_negative_arcs(&tent(), &arc(q(1, 4), q(3, 8)), &UnfoldMode::Plain).unwrap();
        assert_eq!(r.classification.m(), 0);
        assert_eq!(r.classification.p(), 0);
        assert!(r.trace.strictly_decreasing());
        assert_eq!(r.trace.steps.first().unwrap().m, 1);
        assert!(r.trace.steps.iter().all(|s| s.identity_holds));
        assert_eq!(r.arc.hi(), &q(3, 8));
        assert!(r.arc.lo() < &q(0, 1));
    }

    #[test]
    fn open_subset_keeps_low_end() {
        let j = arc(q(1, 4), q(3, 8));
        let r =
            eliminate_negative_arcs(&tent(), &j, &UnfoldMode::OpenSubset { keep: Endpoint::Lo })
                .unwrap();
        assert_eq!(r.arc.lo(), j.lo());
        assert_eq!(r.classification.m(), 0);
    }

    #[test]
    fn negative_degree_is_refused() {
        let f: PLCircleMap<Q> = PLCircleMap::covering(-2);
        assert_eq!(
            eliminate_negative_arcs(&f, &arc(q(1, 8), q(1, 4)), &UnfoldMode::Plain).unwrap_err(),
            UnfoldError::NegativeDegree(-2)
        );
    }

    #[test]
    fn degree_two_four_folds() {
        let f = PLCircleMap::new(
            vec![
                (q(0, 1), q(0, 1)),
                (q(1, 4), q(7, 5)),
                (q(1, 2), q(3, 5)),
                (q(3, 4), q(27, 10)),
            ],
            2,
        )
        .unwrap();
        let j = arc(q(9, 10), q(19, 20));
        let r = eliminate_negative_arcs(&f, &j, &UnfoldMode::Plain).unwrap();
        assert_eq!(r.classification.m(), 0);
        assert_eq!(r.classification.p(), 2);
        let z = q(37, 40);
        let r = eliminate_negative_arcs(&f, &j, &UnfoldMode::RegularValue(z)).unwrap();
        assert!(r.regular_value.unwrap().1);
    }
}

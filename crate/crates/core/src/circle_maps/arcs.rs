//! Transverse arcs and the components of their preimages.

use std::fmt;

use thiserror::Error;

use super::{Angle, PLCircleMap, Segment};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("arc endpoints coincide")]
    Degenerate,
    #[error("arc orientation must be +1 or -1, got {0}")]
    BadOrientation(i64),
    #[error("arc endpoint {value} is a critical value")]
    EndpointNotRegular { value: String },
}

/// Which end of an arc, in the increasing direction of the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Lo,
    Hi,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::Lo => "lo",
            Endpoint::Hi => "hi",
        })
    }
}

/// An arc `[lo, hi]` of the target, stored through a lift.
///
/// Arcs of length less than one are embedded. Longer arcs are immersed and
/// wrap around the target; preimages are then taken in the fiber product
/// sense, one sheet per lift of the arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransverseArc<T> {
    lo: T,
    hi: T,
    orientation: i64,
}

impl<T: Scalar> TransverseArc<T> {
    /// The arc traversed from `start` to `end`, counterclockwise when
    /// `orientation` is `+1` and clockwise when it is `-1`.
    pub fn new(start: Angle<T>, end: Angle<T>, orientation: i64) -> Result<Self, ArcError> {
        if start == end {
            return Err(ArcError::Degenerate);
        }
        let (a, b) = (start.into_inner(), end.into_inner());
        match orientation {
            1 => Ok(TransverseArc {
                hi: a.clone() + (b - a.clone()).mod_one(),
                lo: a,
                orientation,
            }),
            -1 => Ok(TransverseArc {
                hi: b.clone() + (a - b.clone()).mod_one(),
                lo: b,
                orientation,
            }),
            other => Err(ArcError::BadOrientation(other)),
        }
    }

    /// The counterclockwise arc between two lifted values, `lo < hi`.
    pub fn from_lifted(lo: T, hi: T) -> Result<Self, ArcError> {
        if hi <= lo {
            return Err(ArcError::Degenerate);
        }
        Ok(TransverseArc {
            lo,
            hi,
            orientation: 1,
        })
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn orientation(&self) -> i64 {
        self.orientation
    }

    pub fn length(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn is_embedded(&self) -> bool {
        self.length() < T::one()
    }

    pub fn start(&self) -> Angle<T> {
        Angle::new(self.endpoint_value(self.start_endpoint()).clone())
    }

    pub fn end(&self) -> Angle<T> {
        Angle::new(self.endpoint_value(self.end_endpoint()).clone())
    }

    pub fn start_endpoint(&self) -> Endpoint {
        if self.orientation > 0 {
            Endpoint::Lo
        } else {
            Endpoint::Hi
        }
    }

    pub fn end_endpoint(&self) -> Endpoint {
        match self.start_endpoint() {
            Endpoint::Lo => Endpoint::Hi,
            Endpoint::Hi => Endpoint::Lo,
        }
    }

    pub fn endpoint_value(&self, e: Endpoint) -> &T {
        match e {
            Endpoint::Lo => &self.lo,
            Endpoint::Hi => &self.hi,
        }
    }

    /// Whether the point `y` of the target lies in the open arc.
    pub fn contains_interior(&self, y: &T) -> bool {
        if !self.is_embedded() {
            return true;
        }
        let shifted = self.lo.clone() + (y.clone() - self.lo.clone()).mod_one();
        shifted > self.lo && shifted < self.hi
    }

    /// The same arc with the ends moved to `lo` and `hi`, keeping orientation.
    pub fn with_bounds(&self, lo: T, hi: T) -> Self {
        assert!(lo < hi);
        TransverseArc {
            lo,
            hi,
            orientation: self.orientation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcKind {
    Positive,
    Negative,
    Neutral,
    Circle,
}

impl ArcKind {
    pub fn from_ends(entry: Endpoint, exit: Endpoint) -> Self {
        match (entry, exit) {
            (Endpoint::Lo, Endpoint::Hi) => ArcKind::Positive,
            (Endpoint::Hi, Endpoint::Lo) => ArcKind::Negative,
            _ => ArcKind::Neutral,
        }
    }

    /// Degree of the component onto the arc rel boundary.
    pub fn degree(self) -> i64 {
        match self {
            ArcKind::Positive => 1,
            ArcKind::Negative => -1,
            ArcKind::Neutral | ArcKind::Circle => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ArcKind::Positive => "positive",
            ArcKind::Negative => "negative",
            ArcKind::Neutral => "neutral",
            ArcKind::Circle => "circle",
        }
    }
}

/// One component of the preimage of an arc.
///
/// `start..end` is an interval of the lifted domain on which the lift stays
/// in the band `[lo + sheet, hi + sheet]`. For circles the interval is a
/// full period and `entry`, `exit` are absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreimageComponent<T> {
    pub kind: ArcKind,
    pub sheet: i64,
    pub start: T,
    pub end: T,
    pub entry: Option<Endpoint>,
    pub exit: Option<Endpoint>,
}

impl<T: Scalar> PreimageComponent<T> {
    pub fn start_angle(&self) -> T {
        self.start.mod_one()
    }

    /// Whether the circle point `x` lies in the component.
    pub fn contains_point(&self, x: &T) -> bool {
        if self.kind == ArcKind::Circle {
            return true;
        }
        let shifted = self.start.clone() + (x.clone() - self.start.clone()).mod_one();
        shifted <= self.end
    }

    /// Whether the lifted domain point `x` lies in the component's interval.
    pub fn contains_lifted(&self, x: &T) -> bool {
        *x >= self.start && *x <= self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageClassification<T> {
    pub arc: TransverseArc<T>,
    /// Sorted by start point on the circle, then by sheet.
    pub components: Vec<PreimageComponent<T>>,
}

impl<T: Scalar> PreimageClassification<T> {
    pub fn count(&self, kind: ArcKind) -> usize {
        self.components.iter().filter(|c| c.kind == kind).count()
    }

    /// Number of negative arcs.
    pub fn m(&self) -> usize {
        self.count(ArcKind::Negative)
    }

    /// Number of positive arcs.
    pub fn p(&self) -> usize {
        self.count(ArcKind::Positive)
    }

    pub fn indices_of(&self, kind: ArcKind) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| self.components[i].kind == kind)
            .collect()
    }

    /// Index of the component with this sheet containing the lifted point.
    /// With `periodic` set, as for degree zero, the point is taken modulo 1.
    pub fn find(&self, sheet: i64, x: &T, periodic: bool) -> Option<usize> {
        self.components.iter().position(|c| {
            if c.sheet != sheet || c.kind == ArcKind::Circle {
                return false;
            }
            if periodic {
                let shifted = c.start.clone() + (x.clone() - c.start.clone()).mod_one();
                shifted <= c.end
            } else {
                c.contains_lifted(x)
            }
        })
    }
}

/// Classifies every component of `f^{-1}(J)`.
pub fn classify_preimage<T: Scalar>(
    f: &PLCircleMap<T>,
    arc: &TransverseArc<T>,
) -> Result<PreimageClassification<T>, ArcError> {
    for value in [arc.lo(), arc.hi()] {
        if !f.is_regular_value(value) {
            return Err(ArcError::EndpointNotRegular {
                value: value.to_string(),
            });
        }
    }
    let d = f.degree();
    let (mn, mx) = f.lift_range();
    let mut components = Vec::new();
    let sheets: Vec<i64> = if d == 0 {
        let first = (mn.clone() - arc.hi().clone()).floor_int();
        let last = (mx.clone() - arc.lo().clone()).floor_int() + 1;
        (first..=last).collect()
    } else {
        (0..d.abs()).collect()
    };
    for n in sheets {
        let shift = T::from_int(n);
        let band_lo = arc.lo().clone() + shift.clone();
        let band_hi = arc.hi().clone() + shift;
        if d == 0 && mn > band_lo && mx < band_hi {
            let x0 = f.vertices()[0].x.clone();
            components.push(PreimageComponent {
                kind: ArcKind::Circle,
                sheet: n,
                end: x0.clone() + T::one(),
                start: x0,
                entry: None,
                exit: None,
            });
            continue;
        }
        let Some((from, to)) = band_window(f, &band_lo, &band_hi) else {
            continue;
        };
        walk_band(f, &band_lo, &band_hi, &from, &to, true, |c| {
            components.push(PreimageComponent {
                kind: ArcKind::from_ends(c.entry, c.exit),
                sheet: n,
                start: c.t_in.clone(),
                end: c.t_out.clone(),
                entry: Some(c.entry),
                exit: Some(c.exit),
            });
            false
        });
    }
    components.sort_by_key(|c| (c.start_angle(), c.sheet));
    Ok(PreimageClassification {
        arc: arc.clone(),
        components,
    })
}

/// A lifted domain window `[from, to]` outside of which the lift never
/// meets the band, with both ends outside the band. `None` when the band
/// is never met.
pub(crate) fn band_window<T: Scalar>(
    f: &PLCircleMap<T>,
    band_lo: &T,
    band_hi: &T,
) -> Option<(T, T)> {
    let d = f.degree();
    let (mn, mx) = f.lift_range();
    let x0 = f.vertices()[0].x.clone();
    if d == 0 {
        if mx < *band_lo || mn > *band_hi {
            return None;
        }
        let outside = f
            .vertices()
            .iter()
            .find(|v| v.lift < *band_lo || v.lift > *band_hi)?;
        return Some((outside.x.clone(), outside.x.clone() + T::one()));
    }
    let dd = T::from_int(d);
    let (p_from, p_to) = if d > 0 {
        (
            ((band_lo.clone() - mx) / dd.clone()).floor_int() - 1,
            ((band_hi.clone() - mn) / dd).floor_int() + 1,
        )
    } else {
        (
            ((band_hi.clone() - mn) / dd.clone()).floor_int() - 1,
            ((band_lo.clone() - mx) / dd).floor_int() + 1,
        )
    };
    Some((x0.clone() + T::from_int(p_from), x0 + T::from_int(p_to + 1)))
}

/// A pass of the lift through a band, in walking order.
#[derive(Clone, Debug)]
pub(crate) struct Crossing<T> {
    pub t_in: T,
    pub t_out: T,
    pub entry: Endpoint,
    pub exit: Endpoint,
}

fn segment_at<T: Scalar>(f: &PLCircleMap<T>, seg: usize, period: i64) -> Segment<T> {
    f.segment(seg).shifted(period, f.degree())
}

/// Walks the lifted domain from `from` (exclusive) towards `to`, reporting
/// each completed pass through the band `[band_lo, band_hi]`. The walk
/// starts outside the band. `visit` returns `true` to stop early.
pub(crate) fn walk_band<T: Scalar>(
    f: &PLCircleMap<T>,
    band_lo: &T,
    band_hi: &T,
    from: &T,
    to: &T,
    forward: bool,
    mut visit: impl FnMut(&Crossing<T>) -> bool,
) {
    let m = f.segment_count();
    let (mut seg, mut period) = f.locate(from);
    let mut inside: Option<(T, Endpoint)> = None;
    loop {
        let s = segment_at(f, seg, period);
        let past_end = if forward { s.x0 > *to } else { s.x1 <= *to };
        if past_end {
            return;
        }
        let mut events: Vec<(T, Endpoint)> = Vec::with_capacity(2);
        for (level, which) in [(band_lo, Endpoint::Lo), (band_hi, Endpoint::Hi)] {
            if level < s.min_value() || level > s.max_value() {
                continue;
            }
            let x = s.preimage(level);
            if x == s.x1 {
                continue;
            }
            let in_range = if forward {
                x > *from && x <= *to
            } else {
                x < *from && x >= *to
            };
            if in_range {
                events.push((x, which));
            }
        }
        events.sort_by(|a, b| {
            if forward {
                a.0.cmp(&b.0)
            } else {
                b.0.cmp(&a.0)
            }
        });
        for (x, which) in events {
            match inside.take() {
                None => inside = Some((x, which)),
                Some((t_in, entry)) => {
                    let crossing = Crossing {
                        t_in,
                        t_out: x,
                        entry,
                        exit: which,
                    };
                    if visit(&crossing) {
                        return;
                    }
                }
            }
        }
        if forward {
            seg += 1;
            if seg == m {
                seg = 0;
                period += 1;
            }
        } else if seg == 0 {
            seg = m - 1;
            period -= 1;
        } else {
            seg -= 1;
        }
    }
}

/// Minimum and maximum of the lift over the lifted interval `[a, b]`.
pub(crate) fn lift_extrema<T: Scalar>(f: &PLCircleMap<T>, a: &T, b: &T) -> (T, T) {
    let mut lo = f.lift_evaluate(a);
    let mut hi = lo.clone();
    let end = f.lift_evaluate(b);
    if end < lo {
        lo = end.clone();
    }
    if end > hi {
        hi = end;
    }
    let (mut seg, mut period) = f.locate(a);
    let m = f.segment_count();
    loop {
        seg += 1;
        if seg == m {
            seg = 0;
            period += 1;
        }
        let s = segment_at(f, seg, period);
        if s.x0 >= *b {
            break;
        }
        if s.y0 < lo {
            lo = s.y0.clone();
        }
        if s.y0 > hi {
            hi = s.y0.clone();
        }
    }
    (lo, hi)
}

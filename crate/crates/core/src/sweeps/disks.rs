//! Disjoint disks for every circle of a movie, moving piecewise-linearly.
//!
//! Each label owns a home slot at `(slot, 0)` with radius `2/5`. Circles
//! taking part in a merge or split travel through the lane `y = 2`: up in
//! their own column, then along the lane. The first half of every interval
//! is reserved for the participants of the event that opens it, the second
//! half for the participants of the event that closes it, so at most one
//! group moves at a time.

use std::collections::HashMap;
use std::fmt::{Debug, Display};

use thiserror::Error;

use super::movie::{Event, SweepMovie};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Disk<T> {
    pub center: (T, T),
    pub radius: T,
}

impl<T: Scalar> Disk<T> {
    fn dist2(&self, other: &Disk<T>) -> T {
        let dx = self.center.0.clone() - other.center.0.clone();
        let dy = self.center.1.clone() - other.center.1.clone();
        dx.clone() * dx + dy.clone() * dy
    }

    /// Closed disks are disjoint.
    pub fn disjoint(&self, other: &Disk<T>) -> bool {
        let r = self.radius.clone() + other.radius.clone();
        self.dist2(other) > r.clone() * r
    }

    /// Closed disks meet in exactly one point.
    pub fn tangent(&self, other: &Disk<T>) -> bool {
        let r = self.radius.clone() + other.radius.clone();
        self.dist2(other) == r.clone() * r
    }

    /// `inner` lies in `self`.
    pub fn contains(&self, inner: &Disk<T>) -> bool {
        let gap = self.radius.clone() - inner.radius.clone();
        !gap.is_negative() && self.dist2(inner) <= gap.clone() * gap
    }

    fn lerp(a: &Disk<T>, b: &Disk<T>, s: &T) -> Disk<T> {
        let mix = |x: &T, y: &T| x.clone() + (y.clone() - x.clone()) * s.clone();
        Disk {
            center: (mix(&a.center.0, &b.center.0), mix(&a.center.1, &b.center.1)),
            radius: mix(&a.radius, &b.radius),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Keyframe<T> {
    pub t: T,
    pub disk: Disk<T>,
}

/// Piecewise-linear motion of one disk through one interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Track<T> {
    pub label: usize,
    pub keys: Vec<Keyframe<T>>,
}

impl<T: Scalar> Track<T> {
    /// The disk at time `t`, clamped to the keyframe range.
    pub fn at(&self, t: &T) -> Disk<T> {
        let keys = &self.keys;
        if *t <= keys[0].t {
            return keys[0].disk.clone();
        }
        for w in keys.windows(2) {
            if *t <= w[1].t {
                let s = (t.clone() - w[0].t.clone()) / (w[1].t.clone() - w[0].t.clone());
                return Disk::lerp(&w[0].disk, &w[1].disk, &s);
            }
        }
        keys[keys.len() - 1].disk.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPlacement<T> {
    pub start: T,
    pub end: T,
    pub tracks: Vec<Track<T>>,
}

impl<T: Scalar> IntervalPlacement<T> {
    pub fn track(&self, label: usize) -> Option<&Track<T>> {
        self.tracks.iter().find(|tr| tr.label == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskPlacement<T> {
    /// Home column of each label.
    pub slots: Vec<i64>,
    /// One entry per interval between consecutive breakpoints.
    pub intervals: Vec<IntervalPlacement<T>>,
    /// Degenerate disks of isolated points, by event index.
    pub points: Vec<(usize, usize, Disk<T>)>,
}

fn home_radius<T: Scalar>() -> T {
    T::ratio(2, 5)
}

fn lane_radius<T: Scalar>() -> T {
    T::ratio(1, 5)
}

fn lane<T: Scalar>() -> T {
    T::from_int(2)
}

/// Deterministic placement for a validated movie.
pub fn assign_disks<T: Scalar>(movie: &SweepMovie<T>) -> DiskPlacement<T> {
    let mut slots = vec![0i64; movie.label_count()];
    let mut next = 0i64;
    let mut assigned = vec![false; movie.label_count()];
    let mut give = |l: usize, slots: &mut Vec<i64>, assigned: &mut Vec<bool>| {
        if !assigned[l] {
            slots[l] = next;
            next += 1;
            assigned[l] = true;
        }
    };
    for &l in movie.initial() {
        give(l, &mut slots, &mut assigned);
    }
    for ev in movie.events() {
        match &ev.event {
            Event::Band { from, into } => {
                slots[*into] = slots[*from];
                assigned[*into] = true;
            }
            Event::Isolated(l) => give(*l, &mut slots, &mut assigned),
            other => {
                for &l in other.created() {
                    give(l, &mut slots, &mut assigned);
                }
            }
        }
    }

    let x = |l: usize| T::from_int(slots[l]);
    let home = |l: usize, r: T| Disk {
        center: (x(l), T::zero()),
        radius: r,
    };
    let up = |l: usize, r: T| Disk {
        center: (x(l), lane()),
        radius: r,
    };
    let at_lane = |cx: T, r: T| Disk {
        center: (cx, lane()),
        radius: r,
    };
    // Left and right meeting points around the midpoint of two columns.
    let meeting = |a: usize, b: usize| {
        let m = T::midpoint(&x(a), &x(b));
        let (lo, hi) = if slots[a] < slots[b] { (a, b) } else { (b, a) };
        let mut out = HashMap::new();
        out.insert(lo, m.clone() - lane_radius::<T>());
        out.insert(hi, m.clone() + lane_radius::<T>());
        (m, out)
    };

    let bps = movie.breakpoints();
    let events = movie.events();
    let n = events.len();
    let mut intervals = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (t0, t4) = (bps[k].clone(), bps[k + 1].clone());
        let step = (t4.clone() - t0.clone()) / T::from_int(4);
        let times: Vec<T> = (0..5)
            .map(|i| t0.clone() + step.clone() * T::from_int(i))
            .collect();
        let opening = k.checked_sub(1).map(|i| &events[i].event);
        let closing = events.get(k).map(|e| &e.event);
        let mut tracks = Vec::new();
        for l in movie.live_in_interval(k) {
            let big = home_radius::<T>();
            let small = lane_radius::<T>();
            let first: [Disk<T>; 2] = match opening {
                None => [home(l, T::zero()), home(l, big.clone())],
                Some(Event::Birth(b)) if *b == l => [home(l, T::zero()), home(l, big.clone())],
                Some(Event::Merge { a, b, into }) if *into == l => {
                    let (m, _) = meeting(*a, *b);
                    [at_lane(m, big.clone()), up(l, big.clone())]
                }
                Some(Event::Split { a, b, .. }) if *a == l || *b == l => {
                    let (_, spots) = meeting(*a, *b);
                    [
                        at_lane(spots[&l].clone(), small.clone()),
                        up(l, small.clone()),
                    ]
                }
                _ => [home(l, big.clone()), home(l, big.clone())],
            };
            let last: [Disk<T>; 2] = match closing {
                None => [home(l, big.clone()), home(l, T::zero())],
                Some(Event::Death(d)) if *d == l => [home(l, big.clone()), home(l, T::zero())],
                Some(Event::Merge { a, b, .. }) if *a == l || *b == l => {
                    let (_, spots) = meeting(*a, *b);
                    [
                        up(l, small.clone()),
                        at_lane(spots[&l].clone(), small.clone()),
                    ]
                }
                Some(Event::Split { from, a, b }) if *from == l => {
                    let (m, _) = meeting(*a, *b);
                    [up(l, big.clone()), at_lane(m, big.clone())]
                }
                _ => [home(l, big.clone()), home(l, big.clone())],
            };
            let disks = [
                first[0].clone(),
                first[1].clone(),
                home(l, big.clone()),
                last[0].clone(),
                last[1].clone(),
            ];
            let keys = times
                .iter()
                .cloned()
                .zip(disks)
                .map(|(t, disk)| Keyframe { t, disk })
                .collect();
            tracks.push(Track { label: l, keys });
        }
        intervals.push(IntervalPlacement {
            start: t0,
            end: t4,
            tracks,
        });
    }
    let points = events
        .iter()
        .enumerate()
        .filter_map(|(i, e)| match e.event {
            Event::Isolated(l) => Some((i, l, home(l, T::zero()))),
            _ => None,
        })
        .collect();
    DiskPlacement {
        slots,
        intervals,
        points,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError<T: Debug + Display> {
    #[error("disks of labels {a} and {b} meet at time {time}")]
    Overlap { time: T, a: usize, b: usize },
    #[error("label {label} jumps at time {time}: {reason}")]
    Discontinuity {
        time: T,
        label: usize,
        reason: &'static str,
    },
    #[error("placement does not match the movie: {0}")]
    Mismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport<T> {
    pub checked_times: Vec<T>,
    pub pair_checks: usize,
    pub tangencies: usize,
    pub continuity_checks: usize,
}

struct Checker<T> {
    report: CertificateReport<T>,
}

impl<T: Scalar> Checker<T> {
    /// Pairwise disjointness, tangency allowed inside `may_touch`.
    fn slice(
        &mut self,
        time: &T,
        disks: &[(usize, Disk<T>)],
        may_touch: &[usize],
    ) -> Result<(), CertificateError<T>> {
        for i in 0..disks.len() {
            for j in i + 1..disks.len() {
                let ((a, da), (b, db)) = (&disks[i], &disks[j]);
                self.report.pair_checks += 1;
                if da.disjoint(db) {
                    continue;
                }
                if da.tangent(db) && may_touch.contains(a) && may_touch.contains(b) {
                    self.report.tangencies += 1;
                    continue;
                }
                return Err(CertificateError::Overlap {
                    time: time.clone(),
                    a: *a,
                    b: *b,
                });
            }
        }
        Ok(())
    }
}

/// Checks exact disjointness at `samples` interior times of every interval
/// and at every event time, and continuity of every disk across events.
pub fn embedding_certificate<T: Scalar>(
    movie: &SweepMovie<T>,
    placement: &DiskPlacement<T>,
    samples: usize,
) -> Result<CertificateReport<T>, CertificateError<T>> {
    let bps = movie.breakpoints();
    let events = movie.events();
    if placement.intervals.len() != events.len() + 1 {
        return Err(CertificateError::Mismatch(format!(
            "{} intervals for {} events",
            placement.intervals.len(),
            events.len()
        )));
    }
    let mut chk = Checker {
        report: CertificateReport {
            checked_times: Vec::new(),
            pair_checks: 0,
            tangencies: 0,
            continuity_checks: 0,
        },
    };
    for (k, iv) in placement.intervals.iter().enumerate() {
        let mut want = movie.live_in_interval(k);
        let mut have: Vec<usize> = iv.tracks.iter().map(|t| t.label).collect();
        want.sort_unstable();
        have.sort_unstable();
        if want != have || iv.start != bps[k] || iv.end != bps[k + 1] {
            return Err(CertificateError::Mismatch(format!("interval {k}")));
        }
        let len = iv.end.clone() - iv.start.clone();
        for j in 1..=samples {
            let t = iv.start.clone() + len.clone() * T::ratio(j as i64, samples as i64 + 1);
            let disks: Vec<(usize, Disk<T>)> =
                iv.tracks.iter().map(|tr| (tr.label, tr.at(&t))).collect();
            chk.slice(&t, &disks, &[])?;
            chk.report.checked_times.push(t);
        }
    }
    let discontinuity = |time: &T, label: usize, reason| CertificateError::Discontinuity {
        time: time.clone(),
        label,
        reason,
    };
    // Ends of the movie: every circle starts and ends as a point.
    let ends = [(0usize, &bps[0]), (events.len(), &bps[bps.len() - 1])];
    for (k, t) in ends {
        for tr in &placement.intervals[k].tracks {
            chk.report.continuity_checks += 1;
            if !tr.at(t).radius.is_zero() {
                return Err(discontinuity(
                    t,
                    tr.label,
                    "nonzero radius at an end of the movie",
                ));
            }
        }
    }
    for (i, ev) in events.iter().enumerate() {
        let t = &ev.t;
        let (before, after) = (&placement.intervals[i], &placement.intervals[i + 1]);
        let left: Vec<(usize, Disk<T>)> = before
            .tracks
            .iter()
            .map(|tr| (tr.label, tr.at(t)))
            .collect();
        let right: Vec<(usize, Disk<T>)> =
            after.tracks.iter().map(|tr| (tr.label, tr.at(t))).collect();
        let mut left_all = left.clone();
        let mut right_all = right.clone();
        for (e, l, d) in &placement.points {
            if *e == i {
                left_all.push((*l, d.clone()));
                right_all.push((*l, d.clone()));
            }
        }
        let consumed: Vec<usize> = ev.event.consumed().into_iter().copied().collect();
        let created: Vec<usize> = ev.event.created().into_iter().copied().collect();
        chk.slice(t, &left_all, &consumed)?;
        chk.slice(t, &right_all, &created)?;
        chk.report.checked_times.push(t.clone());

        let find = |side: &[(usize, Disk<T>)], l: usize| {
            side.iter().find(|(m, _)| *m == l).map(|(_, d)| d.clone())
        };
        // Bystanders do not jump.
        for (l, d) in &left {
            if consumed.contains(l) {
                continue;
            }
            chk.report.continuity_checks += 1;
            if find(&right, *l).as_ref() != Some(d) {
                return Err(discontinuity(
                    t,
                    *l,
                    "disk changes across an unrelated event",
                ));
            }
        }
        let need = |side: &[(usize, Disk<T>)], l: usize| {
            find(side, l)
                .ok_or_else(|| CertificateError::Mismatch(format!("label {l} at event {i}")))
        };
        chk.report.continuity_checks += 1;
        match &ev.event {
            Event::Birth(l) => {
                if !need(&right, *l)?.radius.is_zero() {
                    return Err(discontinuity(t, *l, "born with nonzero radius"));
                }
            }
            Event::Death(l) => {
                if !need(&left, *l)?.radius.is_zero() {
                    return Err(discontinuity(t, *l, "dies with nonzero radius"));
                }
            }
            Event::Merge { a, b, into } => {
                let c = need(&right, *into)?;
                for p in [a, b] {
                    if !c.contains(&need(&left, *p)?) {
                        return Err(discontinuity(t, *into, "merged disk misses a parent"));
                    }
                }
            }
            Event::Split { from, a, b } => {
                let c = need(&left, *from)?;
                for p in [a, b] {
                    if !c.contains(&need(&right, *p)?) {
                        return Err(discontinuity(t, *from, "split disk misses a child"));
                    }
                }
            }
            Event::Band { from, into } => {
                if need(&left, *from)? != need(&right, *into)? {
                    return Err(discontinuity(t, *into, "band changes the disk"));
                }
            }
            Event::Isolated(l) => {
                let present = placement
                    .points
                    .iter()
                    .any(|(e, m, d)| *e == i && m == l && d.radius.is_zero());
                if !present {
                    return Err(discontinuity(
                        t,
                        *l,
                        "isolated point without a degenerate disk",
                    ));
                }
            }
        }
    }
    Ok(chk.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweeps::movie::{random_movie, validate_movie, RawMovie, TimedEvent};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn movie(initial: &[&str], events: Vec<(Q, Event<String>)>) -> SweepMovie<Q> {
        validate_movie(&RawMovie {
            initial: initial.iter().map(|s| s.to_string()).collect(),
            events: events
                .into_iter()
                .map(|(t, event)| TimedEvent { t, event })
                .collect(),
        })
        .unwrap()
    }

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn single_circle_grows_and_shrinks() {
        let m = movie(
            &[],
            vec![
                (q(1, 5), Event::Birth(s("a"))),
                (q(4, 5), Event::Death(s("a"))),
            ],
        );
        let p = assign_disks(&m);
        let tr = &p.intervals[1].tracks[0];
        assert_eq!(tr.at(&q(1, 5)).radius, q(0, 1));
        assert_eq!(tr.at(&q(1, 2)).radius, q(2, 5));
        assert_eq!(tr.at(&q(4, 5)).radius, q(0, 1));
        assert!(embedding_certificate(&m, &p, 10).is_ok());
    }

    #[test]
    fn merge_meets_in_the_lane() {
        let m = movie(
            &[],
            vec![
                (q(1, 5), Event::Birth(s("a"))),
                (q(3, 10), Event::Birth(s("b"))),
                (
                    q(1, 2),
                    Event::Merge {
                        a: s("a"),
                        b: s("b"),
                        into: s("c"),
                    },
                ),
                (q(4, 5), Event::Death(s("c"))),
            ],
        );
        let p = assign_disks(&m);
        let at = |k: usize, l: usize, t: Q| p.intervals[k].track(l).unwrap().at(&t);
        let (da, db) = (at(2, 0, q(1, 2)), at(2, 1, q(1, 2)));
        assert!(da.tangent(&db));
        let dc = at(3, 2, q(1, 2));
        assert!(dc.contains(&da) && dc.contains(&db));
        let r = embedding_certificate(&m, &p, 10).unwrap();
        assert_eq!(r.tangencies, 1);
        assert_eq!(r.checked_times.len(), 5 * 10 + 4);
    }

    #[test]
    fn twelve_disjoint_disks() {
        let events = (0..12)
            .map(|i| (q(i + 1, 20), Event::Birth(format!("p{i}"))))
            .collect();
        let m = movie(&[], events);
        let p = assign_disks(&m);
        let last = p.intervals.last().unwrap();
        let t = q(4, 5);
        assert_eq!(last.tracks.len(), 12);
        for (i, a) in last.tracks.iter().enumerate() {
            for b in &last.tracks[i + 1..] {
                assert!(a.at(&t).disjoint(&b.at(&t)));
            }
        }
        assert!(embedding_certificate(&m, &p, 10).is_ok());
    }

    #[test]
    fn corrupted_placement_fails() {
        let m = movie(&["a", "b"], vec![]);
        let mut p = assign_disks(&m);
        assert!(embedding_certificate(&m, &p, 10).is_ok());
        let copy = p.intervals[0].tracks[0].keys.clone();
        p.intervals[0].tracks[1].keys = copy;
        assert!(matches!(
            embedding_certificate(&m, &p, 10),
            Err(CertificateError::Overlap { a: 0, b: 1, .. })
        ));
    }

    #[test]
    fn isolated_points_pass() {
        let m = movie(
            &["a"],
            vec![
                (q(1, 3), Event::Isolated(s("p"))),
                (
                    q(2, 3),
                    Event::Split {
                        from: s("a"),
                        a: s("b"),
                        b: s("c"),
                    },
                ),
            ],
        );
        let p = assign_disks(&m);
        assert_eq!(p.points.len(), 1);
        assert!(embedding_certificate(&m, &p, 10).is_ok());
    }

    #[test]
    fn random_movies_certify() {
        for seed in 0..40 {
            let m: SweepMovie<Q> = random_movie(seed, 20);
            let p = assign_disks(&m);
            assert_eq!(p, assign_disks(&m));
            embedding_certificate(&m, &p, 10).unwrap();
        }
    }
}

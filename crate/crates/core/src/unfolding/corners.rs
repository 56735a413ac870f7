//! Connectivity of the double points of two interval maps.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("map {map} must run from (0, 0) to (1, 1)")]
    BadEndpoints { map: usize },
    #[error("map {map}: abscissae not strictly increasing at index {index}")]
    NonIncreasing { map: usize, index: usize },
    #[error("map {map}: segment {index} has zero slope")]
    ZeroSlope { map: usize, index: usize },
    #[error("map {map}: value at index {index} leaves [0, 1]")]
    OutOfRange { map: usize, index: usize },
    #[error("interior breakpoint values must be pairwise distinct across both maps")]
    DuplicateValue,
}

/// Two piecewise-linear maps `I -> I` and `I' -> I` fixing both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalMapPair<T> {
    maps: [Vec<(T, T)>; 2],
}

impl<T: Scalar> IntervalMapPair<T> {
    pub fn new(first: Vec<(T, T)>, second: Vec<(T, T)>) -> Result<Self, IntervalError> {
        let mut interior = Vec::new();
        for (map, pts) in [&first, &second].into_iter().enumerate() {
            let n = pts.len();
            if n < 2 || pts[0] != (T::zero(), T::zero()) || pts[n - 1] != (T::one(), T::one()) {
                return Err(IntervalError::BadEndpoints { map });
            }
            for index in 1..n {
                if pts[index].0 <= pts[index - 1].0 {
                    return Err(IntervalError::NonIncreasing { map, index });
                }
                if pts[index].1 == pts[index - 1].1 {
                    return Err(IntervalError::ZeroSlope {
                        map,
                        index: index - 1,
                    });
                }
            }
            for (index, p) in pts.iter().enumerate() {
                if p.1.is_negative() || p.1 > T::one() {
                    return Err(IntervalError::OutOfRange { map, index });
                }
            }
            interior.extend(pts[1..n - 1].iter().map(|p| p.1.clone()));
        }
        let len = interior.len();
        interior.sort();
        interior.dedup();
        if interior.len() != len {
            return Err(IntervalError::DuplicateValue);
        }
        Ok(IntervalMapPair {
            maps: [first, second],
        })
    }

    pub fn first(&self) -> &[(T, T)] {
        &self.maps[0]
    }

    pub fn second(&self) -> &[(T, T)] {
        &self.maps[1]
    }

    /// Whether 0 and 1 are regular values of both maps.
    pub fn ends_regular(&self) -> bool {
        self.maps.iter().all(|pts| {
            pts[1..pts.len() - 1]
                .iter()
                .all(|p| !p.1.is_zero() && p.1 != T::one())
        })
    }

    /// Both maps extended by a collar on each side, mapped onto `[-1, 0]`
    /// and `[1, 2]`, so the new ends are regular.
    fn with_collar(&self) -> [Vec<(T, T)>; 2] {
        self.maps.clone().map(|pts| {
            let mut out = Vec::with_capacity(pts.len() + 2);
            out.push((-T::one(), -T::one()));
            out.extend(pts);
            out.push((T::from_int(2), T::from_int(2)));
            out
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerReport<T> {
    pub connected: bool,
    pub collar_applied: bool,
    pub component_count: usize,
    /// A polyline in `I x I'` from the lower corner to the upper corner.
    pub witness: Vec<(T, T)>,
}

struct Piece<T> {
    a: (T, T),
    b: (T, T),
}

fn pieces<T: Scalar>(f: &[(T, T)], g: &[(T, T)]) -> Vec<Piece<T>> {
    let mut out = Vec::new();
    for i in 0..f.len() - 1 {
        for j in 0..g.len() - 1 {
            let (fa, fb) = (&f[i], &f[i + 1]);
            let (ga, gb) = (&g[j], &g[j + 1]);
            let lo = std::cmp::max(
                std::cmp::min(&fa.1, &fb.1).clone(),
                std::cmp::min(&ga.1, &gb.1).clone(),
            );
            let hi = std::cmp::min(
                std::cmp::max(&fa.1, &fb.1).clone(),
                std::cmp::max(&ga.1, &gb.1).clone(),
            );
            if lo >= hi {
                continue;
            }
            let at = |v: &T| (inverse(fa, fb, v), inverse(ga, gb, v));
            out.push(Piece {
                a: at(&lo),
                b: at(&hi),
            });
        }
    }
    out
}

fn inverse<T: Scalar>(p: &(T, T), q: &(T, T), v: &T) -> T {
    p.0.clone()
        + (v.clone() - p.1.clone()) * (q.0.clone() - p.0.clone()) / (q.1.clone() - p.1.clone())
}

/// Decides whether the two corners of `I x I'` lie in one component of the
/// double-point set, with a witness path when they do.
pub fn corner_connectivity<T: Scalar>(pair: &IntervalMapPair<T>) -> CornerReport<T> {
    let collar_applied = !pair.ends_regular();
    let [f, g] = if collar_applied {
        pair.with_collar()
    } else {
        pair.maps.clone()
    };
    let ps = pieces(&f, &g);
    let mut at: HashMap<(T, T), Vec<usize>> = HashMap::new();
    for (i, p) in ps.iter().enumerate() {
        at.entry(p.a.clone()).or_default().push(i);
        at.entry(p.b.clone()).or_default().push(i);
    }
    let low = (f[0].0.clone(), g[0].0.clone());
    let high = (f[f.len() - 1].0.clone(), g[g.len() - 1].0.clone());

    // Components by flood fill over shared endpoints.
    let mut comp = vec![usize::MAX; ps.len()];
    let mut count = 0;
    for seed in 0..ps.len() {
        if comp[seed] != usize::MAX {
            continue;
        }
        comp[seed] = count;
        let mut queue = VecDeque::from([seed]);
        while let Some(u) = queue.pop_front() {
            for end in [&ps[u].a, &ps[u].b] {
                for &v in &at[end] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
        }
        count += 1;
    }
    let start = at.get(&low).and_then(|v| v.first().copied());
    let end = at.get(&high).and_then(|v| v.first().copied());
    let connected = matches!((start, end), (Some(s), Some(e)) if comp[s] == comp[e]);
    let mut witness = Vec::new();
    if connected {
        let (s, e) = (start.unwrap(), end.unwrap());
        // Path of pieces from `s` to `e`, by breadth-first search from `s`.
        let mut prev = vec![usize::MAX; ps.len()];
        let mut seen = vec![false; ps.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == e {
                break;
            }
            for end in [&ps[u].a, &ps[u].b] {
                for &v in &at[end] {
                    if !seen[v] {
                        seen[v] = true;
                        prev[v] = u;
                        queue.push_back(v);
                    }
                }
            }
        }
        let mut chain = vec![e];
        while *chain.last().unwrap() != s {
            chain.push(prev[*chain.last().unwrap()]);
        }
        chain.reverse();
        witness.push(low.clone());
        for pair in chain.windows(2) {
            let (u, v) = (&ps[pair[0]], &ps[pair[1]]);
            let shared = [&u.a, &u.b]
                .into_iter()
                .find(|p| **p == v.a || **p == v.b)
                .expect("consecutive pieces share an end");
            if witness.last() != Some(shared) {
                witness.push(shared.clone());
            }
        }
        if witness.last() != Some(&high) {
            witness.push(high.clone());
        }
    }
    CornerReport {
        connected,
        collar_applied,
        component_count: count,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn id() -> Vec<(Q, Q)> {
        vec![(q(0, 1), q(0, 1)), (q(1, 1), q(1, 1))]
    }

    #[test]
    fn identities_give_the_diagonal() {
        let pair = IntervalMapPair::new(id(), id()).unwrap();
        let r = corner_connectivity(&pair);
        assert!(r.connected);
        assert!(!r.collar_applied);
        assert_eq!(r.witness, vec![(q(0, 1), q(0, 1)), (q(1, 1), q(1, 1))]);
    }

    #[test]
    fn identity_against_zigzag() {
        let zigzag = vec![
            (q(0, 1), q(0, 1)),
            (q(1, 3), q(3, 4)),
            (q(2, 3), q(1, 4)),
            (q(1, 1), q(1, 1)),
        ];
        let r = corner_connectivity(&IntervalMapPair::new(id(), zigzag).unwrap());
        assert!(r.connected);
        assert_eq!(r.component_count, 1);
        assert_eq!(r.witness.len(), 4);
        assert_eq!(r.witness[1], (q(3, 4), q(1, 3)));
    }

    #[test]
    fn critical_end_triggers_collar() {
        let touching = vec![
            (q(0, 1), q(0, 1)),
            (q(1, 3), q(1, 1)),
            (q(2, 3), q(1, 2)),
            (q(1, 1), q(1, 1)),
        ];
        let r = corner_connectivity(&IntervalMapPair::new(id(), touching).unwrap());
        assert!(r.collar_applied);
        assert!(r.connected);
        assert_eq!(r.witness.first(), Some(&(q(-1, 1), q(-1, 1))));
    }

    #[test]
    fn validation() {
        let bad = vec![(q(0, 1), q(0, 1)), (q(1, 1), q(1, 2))];
        assert_eq!(
            IntervalMapPair::new(id(), bad).unwrap_err(),
            IntervalError::BadEndpoints { map: 1 }
        );
        let f = vec![
            (q(0, 1), q(0, 1)),
            (q(1, 2), q(2, 3)),
            (q(3, 4), q(1, 3)),
            (q(1, 1), q(1, 1)),
        ];
        let g = vec![
            (q(0, 1), q(0, 1)),
            (q(1, 2), q(2, 3)),
            (q(3, 4), q(1, 5)),
            (q(1, 1), q(1, 1)),
        ];
        assert_eq!(
            IntervalMapPair::new(f, g).unwrap_err(),
            IntervalError::DuplicateValue
        );
    }
}

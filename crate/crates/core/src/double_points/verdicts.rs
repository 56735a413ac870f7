//! Degrees, Hopf-invariant parities and realizability verdicts read off `Σ_f`.

use std::collections::VecDeque;

use super::{sigma, CurveKind, DoublePointCurve};
use crate::circle_maps::PLCircleMap;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// Signed winding of a component in one coordinate; zero for open arcs.
pub fn projection_degree<T: Scalar>(
    curve: &DoublePointCurve<T>,
    component: usize,
    factor: Factor,
) -> i64 {
    let c = &curve.components()[component];
    match factor {
        Factor::First => c.p1_degree,
        Factor::Second => c.p2_degree,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityReport {
    /// No τ-invariant component has odd first projection degree.
    pub criterion_pass: bool,
    /// First τ-invariant component of odd degree, when the criterion fails.
    pub witness: Option<usize>,
    /// `deg f` lies outside `{-1, 0, 1}`.
    pub classical_dim1_verdict: bool,
    pub agreement: bool,
    pub notes: Vec<String>,
}

pub const DIM1_NOTE: &str = "criterion passes but the degree is in {-1, 0, 1}: \
     the parity criterion is not decisive for circles";

pub fn realizability_report<T: Scalar>(f: &PLCircleMap<T>) -> RealizabilityReport {
    realizability_from_curve(&sigma(f))
}

pub fn realizability_from_curve<T: Scalar>(curve: &DoublePointCurve<T>) -> RealizabilityReport {
    let witness = (0..curve.components().len())
        .find(|&c| curve.is_tau_invariant(c) && curve.components()[c].p1_degree % 2 != 0);
    let criterion_pass = witness.is_none();
    let degree = curve.map().degree();
    let classical = !(-1..=1).contains(&degree);
    let agreement = criterion_pass == classical;
    let mut notes = Vec::new();
    if !agreement {
        if criterion_pass {
            notes.push(DIM1_NOTE.to_string());
        } else {
            notes.push(format!(
                "criterion fails on τ-invariant component {} of odd degree {} while the degree is {}",
                witness.unwrap(),
                curve.components()[witness.unwrap()].p1_degree,
                degree
            ));
        }
    }
    RealizabilityReport {
        criterion_pass,
        witness,
        classical_dim1_verdict: classical,
        agreement,
        notes,
    }
}

/// Parity of the number of compact τ-invariant components.
pub fn hopf_invariant<T: Scalar>(curve: &DoublePointCurve<T>) -> u8 {
    let count = (0..curve.components().len())
        .filter(|&c| curve.is_tau_invariant(c) && curve.components()[c].is_compact())
        .count();
    (count % 2) as u8
}

/// One bit per compact quotient component: set when the double cover over
/// it is connected.
pub fn controlled_hopf<T: Scalar>(curve: &DoublePointCurve<T>) -> Vec<(usize, u8)> {
    curve
        .quotient()
        .iter()
        .enumerate()
        .filter(|(_, q)| q.compact)
        .map(|(i, q)| (i, u8::from(!q.cover_trivial)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub orientable: bool,
    /// Diagonal crossings of the closed loop.
    pub crossings: usize,
    /// At every crossing the two glued ends both point away from, or both
    /// towards, the diagonal.
    pub sign_rule_holds: bool,
}

/// Orientability of a closure component, by 2-colouring its open arcs so
/// that the colour flips at every diagonal crossing.
pub fn closure_orientability<T: Scalar>(
    curve: &DoublePointCurve<T>,
    closure: usize,
) -> ClosureReport {
    let comp = &curve.closure()[closure];
    let members = &comp.members;
    let local = |c: usize| members.iter().position(|&m| m == c).unwrap();
    // Each diagonal point joins two arc ends. An end "leaves" the diagonal
    // when it is the first point of its arc.
    let mut at_fold: Vec<Vec<(usize, bool)>> = vec![Vec::new(); curve.map().segment_count()];
    for &c in members {
        if let CurveKind::OpenArc { from_fold, to_fold } = curve.components()[c].kind {
            at_fold[from_fold].push((c, true));
            at_fold[to_fold].push((c, false));
        }
    }
    let mut edges: Vec<Vec<(usize, bool)>> = vec![Vec::new(); members.len()];
    let mut sign_rule_holds = true;
    let mut crossings = 0;
    for ends in at_fold.iter().filter(|e| !e.is_empty()) {
        assert_eq!(ends.len(), 2, "a fold is the limit of exactly two arc ends");
        crossings += 1;
        let ((a, a_out), (b, b_out)) = (ends[0], ends[1]);
        sign_rule_holds &= a_out == b_out;
        // Consistent loop orientation needs one end in and one end out;
        // colours must differ exactly when the induced directions agree.
        let flip = a_out == b_out;
        edges[local(a)].push((local(b), flip));
        edges[local(b)].push((local(a), flip));
    }
    let mut colour: Vec<Option<bool>> = vec![None; members.len()];
    let mut orientable = true;
    for root in 0..members.len() {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            for &(v, flip) in &edges[u] {
                let want = cu ^ flip;
                match colour[v] {
                    None => {
                        colour[v] = Some(want);
                        queue.push_back(v);
                    }
                    Some(cv) if cv != want => orientable = false,
                    Some(_) => {}
                }
            }
        }
    }
    ClosureReport {
        orientable,
        crossings,
        sign_rule_holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftObstructionRow {
    pub quotient: usize,
    pub lifts_through_arc: bool,
    pub cover_trivial: bool,
    pub compact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftObstructionReport {
    pub rows: Vec<LiftObstructionRow>,
    /// Some compact quotient component maps through an arc without lifting.
    pub violation: bool,
}

pub fn lift_obstruction_check<T: Scalar>(curve: &DoublePointCurve<T>) -> LiftObstructionReport {
    let rows: Vec<LiftObstructionRow> = curve
        .quotient()
        .iter()
        .enumerate()
        .map(|(i, q)| LiftObstructionRow {
            quotient: i,
            lifts_through_arc: q.lifts_through_arc,
            cover_trivial: q.cover_trivial,
            compact: q.compact,
        })
        .collect();
    let violation = rows
        .iter()
        .any(|r| r.compact && r.lifts_through_arc && !r.cover_trivial);
    LiftObstructionReport { rows, violation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_maps::PLCircleMap;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn cover(d: i64) -> DoublePointCurve<Q> {
        sigma(&PLCircleMap::covering(d))
    }

    #[test]
    fn cover_reports() {
        let r = realizability_report(&PLCircleMap::<Q>::covering(2));
        assert!(!r.criterion_pass);
        assert_eq!(r.witness, Some(0));
        let r = realizability_report(&PLCircleMap::<Q>::covering(3));
        assert!(r.criterion_pass && r.classical_dim1_verdict && r.agreement);
        let r = realizability_report(&PLCircleMap::<Q>::identity());
        assert!(r.criterion_pass && !r.classical_dim1_verdict && !r.agreement);
        assert_eq!(r.notes, vec![DIM1_NOTE.to_string()]);
    }

    #[test]
    fn hopf_of_covers() {
        for d in 2..=8 {
            assert_eq!(hopf_invariant(&cover(d)), u8::from(d % 2 == 0), "d = {d}");
        }
        assert_eq!(controlled_hopf(&cover(2)), vec![(0, 1)]);
        assert_eq!(controlled_hopf(&cover(3)), vec![(0, 0)]);
        let bits: Vec<u8> = controlled_hopf(&cover(4))
            .into_iter()
            .map(|x| x.1)
            .collect();
        let mut sorted = bits.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1]);
    }

    #[test]
    fn projection_degrees_of_covers() {
        let s = cover(5);
        for c in 0..s.components().len() {
            assert_eq!(projection_degree(&s, c, Factor::First), 1);
            assert_eq!(projection_degree(&s, c, Factor::Second), 1);
        }
    }

    #[test]
    fn two_cover_maps_onto_circle() {
        let r = lift_obstruction_check(&cover(2));
        assert_eq!(r.rows.len(), 1);
        assert!(!r.rows[0].lifts_through_arc);
        assert!(!r.violation);
    }

    #[test]
    fn tent_closure_is_one_even_loop() {
        let f = PLCircleMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4))], 0).unwrap();
        let s = sigma(&f);
        let r = closure_orientability(&s, 0);
        assert_eq!(r.crossings, 2);
        assert!(r.orientable);
        assert!(r.sign_rule_holds);
    }
}

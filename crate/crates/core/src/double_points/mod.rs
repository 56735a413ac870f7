//! The double-point curve `Σ_f = {(x, y) : x ≠ y, f(x) = f(y)}` on the torus.
//!
//! For every ordered pair of segments `(i, j)` and integer `k`, the points
//! with `l_i(s) = l_j(t) + k` form a straight piece, parametrized by the
//! common value `v = l_i(s)`. Pieces are glued along the boundaries of the
//! segment rectangles; ends landing on the diagonal sit over folds.

mod planar;
mod verdicts;

pub use planar::{planar_curve_hopf, self_intersections, PlanarError, PolygonCrossing};
pub use verdicts::{
    closure_orientability, controlled_hopf, hopf_invariant, lift_obstruction_check,
    projection_degree, realizability_from_curve, realizability_report, ClosureReport, Factor,
    LiftObstructionReport, LiftObstructionRow, RealizabilityReport, DIM1_NOTE,
};

use std::collections::HashMap;

use crate::circle_maps::{PLCircleMap, Segment};
use crate::scalar::Scalar;

/// Which end of a piece, in terms of its value parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceEnd {
    Low,
    High,
}

impl PieceEnd {
    fn other(self) -> Self {
        match self {
            PieceEnd::Low => PieceEnd::High,
            PieceEnd::High => PieceEnd::Low,
        }
    }
}

/// A straight piece of `Σ_f`: the points `(s, t)` with `s` on segment `row`,
/// `t` on segment `col` and `l_row(s) = v = l_col(t) + shift` for `v` in
/// `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece<T> {
    pub row: usize,
    pub col: usize,
    pub shift: i64,
    pub lo: T,
    pub hi: T,
    /// `+1` when the orientation runs towards increasing `v`.
    pub orientation: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Circle,
    /// An open arc whose two ends limit to the diagonal over these folds.
    OpenArc {
        from_fold: usize,
        to_fold: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaComponent<T> {
    /// Pieces in traversal order along the orientation.
    pub pieces: Vec<usize>,
    pub kind: CurveKind,
    pub p1_degree: i64,
    pub p2_degree: i64,
    /// Winding of `f(x) = f(y)` around the target; zero for open arcs.
    pub target_degree: i64,
    pub tau_partner: usize,
    /// Torus points visited in traversal order, reduced mod 1.
    pub polyline: Vec<(T, T)>,
}

impl<T> SigmaComponent<T> {
    pub fn is_compact(&self) -> bool {
        self.kind == CurveKind::Circle
    }
}

/// A component of `Σ_f / τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientComponent {
    /// `C` and, unless `C` is τ-invariant, `τC`.
    pub members: Vec<usize>,
    pub compact: bool,
    /// The preimage in `Σ_f` is disconnected.
    pub cover_trivial: bool,
    /// The image under `f` omits some point of the circle.
    pub lifts_through_arc: bool,
}

/// A component of the closure of `Σ_f`, gluing open arcs across the folds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureComponent {
    pub members: Vec<usize>,
    pub diagonal_folds: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DoublePointCurve<T> {
    map: PLCircleMap<T>,
    pieces: Vec<Piece<T>>,
    components: Vec<SigmaComponent<T>>,
    piece_component: Vec<usize>,
    quotient: Vec<QuotientComponent>,
    closure: Vec<ClosureComponent>,
    /// Glued neighbour of each piece end; `None` at diagonal ends.
    neighbours: Vec<[Option<(usize, PieceEnd)>; 2]>,
}

type Key<T> = (T, T);

fn end_index(e: PieceEnd) -> usize {
    match e {
        PieceEnd::Low => 0,
        PieceEnd::High => 1,
    }
}

impl<T: Scalar> DoublePointCurve<T> {
    pub fn map(&self) -> &PLCircleMap<T> {
        &self.map
    }

    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    pub fn components(&self) -> &[SigmaComponent<T>] {
        &self.components
    }

    pub fn quotient(&self) -> &[QuotientComponent] {
        &self.quotient
    }

    pub fn closure(&self) -> &[ClosureComponent] {
        &self.closure
    }

    pub fn component_of_piece(&self, piece: usize) -> usize {
        self.piece_component[piece]
    }

    pub fn neighbour(&self, piece: usize, end: PieceEnd) -> Option<(usize, PieceEnd)> {
        self.neighbours[piece][end_index(end)]
    }

    pub fn is_tau_invariant(&self, c: usize) -> bool {
        self.components[c].tau_partner == c
    }

    /// Lifted `(s, t)` coordinates of a piece at value `v`.
    pub fn piece_point(&self, piece: usize, v: &T) -> (T, T) {
        let p = &self.pieces[piece];
        let s = self.map.segment(p.row).preimage(v);
        let t = self
            .map
            .segment(p.col)
            .preimage(&(v.clone() - T::from_int(p.shift)));
        (s, t)
    }

    pub fn end_point(&self, piece: usize, end: PieceEnd) -> (T, T) {
        let p = &self.pieces[piece];
        let v = match end {
            PieceEnd::Low => &p.lo,
            PieceEnd::High => &p.hi,
        };
        self.piece_point(piece, v)
    }

    /// Component containing the torus point `(s, t)`, if it lies on `Σ_f`.
    pub fn component_containing(&self, s: &T, t: &T) -> Option<usize> {
        let (si, sp) = self.map.locate(s);
        let (ti, tp) = self.map.locate(t);
        let s_lift = s.clone() - T::from_int(sp);
        let t_lift = t.clone() - T::from_int(tp);
        let v_s = self.map.segment(si).value_at(&s_lift);
        let v_t = self.map.segment(ti).value_at(&t_lift);
        let diff = v_s.clone() - v_t;
        let shift = diff.to_int()?;
        if si == ti && shift == 0 {
            return None;
        }
        self.pieces
            .iter()
            .position(|p| {
                p.row == si && p.col == ti && p.shift == shift && p.lo <= v_s && v_s <= p.hi
            })
            .map(|i| self.piece_component[i])
    }

    /// All `t` with `(x, t)` on `Σ_f`, reduced mod 1 and sorted.
    pub fn points_over(&self, x: &T) -> Vec<T> {
        let x = x.mod_one();
        let mut out = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let seg = self.map.segment(p.row);
            for shift in [0, 1] {
                let s = x.clone() + T::from_int(shift);
                if s < seg.x0 || s > seg.x1 {
                    continue;
                }
                let v = seg.value_at(&s);
                if v >= p.lo && v <= p.hi {
                    out.push(self.piece_point(i, &v).1.mod_one());
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Computes `Σ_f` exactly.
pub fn sigma<T: Scalar>(f: &PLCircleMap<T>) -> DoublePointCurve<T> {
    let segments = f.segments();
    let pieces = enumerate_pieces(&segments);

    let mut ends: HashMap<Key<T>, Vec<(usize, PieceEnd)>> = HashMap::new();
    let mut diagonal: HashMap<T, Vec<(usize, PieceEnd)>> = HashMap::new();
    let mut curve = DoublePointCurve {
        map: f.clone(),
        neighbours: vec![[None, None]; pieces.len()],
        piece_component: vec![usize::MAX; pieces.len()],
        pieces,
        components: Vec::new(),
        quotient: Vec::new(),
        closure: Vec::new(),
    };
    for i in 0..curve.pieces.len() {
        for e in [PieceEnd::Low, PieceEnd::High] {
            let (s, t) = curve.end_point(i, e);
            let key = (s.mod_one(), t.mod_one());
            if key.0 == key.1 {
                diagonal.entry(key.0).or_default().push((i, e));
            } else {
                ends.entry(key).or_default().push((i, e));
            }
        }
    }
    for incident in ends.values() {
        assert_eq!(
            incident.len(),
            2,
            "non-diagonal piece ends must pair up for a generic map"
        );
        let (a, b) = (incident[0], incident[1]);
        curve.neighbours[a.0][end_index(a.1)] = Some(b);
        curve.neighbours[b.0][end_index(b.1)] = Some(a);
    }

    trace_components(&mut curve);
    pair_components(&mut curve);
    build_quotient(&mut curve);
    build_closure(&mut curve, &diagonal);
    curve
}

fn enumerate_pieces<T: Scalar>(segments: &[Segment<T>]) -> Vec<Piece<T>> {
    let mut pieces = Vec::new();
    for (i, si) in segments.iter().enumerate() {
        for (j, sj) in segments.iter().enumerate() {
            let k_min = (si.min_value().clone() - sj.max_value().clone()).floor_int();
            let k_max = (si.max_value().clone() - sj.min_value().clone()).floor_int() + 1;
            for k in k_min..=k_max {
                if i == j && k == 0 {
                    continue;
                }
                let kk = T::from_int(k);
                let lo = std::cmp::max(si.min_value().clone(), sj.min_value().clone() + kk.clone());
                let hi = std::cmp::min(si.max_value().clone(), sj.max_value().clone() + kk);
                if lo < hi {
                    pieces.push(Piece {
                        row: i,
                        col: j,
                        shift: k,
                        lo,
                        hi,
                        orientation: si.sign() * sj.sign(),
                    });
                }
            }
        }
    }
    pieces
}

fn tail_end<T>(p: &Piece<T>) -> PieceEnd {
    if p.orientation > 0 {
        PieceEnd::Low
    } else {
        PieceEnd::High
    }
}

fn trace_components<T: Scalar>(curve: &mut DoublePointCurve<T>) {
    let n = curve.pieces.len();
    // Open arcs first, from their tail ends; then the remaining circles.
    let mut starts: Vec<(usize, PieceEnd)> = Vec::new();
    for i in 0..n {
        let tail = tail_end(&curve.pieces[i]);
        if curve.neighbours[i][end_index(tail)].is_none() {
            starts.push((i, tail));
        }
    }
    let arc_starts = starts.len();
    starts.extend((0..n).map(|i| (i, tail_end(&curve.pieces[i]))));

    for (idx, &(first, entry)) in starts.iter().enumerate() {
        if curve.piece_component[first] != usize::MAX {
            continue;
        }
        let c = curve.components.len();
        let mut order = Vec::new();
        let mut polyline = Vec::new();
        let (mut p1, mut p2, mut w) = (T::zero(), T::zero(), T::zero());
        let (mut piece, mut end_in) = (first, entry);
        let closing = loop {
            curve.piece_component[piece] = c;
            order.push(piece);
            let pc = &curve.pieces[piece];
            debug_assert_eq!(end_in, tail_end(pc), "piece orientations must glue");
            let (s, t) = curve.end_point(piece, end_in);
            polyline.push((s.mod_one(), t.mod_one()));
            let eps = T::from_int(pc.orientation);
            let dv = pc.hi.clone() - pc.lo.clone();
            let row = curve.map.segment(pc.row);
            let col = curve.map.segment(pc.col);
            p1 = p1 + eps.clone() * dv.clone() / row.slope();
            p2 = p2 + eps.clone() * dv.clone() / col.slope();
            w = w + eps * dv;
            let end_out = end_in.other();
            match curve.neighbours[piece][end_index(end_out)] {
                Some((next, next_end)) if next == first && next_end == entry => break None,
                Some((next, next_end)) => {
                    piece = next;
                    end_in = next_end;
                }
                None => break Some((piece, end_out)),
            }
        };
        let kind = match closing {
            None => {
                let (s, t) = curve.end_point(first, entry);
                polyline.push((s.mod_one(), t.mod_one()));
                CurveKind::Circle
            }
            Some((last, last_end)) => {
                debug_assert!(idx < arc_starts);
                let (s, t) = curve.end_point(last, last_end);
                polyline.push((s.mod_one(), t.mod_one()));
                let from = fold_at(&curve.map, &polyline[0].0);
                let to = fold_at(&curve.map, &s.mod_one());
                CurveKind::OpenArc {
                    from_fold: from,
                    to_fold: to,
                }
            }
        };
        let compact = kind == CurveKind::Circle;
        let as_int = |x: T| {
            if compact {
                x.to_int()
                    .expect("winding of a closed component is an integer")
            } else {
                0
            }
        };
        curve.components.push(SigmaComponent {
            pieces: order,
            kind,
            p1_degree: as_int(p1),
            p2_degree: as_int(p2),
            target_degree: as_int(w),
            tau_partner: usize::MAX,
            polyline,
        });
    }
}

fn fold_at<T: Scalar>(f: &PLCircleMap<T>, x: &T) -> usize {
    f.vertices()
        .iter()
        .position(|v| v.x == *x)
        .expect("diagonal ends of Σ lie over folds")
}

fn pair_components<T: Scalar>(curve: &mut DoublePointCurve<T>) {
    let mut index: HashMap<(usize, usize, i64), usize> = HashMap::new();
    for (i, p) in curve.pieces.iter().enumerate() {
        index.insert((p.row, p.col, p.shift), i);
    }
    for c in 0..curve.components.len() {
        let p = &curve.pieces[curve.components[c].pieces[0]];
        let image = index[&(p.col, p.row, -p.shift)];
        curve.components[c].tau_partner = curve.piece_component[image];
    }
}

fn build_quotient<T: Scalar>(curve: &mut DoublePointCurve<T>) {
    for c in 0..curve.components.len() {
        let partner = curve.components[c].tau_partner;
        if partner < c {
            continue;
        }
        let members = if partner == c {
            vec![c]
        } else {
            vec![c, partner]
        };
        let through_arc = !covers_circle(curve, c);
        curve.quotient.push(QuotientComponent {
            members,
            compact: curve.components[c].is_compact(),
            cover_trivial: partner != c,
            lifts_through_arc: through_arc,
        });
    }
}

/// Whether the values `f(x) = f(y)` along component `c` cover the circle.
fn covers_circle<T: Scalar>(curve: &DoublePointCurve<T>, c: usize) -> bool {
    let comp = &curve.components[c];
    if comp.target_degree != 0 {
        return true;
    }
    let mut intervals: Vec<(T, T)> = Vec::new();
    for &i in &comp.pieces {
        let p = &curve.pieces[i];
        if p.hi.clone() - p.lo.clone() >= T::one() {
            return true;
        }
        let a = p.lo.mod_one();
        let b = a.clone() + (p.hi.clone() - p.lo.clone());
        if b > T::one() {
            intervals.push((a, T::one()));
            intervals.push((T::zero(), b - T::one()));
        } else {
            intervals.push((a, b));
        }
    }
    intervals.sort();
    let mut reach = T::zero();
    for (a, b) in intervals {
        if a > reach {
            return false;
        }
        if b > reach {
            reach = b;
        }
    }
    reach >= T::one()
}

fn build_closure<T: Scalar>(
    curve: &mut DoublePointCurve<T>,
    diagonal: &HashMap<T, Vec<(usize, PieceEnd)>>,
) {
    let n = curve.components.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for incident in diagonal.values() {
        let first = curve.piece_component[incident[0].0];
        for &(p, _) in &incident[1..] {
            let a = find(&mut parent, first);
            let b = find(&mut parent, curve.piece_component[p]);
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<(usize, ClosureComponent)> = Vec::new();
    for c in 0..n {
        if curve.components[c].is_compact() {
            continue;
        }
        let root = find(&mut parent, c);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.members.push(c),
            None => groups.push((
                root,
                ClosureComponent {
                    members: vec![c],
                    diagonal_folds: Vec::new(),
                },
            )),
        }
    }
    for (_, g) in groups.iter_mut() {
        let mut folds: Vec<usize> = g
            .members
            .iter()
            .flat_map(|&c| match curve.components[c].kind {
                CurveKind::OpenArc { from_fold, to_fold } => vec![from_fold, to_fold],
                CurveKind::Circle => vec![],
            })
            .collect();
        folds.sort_unstable();
        folds.dedup();
        g.diagonal_folds = folds;
    }
    curve.closure = groups.into_iter().map(|(_, g)| g).collect();
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    #[test]
    fn identity_has_empty_sigma() {
        let s = sigma(&PLCircleMap::<Q>::identity());
        assert!(s.components().is_empty());
    }

    #[test]
    fn two_cover_antidiagonal() {
        let s = sigma(&PLCircleMap::<Q>::covering(2));
        assert_eq!(s.components().len(), 1);
        let c = &s.components()[0];
        assert_eq!(c.kind, CurveKind::Circle);
        assert_eq!(c.tau_partner, 0);
        assert_eq!(c.p1_degree, 1);
        assert_eq!(c.p2_degree, 1);
        assert_eq!(c.target_degree, 2);
        for (x, y) in &c.polyline {
            assert_eq!((y.clone() - x.clone()).mod_one(), q(1, 2));
        }
    }

    #[test]
    fn covers_split_by_offset() {
        for d in 2..=6 {
            let s = sigma(&PLCircleMap::<Q>::covering(d));
            assert_eq!(s.components().len() as i64, d - 1);
            for c in s.components() {
                let (x, y) = &c.polyline[0];
                let j = ((y.clone() - x.clone()).mod_one() * Q::from_int(d))
                    .to_int()
                    .unwrap();
                let (px, py) = &s.components()[c.tau_partner].polyline[0];
                let jp = ((py.clone() - px.clone()).mod_one() * Q::from_int(d))
                    .to_int()
                    .unwrap();
                assert_eq!(j + jp, d);
            }
        }
    }

    #[test]
    fn tent_map_arcs() {
        let f = PLCircleMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4))], 0).unwrap();
        let s = sigma(&f);
        // The two arcs {y = 1 - x} near both folds are exchanged by τ.
        assert_eq!(s.components().len(), 2);
        for c in s.components() {
            assert!(matches!(c.kind, CurveKind::OpenArc { .. }));
            assert_eq!(c.p1_degree, 0);
        }
        assert_eq!(s.components()[0].tau_partner, 1);
        assert_eq!(s.closure().len(), 1);
        assert_eq!(s.closure()[0].diagonal_folds, vec![0, 1]);
    }

    #[test]
    fn fibers_match_points_over() {
        let f = PLCircleMap::new(
            vec![
                (q(0, 1), q(1, 10)),
                (q(1, 5), q(13, 10)),
                (q(1, 2), q(7, 10)),
                (q(4, 5), q(47, 20)),
            ],
            1,
        )
        .unwrap();
        let s = sigma(&f);
        for k in 1..40 {
            let x = q(k, 40) + q(1, 997);
            let y = f.lift_evaluate(&x);
            let expected = f.fiber(&y).len() - 1;
            assert_eq!(s.points_over(&x).len(), expected, "x = {x}");
        }
    }

    #[test]
    fn locating_points() {
        let s = sigma(&PLCircleMap::<Q>::covering(3));
        let a = s
            .component_containing(&q(1, 10), &(q(1, 10) + q(1, 3)))
            .unwrap();
        let b = s
            .component_containing(&q(1, 10), &(q(1, 10) + q(2, 3)))
            .unwrap();
        assert_ne!(a, b);
        assert_eq!(s.components()[a].tau_partner, b);
        assert!(s.component_containing(&q(1, 10), &q(1, 5)).is_none());
    }
}

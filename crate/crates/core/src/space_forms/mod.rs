//! Finite groups acting freely on the 3-sphere and the verdicts for their
//! universal covering maps.
//!
//! The double points of a covering `S^3 -> S^3/G` split into one component
//! per non-identity element of `G`, with the involutions giving the
//! components fixed by the factor swap. The circle analog, the `d`-fold
//! cover of the circle, is computable with [`crate::double_points`] and
//! serves as an oracle for the cyclic case.

mod groups;
mod todd_coxeter;

use thiserror::Error;

pub use groups::{build_group, Family, FiniteSubgroupS3, GroupError, GroupTable, MAX_ORDER};
pub use todd_coxeter::{enumerate, CosetTable, Presentation};

use crate::circle_maps::PLCircleMap;
use crate::double_points::{hopf_invariant, sigma, CurveKind};
use crate::Rational;

/// Number of elements of order two.
pub fn involution_count(g: &FiniteSubgroupS3) -> usize {
    g.involutions().len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverComponent {
    pub element: usize,
    pub tau_invariant: bool,
    pub projection_degree: i64,
}

/// Double-point components of the universal covering, indexed by `G \ {1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSigmaModel {
    pub components: Vec<CoverComponent>,
}

impl CoverSigmaModel {
    pub fn invariant_count(&self) -> usize {
        self.components.iter().filter(|c| c.tau_invariant).count()
    }
}

pub fn cover_sigma_model(g: &FiniteSubgroupS3) -> CoverSigmaModel {
    let t = g.table();
    let components = (0..g.order())
        .filter(|&a| a != t.identity())
        .map(|a| CoverComponent {
            element: a,
            tau_invariant: t.mul(a, a) == t.identity(),
            projection_degree: 1,
        })
        .collect();
    CoverSigmaModel { components }
}

/// Whether the universal covering of `S^3/G` realizes in `R^6`.
pub fn cover_realizable(g: &FiniteSubgroupS3) -> bool {
    g.order() % 2 == 1
}

/// Hopf invariant of the universal covering, mod 2.
pub fn hopf_of_cover(g: &FiniteSubgroupS3) -> u8 {
    (involution_count(g) % 2) as u8
}

/// Fundamental group of a closed orientable 3-manifold target.
#[derive(Clone, Copy, Debug)]
pub enum Pi1<'a> {
    Finite(&'a FiniteSubgroupS3),
    Infinite,
}

/// Whether some map `S^3 -> M` fails to realize in `R^6`.
pub fn nonrealizable_map_exists(pi1: Pi1<'_>) -> bool {
    match pi1 {
        Pi1::Infinite => false,
        Pi1::Finite(g) => g.order() % 2 == 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    #[error(
        "dimension {0} is not supported: only maps S^3 -> S^3/G into R^6 are decided; \
         higher space forms need obstructions beyond this crate"
    )]
    Unsupported(u32),
}

/// Realizability of the universal covering `S^n -> S^n/G` in `R^{2n}`.
///
/// Only `n = 3` is decided; other dimensions are refused.
pub fn cover_realizable_in_dimension(g: &FiniteSubgroupS3, n: u32) -> Result<bool, DimensionError> {
    if n == 3 {
        Ok(cover_realizable(g))
    } else {
        Err(DimensionError::Unsupported(n))
    }
}

/// Comparison of the circle `d`-cover computed by [`sigma`] with the
/// cyclic group model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DCoverReport {
    pub d: u32,
    pub sigma_components: usize,
    pub sigma_invariant: usize,
    pub sigma_all_circles: bool,
    pub sigma_projection_degrees: Vec<i64>,
    pub sigma_hopf: u8,
    pub model_components: usize,
    pub model_invariant: usize,
    pub model_hopf: u8,
    pub agree: bool,
}

pub fn dcover_consistency(d: u32) -> Result<DCoverReport, GroupError> {
    if d < 2 {
        return Err(GroupError::BadParameter {
            family: "cyclic".into(),
            parameter: i64::from(d),
        });
    }
    let f: PLCircleMap<Rational> = PLCircleMap::covering(i64::from(d));
    let curve = sigma(&f);
    let comps = curve.components();
    let sigma_invariant = (0..comps.len())
        .filter(|&c| curve.is_tau_invariant(c))
        .count();
    let sigma_projection_degrees: Vec<i64> = comps.iter().map(|c| c.p1_degree).collect();
    let sigma_hopf = hopf_invariant(&curve);
    let group = build_group(Family::Cyclic(d))?;
    let model = cover_sigma_model(&group);
    let model_hopf = hopf_of_cover(&group);
    let sigma_all_circles = comps.iter().all(|c| c.kind == CurveKind::Circle);
    let agree = comps.len() == model.components.len()
        && sigma_invariant == model.invariant_count()
        && sigma_all_circles
        && sigma_projection_degrees.iter().all(|&p| p == 1)
        && sigma_hopf == model_hopf;
    Ok(DCoverReport {
        d,
        sigma_components: comps.len(),
        sigma_invariant,
        sigma_all_circles,
        sigma_projection_degrees,
        sigma_hopf,
        model_components: model.components.len(),
        model_invariant: model.invariant_count(),
        model_hopf,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(f: Family) -> FiniteSubgroupS3 {
        build_group(f).unwrap()
    }

    #[test]
    fn verdicts_for_small_groups() {
        let q8 = group(Family::BinaryDihedral(2));
        assert!(!cover_realizable(&q8));
        assert_eq!(hopf_of_cover(&q8), 1);
        let z2 = group(Family::Cyclic(2));
        assert!(!cover_realizable(&z2));
        let z3 = group(Family::Cyclic(3));
        assert!(cover_realizable(&z3));
        assert_eq!(hopf_of_cover(&group(Family::Cyclic(7))), 0);
        assert_eq!(hopf_of_cover(&group(Family::BinaryIcosahedral)), 1);
    }

    #[test]
    fn involutions_of_even_cyclic_groups() {
        for k in 1..=6 {
            assert_eq!(involution_count(&group(Family::Cyclic(2 * k))), 1);
        }
        assert_eq!(involution_count(&group(Family::Cyclic(5))), 0);
    }

    #[test]
    fn sigma_models() {
        let sizes = [
            (Family::Cyclic(2), 1, 1),
            (Family::Cyclic(4), 3, 1),
            (Family::BinaryDihedral(2), 7, 1),
            (Family::Cyclic(9), 8, 0),
        ];
        for (f, comps, inv) in sizes {
            let m = cover_sigma_model(&group(f));
            assert_eq!(m.components.len(), comps);
            assert_eq!(m.invariant_count(), inv);
        }
    }

    #[test]
    fn realizability_verdict_by_target_group() {
        assert!(!nonrealizable_map_exists(Pi1::Infinite));
        assert!(nonrealizable_map_exists(Pi1::Finite(&group(
            Family::Cyclic(4)
        ))));
        assert!(!nonrealizable_map_exists(Pi1::Finite(&group(
            Family::Cyclic(1)
        ))));
    }

    #[test]
    fn higher_dimensions_refused() {
        let z4 = group(Family::Cyclic(4));
        assert_eq!(cover_realizable_in_dimension(&z4, 3), Ok(false));
        assert_eq!(
            cover_realizable_in_dimension(&z4, 7),
            Err(DimensionError::Unsupported(7))
        );
    }

    #[test]
    fn circle_covers_match_cyclic_models() {
        let two = dcover_consistency(2).unwrap();
        assert!(two.agree);
        assert_eq!((two.sigma_components, two.sigma_invariant), (1, 1));
        let three = dcover_consistency(3).unwrap();
        assert!(three.agree);
        assert_eq!((three.sigma_components, three.sigma_invariant), (2, 0));
        for d in 2..=12 {
            assert!(dcover_consistency(d).unwrap().agree, "d = {d}");
        }
        assert!(dcover_consistency(1).is_err());
    }
}

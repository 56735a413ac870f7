//! Double-point curves of piecewise-linear circle maps.
//!
//! The crate computes, with exact rational arithmetic, the set of double
//! points of a generic piecewise-linear map of the circle, the arc-unfolding
//! algorithms built on top of it, realizability and Hopf-invariant verdicts
//! for finite groups acting freely on the 3-sphere, and level-set movies
//! with disjoint-disk certificates.
//!
//! Everything is generic over a [`Scalar`]; the aliases below fix the
//! default, arbitrary-precision choice.

pub mod circle_maps;
pub mod double_points;
pub mod scalar;
pub mod space_forms;
pub mod sweeps;
pub mod unfolding;

pub use scalar::Scalar;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

pub type Angle = circle_maps::Angle<Rational>;
pub type CircleMap = circle_maps::PLCircleMap<Rational>;
pub type Arc = circle_maps::TransverseArc<Rational>;
pub type Classification = circle_maps::PreimageClassification<Rational>;
pub type Curve = double_points::DoublePointCurve<Rational>;
pub type Movie = sweeps::SweepMovie<Rational>;
pub type Placement = sweeps::DiskPlacement<Rational>;

//! Constructive moves on preimages of arcs: balanced paths, elimination of
//! negative arcs, and the combinatorial pieces used alongside them.

mod balanced;
mod corners;
mod eliminate;
mod euler;
mod pair_degree;
mod surgery;

pub use balanced::{balanced_path_towards, find_balanced_path, BalancedPath, Direction, PathError};
pub use corners::{corner_connectivity, CornerReport, IntervalError, IntervalMapPair};
pub use eliminate::{
    eliminate_negative_arcs, interior_regular_value, signed_fiber_sums, Phase, UnfoldError,
    UnfoldMode, UnfoldResult, UnfoldStep, UnfoldTrace,
};
pub use euler::{
    eulerian_resolution, random_euler_graph, EulerGraph, GraphComponent, GraphError, Resolution,
};
pub use pair_degree::{pair_degree_check, PairDegreeReport, PairDegreeRow};
pub use surgery::{surgery_parity, SurgeryError, SurgeryParity};

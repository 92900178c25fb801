//! Capacity-distortion region bounds: grid evaluation of the degraded-channel
//! region, the general outer and inner bounds for given auxiliaries, closed
//! forms for the worked examples, baselines and Pareto frontiers.

mod baselines;
mod bounds;
mod closed_form;
pub mod export;
pub mod figures;
mod grid;
mod point;

pub use baselines::{
    dueck_resource_splitting, dueck_time_sharing, multiplicative_communication_point,
    multiplicative_max_distortions, multiplicative_resource_splitting,
    multiplicative_sensing_point, multiplicative_time_sharing, time_sharing, SumRateSegment,
};
pub use bounds::{
    degraded_point, degraded_points, degraded_region, dueck_preset, prop3_inner, rate_corners,
    theorem1_envelope, theorem1_outer, DueckPreset, InnerAux, InnerBound, OuterAux, OuterBound,
};
pub use closed_form::{
    corollary1_region, corollary2_region, dueck_distortion_bound, dueck_inner,
    dueck_inner_sum_rate, dueck_min_distortion, dueck_outer, dueck_outer_sum_rate,
    golden_section_max, DueckInner, DueckOuter, DueckRegime, GOLDEN_TOL,
};
pub use grid::{SimplexGrid, DEFAULT_GRID_CAP};
pub use point::{pareto_frontier, ParetoSet, RegionPoint};

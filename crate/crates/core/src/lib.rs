//! Exact computation of Gieseker walls and ample cones for moduli spaces of
//! sheaves on the projective plane.

pub mod ample;
pub mod chern;
pub mod error;
pub mod exactmath;
pub mod exceptional;
pub mod extremal;
pub mod walls;

pub use chern::{disc_lattice, euler_pair, sym_pair, ChernChar, DiscLattice};
pub use error::{Condition, Error, Result};
pub use exactmath::{farey_pred, quad_cmp, Int, QuadVal, Rat};
pub use exceptional::{containing_exceptional, delta, exc_slope, ExcSlope};
pub use extremal::{
    chi_chain, classify, curve_decomposition, extremal_triple, min_stable_disc, minimal_triple,
    Classification, CurveKind, Decomposition, Stability,
};
pub use walls::{
    delta_one, exclusion_search, gieseker_wall, on_wall, potential_wall, rank_bound_radius_sq, Certificate,
    GiesekerReport, Wall,
};
pub use ample::{ample_cone, duy_edge, primary_ray, singular_locus_empty, u1, AmpleReport};

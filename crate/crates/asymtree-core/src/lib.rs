//! Computable asymptotic geometry of the hyperbolic plane.
//!
//! The crate has four layers, each usable on its own:
//!
//! * [`hyperbolic`] — numerically stable distance kernels for the
//!   hyperbolic plane in unit-disk and polar coordinates, including a
//!   log-domain evaluator that stays finite for radii up to `1e5`, the
//!   large-scale max-formula, and its measured convergence error.
//! * [`levelled`] — finite formal sums `c1*u^g1 + c2*u^g2 + ...` over
//!   exact rational exponents: a desk-scale stand-in for numbers with
//!   infinitesimal and infinite parts, with greedy leading-term
//!   decomposition and exact synthesis.
//! * [`tree`] — three exact separation-metric spaces of profiles
//!   (piecewise-linear, finite-support, and circle-topped
//!   finite-support), with geodesics, branch points, and the four-point
//!   tree-metric check, all in rational arithmetic.
//! * [`correspond`] — realizes tree profiles as hyperbolic points at a
//!   finite scale `n` and measures how fast the rescaled hyperbolic
//!   distance approaches the tree distance.
//!
//! [`sampling`] provides seedable generators for all of the above so
//! that experiments and property suites are reproducible bit-for-bit.

pub mod correspond;
pub mod hyperbolic;
pub mod levelled;
pub mod rat;
pub mod sampling;
pub mod tree;

pub use correspond::{pair_error, realize_at_scale, subcone_witness, ConvergenceRow, Realization};
pub use hyperbolic::{
    convergence_error, disk_distance, polar_distance, polar_distance_log_gap, polar_to_disk,
    scaled_distance, tree_limit_estimate, AsymptoticParams, DiskPoint, PolarPoint,
};
pub use levelled::{parse_levelled, CircleLevelled, Level, LevelledNumber, Spectrum};
pub use tree::{four_point_check, Profile, ProfileC, ProfileD, ProfileF, TreeProfile};

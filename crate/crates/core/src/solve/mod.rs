//! Counting solutions of zero-dimensional systems by triangular decomposition.

pub mod affine;
pub mod plane;
pub mod rng;
pub mod tower;

pub use affine::{count_affine_solutions, count_affine_solutions_with, solve_affine, AffineSolution, Arith};
pub use plane::{count_plane_points, count_plane_points_with, is_reduced_at, PlaneOptions, local_multiplicity, FanCount, FanPoint, PlaneSystem};
pub use rng::Lcg;

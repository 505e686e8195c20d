//! Random assignment processes over dense cost matrices: the greedy
//! row-maximum strategy, exact Hungarian/brute-force solvers, closed-form
//! extreme-value constants, a quadrature oracle for max-of-normals moments,
//! and seeded, reproducible Monte Carlo experiment drivers.

pub mod asymptotics;
pub mod error;
pub mod experiments;
pub mod greedy;
pub mod matrix;
pub mod sampling;
pub mod solver;
pub mod stats;

pub use error::Error;
pub use matrix::{
    assignment_value, validate_permutation, AssignmentResult, CostMatrix, Method, Permutation,
};
pub use sampling::{DistributionKind, RunSeed};

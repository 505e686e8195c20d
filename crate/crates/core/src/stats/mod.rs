//! Distribution functions, the quadrature oracle for exact max-of-normals
//! moments, empirical-CDF distance, and sample moment summaries.

mod gumbel;
mod ks;
mod moments;
mod phi;
mod quad;
mod summary;

pub use gumbel::{gumbel_cdf, gumbel_moments, gumbel_moments_quadrature};
pub use ks::ks_distance;
pub use moments::{
    cumulative_moments, exact_max_moments, lyapunov_fraction, max_density_mass,
    CumulativeMoments, MaxMoments,
};
pub use phi::{phi_cdf, phi_tail};
pub use summary::{summarize, SampleSummary, Welford};

//! Gumbel distribution: CDF exp(−e^{−x}), closed-form moments (γ, ζ(2)),
//! and a quadrature cross-check of those moments.

use crate::asymptotics::{EULER_GAMMA, ZETA2};
use crate::error::Error;
use crate::stats::quad::integrate;

pub fn gumbel_cdf(x: f64) -> f64 {
    (-(-x).exp()).exp()
}

/// (mean, variance) = (γ, π²/6).
pub fn gumbel_moments() -> (f64, f64) {
    (EULER_GAMMA, ZETA2)
}

/// Integrate the Gumbel density directly; reproduces (γ, π²/6) to ~1e-10
/// and serves as the oracle check that the closed forms are wired right.
pub fn gumbel_moments_quadrature() -> Result<(f64, f64), Error> {
    let dens = |x: f64| (-x - (-x).exp()).exp();
    let pts = [-6.0, -2.0, 0.0, EULER_GAMMA, 3.0, 10.0, 45.0];
    let fail = |what: &str| Error::QuadratureFailure(format!("gumbel {what}"));
    let mean =
        integrate(&|x| x * dens(x), &pts, 1e-11, 2_000_000).ok_or_else(|| fail("mean"))?;
    let var = integrate(&|x| (x - mean) * (x - mean) * dens(x), &pts, 1e-11, 2_000_000)
        .ok_or_else(|| fail("variance"))?;
    Ok((mean, var))
}

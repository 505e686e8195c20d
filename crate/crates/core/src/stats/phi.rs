//! Standard normal CDF and tail via the complementary error function.

use std::f64::consts::FRAC_1_SQRT_2;

pub fn phi_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Φ̂(x) = 1 − Φ(x), computed without cancellation: full relative
/// precision deep into the right tail.
pub fn phi_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[inline]
pub(crate) fn ln_phi_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

/// log Φ(x); uses log1p on the tail side so x ≫ 0 stays accurate.
#[inline]
pub(crate) fn ln_phi_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        phi_cdf(x).ln()
    } else {
        (-phi_tail(x)).ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_and_oracle_points() {
        assert_eq!(phi_cdf(0.0), 0.5);
        assert_eq!(phi_tail(0.0), 0.5);
        assert!((phi_cdf(1.96) - 0.975_002_104_851_779_6).abs() <= 1e-13);
        assert!((phi_cdf(-1.96) - 0.024_997_895_148_220_43).abs() <= 1e-13);
        let t5 = phi_tail(5.0);
        assert!((t5 - 2.866_515_718_791_939e-7).abs() / 2.866_515_718_791_939e-7 <= 1e-10);
        let t10 = phi_tail(10.0);
        assert!((t10 - 7.619_853_024_160_526e-24).abs() / 7.619_853_024_160_526e-24 <= 1e-9);
    }

    #[test]
    fn symmetry_identity() {
        let mut x = 0.0;
        while x <= 8.0 {
            assert!((phi_cdf(-x) - (1.0 - phi_cdf(x))).abs() <= 1e-14, "x = {x}");
            x += 0.25;
        }
    }

    #[test]
    fn cdf_plus_tail_is_one() {
        let mut x = -8.0;
        while x <= 8.0 {
            assert!((phi_cdf(x) + phi_tail(x) - 1.0).abs() <= 1e-12, "x = {x}");
            x += 0.01;
        }
    }

    #[test]
    fn monotone_on_dense_grid() {
        let mut prev = f64::NEG_INFINITY;
        let mut x = -8.0;
        while x <= 8.0 {
            let f = phi_cdf(x);
            assert!(f >= prev, "dip at x = {x}");
            prev = f;
            x += 1e-3;
        }
    }

    #[test]
    fn log_forms_consistent() {
        for &x in &[-10.0, -3.0, -0.5, 0.0, 0.5, 3.0, 8.0] {
            assert!((ln_phi_cdf(x) - phi_cdf(x).ln()).abs() <= 1e-12 * ln_phi_cdf(x).abs().max(1.0));
            assert!((ln_phi_pdf(x) - ((-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()).ln()).abs() <= 1e-12);
        }
    }
}

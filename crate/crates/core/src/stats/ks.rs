//! Kolmogorov–Smirnov distance between a sorted sample and a reference CDF.

use crate::error::Error;

/// sup over sample points of max(|i/N − F(xᵢ)|, |(i−1)/N − F(xᵢ)|).
/// The sample must be sorted ascending.
pub fn ks_distance<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<f64, Error> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    assert!(
        sample.windows(2).all(|w| w[0] <= w[1]),
        "ks_distance requires a sorted sample"
    );
    let n = sample.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sample.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((i as f64 / n - f).abs());
    }
    Ok(d)
}

//! One-pass (Welford) moment accumulation and sample summaries.

use crate::error::Error;

/// Sample moments: unbiased variance, third absolute central moment with
/// divisor `count` (plain moment estimator), and the standard error of the
/// mean √(variance/count).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub third_abs_central: f64,
    pub std_error: f64,
}

/// Streaming mean / M2 / signed M3 with the standard pairwise-merge
/// identities, so partial summaries can be combined in any partition.
#[derive(Debug, Clone, Copy, Default)]
pub struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
    m3: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        let n1 = self.n as f64;
        self.n += 1;
        let n = self.n as f64;
        let delta = x - self.mean;
        let delta_n = delta / n;
        let term1 = delta * delta_n * n1;
        self.mean += delta_n;
        self.m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term1;
    }

    pub fn merge(&self, other: &Welford) -> Welford {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let delta = other.mean - self.mean;
        Welford {
            n: self.n + other.n,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
            m3: self.m3
                + other.m3
                + delta * delta * delta * na * nb * (na - nb) / (n * n)
                + 3.0 * delta * (na * other.m2 - nb * self.m2) / n,
        }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Centered second-moment sum Σ(x−mean)².
    pub fn m2(&self) -> f64 {
        self.m2
    }

    /// Centered signed third-moment sum Σ(x−mean)³.
    pub fn m3(&self) -> f64 {
        self.m3
    }

    pub fn variance_unbiased(&self) -> Option<f64> {
        (self.n >= 2).then(|| self.m2 / (self.n - 1) as f64)
    }
}

/// Summarize a sample: one Welford pass for mean/variance, then one
/// centered pass for the third absolute moment (which has no exact
/// single-pass recurrence).
pub fn summarize(sample: &[f64]) -> Result<SampleSummary, Error> {
    if sample.len() < 2 {
        return Err(Error::InsufficientData {
            count: sample.len(),
        });
    }
    let mut w = Welford::default();
    for &x in sample {
        w.push(x);
    }
    let count = sample.len();
    let mean = w.mean();
    let variance = w.variance_unbiased().expect("count >= 2");
    let third_abs_central = sample
        .iter()
        .map(|&x| {
            let d = x - mean;
            d.abs() * d * d
        })
        .sum::<f64>()
        / count as f64;
    Ok(SampleSummary {
        count,
        mean,
        variance,
        third_abs_central,
        std_error: (variance / count as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sample() {
        let s = summarize(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(s.mean, 1.0);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.third_abs_central, 0.0);
        assert_eq!(s.std_error, 0.0);
    }

    #[test]
    fn two_points() {
        let s = summarize(&[0.0, 2.0]).unwrap();
        assert_eq!(s.mean, 1.0);
        assert_eq!(s.variance, 2.0);
        assert_eq!(s.std_error, 1.0);
        assert_eq!(s.third_abs_central, 1.0);
    }

    #[test]
    fn insufficient_data() {
        assert!(matches!(
            summarize(&[1.0]),
            Err(Error::InsufficientData { count: 1 })
        ));
        assert!(summarize(&[]).is_err());
    }

    // Kahan-compensated two-pass reference.
    fn two_pass(sample: &[f64]) -> (f64, f64, f64) {
        let mut sum = 0.0f64;
        let mut c = 0.0f64;
        for &x in sample {
            let y = x - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        let mean = sum / sample.len() as f64;
        let m2: f64 = sample.iter().map(|&x| (x - mean) * (x - mean)).sum();
        let m3: f64 = sample.iter().map(|&x| (x - mean).powi(3)).sum();
        (mean, m2, m3)
    }

    #[test]
    fn one_pass_agrees_with_two_pass_on_offset_data() {
        // Values near 1e6 with unit-scale wiggle: the regime where naive
        // accumulation loses digits.
        let sample: Vec<f64> = (0..100_000)
            .map(|i| 1.0e6 + (i as f64 * 0.7).sin() + 0.3 * (i as f64 * 0.13).cos())
            .collect();
        let mut w = Welford::default();
        for &x in &sample {
            w.push(x);
        }
        let (mean, m2, m3) = two_pass(&sample);
        assert!((w.mean() - mean).abs() / mean.abs() <= 1e-12);
        assert!((w.m2() - m2).abs() / m2.abs() <= 1e-9);
        // Third moments cancel almost fully here, so compare at the
        // natural m2^(3/2) scale instead of relative to the tiny m3.
        assert!((w.m3() - m3).abs() <= 1e-10 * m2.powf(1.5) + 1e-9 * m3.abs());
        let s = summarize(&sample).unwrap();
        assert!((s.variance - m2 / (sample.len() - 1) as f64).abs() / s.variance <= 1e-9);
    }

    #[test]
    fn merge_is_partition_independent() {
        let sample: Vec<f64> = (0..10_000)
            .map(|i| 50.0 + (i as f64 * 1.3).sin() * 3.0)
            .collect();
        let mut whole = Welford::default();
        for &x in &sample {
            whole.push(x);
        }
        for split in [1usize, 137, 5000, 9999] {
            let (a, b) = sample.split_at(split);
            let mut wa = Welford::default();
            let mut wb = Welford::default();
            a.iter().for_each(|&x| wa.push(x));
            b.iter().for_each(|&x| wb.push(x));
            let merged = wa.merge(&wb);
            assert_eq!(merged.count(), whole.count());
            assert!((merged.mean() - whole.mean()).abs() <= 1e-12 * whole.mean().abs());
            assert!((merged.m2() - whole.m2()).abs() <= 1e-9 * whole.m2().abs());
            assert!((merged.m3() - whole.m3()).abs() <= 1e-9 * whole.m3().abs().max(1.0));
        }
        // Merging with an empty accumulator is the identity.
        let empty = Welford::default();
        let same = whole.merge(&empty);
        assert_eq!(same.count(), whole.count());
        assert_eq!(same.mean(), whole.mean());
    }
}

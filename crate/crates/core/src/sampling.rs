//! Seeded, stream-split random generation of cost matrices.
//!
//! Reproducibility contract: every draw is a pure function of
//! `(master, trial)`. The master seed is expanded into a ChaCha8 key with a
//! splitmix64 chain; the trial index selects an independent keystream, so
//! trials can run on any worker in any order without changing a single draw.

use rand::RngCore;

use crate::error::Error;
use crate::matrix::CostMatrix;

pub use rand_chacha::ChaCha8Rng as Stream;

/// Identifies one sample stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunSeed {
    pub master: u64,
    pub trial: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistributionKind {
    /// Standard normal, mean 0 variance 1.
    Gaussian,
    /// Exp(1).
    Exponential,
    /// Uniform on [0, 1).
    Uniform,
}

impl DistributionKind {
    pub fn label(&self) -> &'static str {
        match self {
            DistributionKind::Gaussian => "gaussian",
            DistributionKind::Exponential => "exponential",
            DistributionKind::Uniform => "uniform",
        }
    }
}

impl std::fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "gaussian" | "normal" => Ok(DistributionKind::Gaussian),
            "exp" | "exponential" => Ok(DistributionKind::Exponential),
            "uniform" => Ok(DistributionKind::Uniform),
            _ => Err(Error::InvalidConfig(format!("unknown distribution {s:?}"))),
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic pseudorandom stream for `(master, trial)`.
pub fn derive_stream(seed: RunSeed) -> Stream {
    use rand::SeedableRng;
    let mut state = seed.master;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = Stream::from_seed(key);
    rng.set_stream(seed.trial);
    rng
}

/// Uniform on [0, 1) with 53 random bits, platform-independent.
#[inline]
pub fn next_uniform(rng: &mut Stream) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws i.i.d. variates of one distribution from a derived stream.
///
/// Gaussians use the polar (Marsaglia) rejection form of Box–Muller; the
/// spare variate is kept, so consumption order is well defined and matrix
/// fills are reproducible entry by entry.
#[derive(Debug)]
pub struct Sampler {
    dist: DistributionKind,
    rng: Stream,
    spare: Option<f64>,
}

impl Sampler {
    pub fn new(dist: DistributionKind, seed: RunSeed) -> Self {
        Self {
            dist,
            rng: derive_stream(seed),
            spare: None,
        }
    }

    pub fn dist(&self) -> DistributionKind {
        self.dist
    }

    #[inline]
    pub fn next(&mut self) -> f64 {
        match self.dist {
            DistributionKind::Gaussian => self.next_gaussian(),
            DistributionKind::Exponential => {
                // Inverse CDF −log(1−U); U ∈ [0,1) keeps the argument positive.
                -(-next_uniform(&mut self.rng)).ln_1p()
            }
            DistributionKind::Uniform => next_uniform(&mut self.rng),
        }
    }

    #[inline]
    fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * next_uniform(&mut self.rng) - 1.0;
            let v = 2.0 * next_uniform(&mut self.rng) - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let k = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * k);
                return u * k;
            }
        }
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        for x in out {
            *x = self.next();
        }
    }
}

/// n×n matrix of i.i.d. draws, filled row-major from the derived stream.
pub fn gen_matrix(n: usize, dist: DistributionKind, seed: RunSeed) -> Result<CostMatrix, Error> {
    if n == 0 {
        return Err(Error::InvalidSize);
    }
    let mut sampler = Sampler::new(dist, seed);
    let mut entries = vec![0.0; n * n];
    sampler.fill(&mut entries);
    CostMatrix::new(n, entries, Some(dist))
}

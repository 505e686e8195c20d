//! Closed-form constants and bounds for the maximum of the assignment
//! process: the n√(2 log n) leading order, the √(2·log(n!)·n) upper bound,
//! Gumbel norming constants for maxima of normals, CLT centering/scaling
//! for the greedy sum, and the ζ(2) partial-sum / uniform-cost expansions
//! for minimum assignments.

use crate::error::Error;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Centering a_m and scaling b_m for the max of m i.i.d. standard normals:
/// (max − a_m)/b_m converges weakly to Gumbel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GumbelNorming {
    pub m: u64,
    pub a_m: f64,
    pub b_m: f64,
}

/// First-order prediction for the mean and variance of the greedy sum:
/// per-row Gumbel approximations accumulated over row sizes m = n..1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltConstants {
    pub n: u64,
    pub a_n: f64,
    pub b_n_sq: f64,
}

/// n·√(2 log n), the normalizer of the maximum-assignment limit.
pub fn leading_order(n: u64) -> Result<f64, Error> {
    if n < 2 {
        return Err(Error::Domain {
            op: "leading_order",
            requirement: "requires n >= 2",
        });
    }
    let nf = n as f64;
    Ok(nf * (2.0 * nf.ln()).sqrt())
}

/// √(2·log(n!)·n), an upper bound for E max over all permutations;
/// log(n!) goes through log-gamma so large n neither overflows nor loses
/// precision to a naive product.
pub fn fernique_upper(n: u64) -> f64 {
    let log_fact = libm::lgamma(n as f64 + 1.0);
    (2.0 * log_fact * n as f64).sqrt()
}

pub fn gumbel_norming(m: u64) -> Result<GumbelNorming, Error> {
    if m < 2 {
        return Err(Error::Domain {
            op: "gumbel_norming",
            requirement: "requires m >= 2",
        });
    }
    let s = (2.0 * (m as f64).ln()).sqrt();
    let a_m = s - ((m as f64).ln().ln() + (4.0 * std::f64::consts::PI).ln()) / (2.0 * s);
    Ok(GumbelNorming { m, a_m, b_m: 1.0 / s })
}

// The tail bound expression without the domain guard; negative (vacuous)
// for r < 1, which the witness chain below tolerates.
fn tail_lower_raw(r: f64) -> f64 {
    let inv_sqrt_2pi = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    inv_sqrt_2pi * (1.0 / r - 1.0 / (r * r * r)) * (-0.5 * r * r).exp()
}

/// (1/√(2π))·(1/r − 1/r³)·e^{−r²/2}, a lower bound for the normal tail
/// Φ̂(r). Restricted to r > 1 where the bound is positive and useful.
pub fn normal_tail_lower(r: f64) -> Result<f64, Error> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::Domain {
            op: "normal_tail_lower",
            requirement: "requires finite r > 1",
        });
    }
    Ok(tail_lower_raw(r))
}

/// r·(1 − exp(−m·tail_lower(r))) at r = √(2 log m) − 1: a lower bound for
/// the expected positive part of the max of m normals. For 3 ≤ m ≤ 7 the
/// threshold r falls below 1 and the bound is vacuous (negative) but still
/// valid; from m = 8 on it is positive and climbs toward √(2 log m).
pub fn lower_bound_witness(m: u64) -> Result<f64, Error> {
    if m < 3 {
        return Err(Error::Domain {
            op: "lower_bound_witness",
            requirement: "requires m >= 3",
        });
    }
    let r = (2.0 * (m as f64).ln()).sqrt() - 1.0;
    Ok(r * (1.0 - (-(m as f64) * tail_lower_raw(r)).exp()))
}

/// First-order CLT constants for the greedy sum: A_n = Σ_{m=2..n}(a_m + γ·b_m)
/// and B_n² = Σ_{m=2..n} ζ(2)·b_m², plus the exact single-normal moments
/// (0, 1) for the m = 1 row where the norming is undefined.
pub fn clt_constants(n: u64) -> Result<CltConstants, Error> {
    if n < 1 {
        return Err(Error::Domain {
            op: "clt_constants",
            requirement: "requires n >= 1",
        });
    }
    let mut a_n = 0.0;
    let mut b_n_sq = 1.0;
    for m in 2..=n {
        let GumbelNorming { a_m, b_m, .. } = gumbel_norming(m)?;
        a_n += a_m + EULER_GAMMA * b_m;
        b_n_sq += ZETA2 * b_m * b_m;
    }
    Ok(CltConstants { n, a_n, b_n_sq })
}

/// Σ_{k=1..n} 1/k²: the exact expected minimum assignment with Exp(1)
/// costs; converges to ζ(2). Summed smallest-term-first.
pub fn parisi_sum(n: u64) -> Result<f64, Error> {
    if n < 1 {
        return Err(Error::Domain {
            op: "parisi_sum",
            requirement: "requires n >= 1",
        });
    }
    let mut s = 0.0;
    for k in (1..=n).rev() {
        let kf = k as f64;
        s += 1.0 / (kf * kf);
    }
    Ok(s)
}

/// ζ(2) − (ζ(2) + 2ζ(3))/n: two-term expansion of the expected minimum
/// assignment with Uniform(0,1) costs; the remainder is O(1/n²).
pub fn steele_expansion(n: u64) -> Result<f64, Error> {
    if n < 2 {
        return Err(Error::Domain {
            op: "steele_expansion",
            requirement: "requires n >= 2",
        });
    }
    Ok(ZETA2 - (ZETA2 + 2.0 * ZETA3) / n as f64)
}

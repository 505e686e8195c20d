//! Exact assignment solvers: an O(n³) shortest-augmenting-path Hungarian
//! (Jonker–Volgenant flavor, dual potentials in double precision) and a
//! lexicographic brute-force enumerator used as its oracle at small n.

use crate::error::Error;
use crate::matrix::{assignment_value, AssignmentResult, CostMatrix, Method, Permutation};

#[derive(Debug, Clone, Copy)]
pub struct SolverLimits {
    pub brute_force_max_n: usize,
}

/// 10! ≈ 3.6e6 permutations is the practical ceiling; the default stays
/// well under it.
pub const BRUTE_FORCE_HARD_CAP: usize = 10;

impl Default for SolverLimits {
    fn default() -> Self {
        Self { brute_force_max_n: 8 }
    }
}

/// Advance `a` to the next permutation in lexicographic order.
/// Returns false (leaving `a` sorted ascending) after the last one.
pub fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn brute_force_max(m: &CostMatrix) -> Result<AssignmentResult, Error> {
    brute_force_max_with(m, SolverLimits::default())
}

/// Enumerate all n! permutations; ties go to the lexicographically
/// smallest maximizer, which the strict comparison below guarantees
/// because enumeration is lexicographic.
pub fn brute_force_max_with(m: &CostMatrix, limits: SolverLimits) -> Result<AssignmentResult, Error> {
    let n = m.n();
    let limit = limits.brute_force_max_n.min(BRUTE_FORCE_HARD_CAP);
    if n > limit {
        return Err(Error::SizeExceeded { n, limit });
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut best_val = f64::NEG_INFINITY;
    let mut best: Vec<usize> = idx.clone();
    loop {
        let mut v = 0.0;
        for (i, &j) in idx.iter().enumerate() {
            v += m.get(i, j);
        }
        if v > best_val {
            best_val = v;
            best.copy_from_slice(&idx);
        }
        if !next_permutation(&mut idx) {
            break;
        }
    }
    let perm = Permutation::from_zero_based(best).expect("enumerated permutations are valid");
    Ok(AssignmentResult {
        perm,
        value: best_val,
        method: Method::BruteForce,
    })
}

/// Exact minimum-cost assignment by shortest augmenting paths with dual
/// potentials (the classic 1-indexed formulation with a virtual column 0).
pub fn hungarian_min(m: &CostMatrix) -> AssignmentResult {
    let n = m.n();
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    // p[j] = row matched to column j (1-based; 0 = free).
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![0.0f64; n + 1];
    let mut used = vec![false; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        minv[..].fill(f64::INFINITY);
        used[..].fill(false);
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = m.get(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        // Walk the augmenting path back, flipping matches.
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut mapping = vec![0usize; n];
    for j in 1..=n {
        mapping[p[j] - 1] = j - 1;
    }
    let perm = Permutation::from_zero_based(mapping).expect("matching is a bijection");
    let value = assignment_value(m, &perm).expect("dimensions agree");
    debug_assert!(dual_feasible(m, &u, &v), "dual potentials infeasible");
    AssignmentResult {
        perm,
        value,
        method: Method::Hungarian,
    }
}

// Complementary feasibility of the final potentials, up to accumulated
// rounding: every reduced cost should be ≥ −tol.
#[cfg(debug_assertions)]
fn dual_feasible(m: &CostMatrix, u: &[f64], v: &[f64]) -> bool {
    let n = m.n();
    let scale = m
        .entries()
        .iter()
        .fold(1.0f64, |acc, x| acc.max(x.abs()));
    let tol = 1e-9 * scale * n as f64;
    (1..=n).all(|i| (1..=n).all(|j| m.get(i - 1, j - 1) - u[i] - v[j] >= -tol))
}

#[cfg(not(debug_assertions))]
fn dual_feasible(_m: &CostMatrix, _u: &[f64], _v: &[f64]) -> bool {
    true
}

/// Exact maximum: minimize the negated matrix and negate the value.
pub fn hungarian_max(m: &CostMatrix) -> AssignmentResult {
    let r = hungarian_min(&m.negated());
    AssignmentResult {
        perm: r.perm,
        value: -r.value,
        method: Method::Hungarian,
    }
}

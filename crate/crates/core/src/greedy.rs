//! Greedy strategy: rows in natural order, each takes the maximum entry
//! among still-available columns. Ties break to the smallest column index.

use crate::matrix::{AssignmentResult, CostMatrix, Method, Permutation};

/// Run the greedy strategy on rows produced one at a time.
///
/// `fill_row(i, buf)` must write row `i` into `buf`; it is called exactly
/// once per row, in order. This lets large Monte Carlo runs stream rows
/// straight from a sampler without materializing the n×n matrix, and it is
/// entry-for-entry equivalent to running on the materialized matrix.
///
/// Returns the assignment together with the per-row picks X_{i,π(i)}.
pub fn greedy_with<F>(n: usize, mut fill_row: F) -> (AssignmentResult, Vec<f64>)
where
    F: FnMut(usize, &mut [f64]),
{
    assert!(n >= 1, "greedy needs n >= 1");
    let mut row = vec![0.0; n];
    let mut available = vec![true; n];
    let mut mapping = Vec::with_capacity(n);
    let mut marginals = Vec::with_capacity(n);
    let mut value = 0.0;
    for i in 0..n {
        fill_row(i, &mut row);
        let mut best: Option<usize> = None;
        for j in 0..n {
            // Strict comparison keeps the first (smallest) column on ties.
            if available[j] && best.is_none_or(|b| row[j] > row[b]) {
                best = Some(j);
            }
        }
        let j = best.expect("an available column always remains");
        available[j] = false;
        mapping.push(j);
        marginals.push(row[j]);
        value += row[j];
    }
    let perm = Permutation::from_zero_based(mapping).expect("greedy picks distinct columns");
    (
        AssignmentResult {
            perm,
            value,
            method: Method::Greedy,
        },
        marginals,
    )
}

pub fn greedy_assign(m: &CostMatrix) -> AssignmentResult {
    greedy_with(m.n(), |i, buf| buf.copy_from_slice(m.row(i))).0
}

/// The per-row picks X_{i,π*(i)}; row i's pick is the maximum of the
/// n−i+1 columns still available at step i.
pub fn greedy_marginals(m: &CostMatrix) -> Vec<f64> {
    greedy_with(m.n(), |i, buf| buf.copy_from_slice(m.row(i))).1
}

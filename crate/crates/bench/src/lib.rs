//! Workloads shared by the benchmarks.

use idealizer_core::{basis_enumerate, BasisElement, RingContext};

/// Every ordered pair of basis elements of weight at most `max_weight`.
pub fn basis_pairs(ctx: &RingContext, max_weight: u64) -> Vec<(BasisElement, BasisElement)> {
    let basis = basis_enumerate(ctx, max_weight);
    basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

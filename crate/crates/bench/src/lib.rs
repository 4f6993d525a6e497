//! Benchmark fixtures shared by the criterion targets.

use quadcusp::{eisenstein, EisTriple, Level};

/// Every quadratic triple with DC ≤ `n_max`.
pub fn triples_up_to(n_max: u64) -> Vec<EisTriple> {
    Level::all_up_to(n_max)
        .into_iter()
        .flat_map(eisenstein::enumerate_quadratic_triples)
        .collect()
}

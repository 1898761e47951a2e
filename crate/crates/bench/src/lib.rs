//! Graphs shared by the criterion benchmarks.

use tricount::generators::rmat_graph;
use tricount::{EdgeArray, RmatParams};

/// R-MAT instance with default quadrant probabilities and edge factor 16.
pub fn rmat(scale: u32, seed: u64) -> EdgeArray {
    rmat_graph(
        RmatParams {
            scale,
            ..RmatParams::default()
        },
        seed,
    )
    .expect("valid R-MAT parameters")
}

/// Worker counts worth comparing on this machine: 1, then powers of two up
/// to the available parallelism.
pub fn worker_counts() -> Vec<usize> {
    let max = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut counts = vec![1];
    let mut w = 2;
    while w <= max {
        counts.push(w);
        w *= 2;
    }
    counts
}

//! Shared fixtures for the benchmark suite.

use emw_cli::random_plane_graph;
use emw_core::PlaneGraph;

/// A fixed mid-sized random instance for end-to-end benchmarks.
pub fn benchmark_instance(n: usize) -> PlaneGraph {
    random_plane_graph(n, 42, 1)
}

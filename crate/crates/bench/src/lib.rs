//! Fixed instances shared by the criterion benchmarks.

use vconn_core::generators::{planted_cut, random_connected_gnp, PlantedSpec};
use vconn_core::Graph;

/// Planted instance with a minimum separator of `separator` vertices.
pub fn planted(n: usize, separator: usize, seed: u64) -> Graph {
    let left = (n - separator) / 3;
    let spec = PlantedSpec {
        left,
        separator,
        right: n - separator - left,
        density: 0.3,
        attach: 0.3,
    };
    planted_cut(&spec, seed).expect("planted spec is feasible").graph
}

pub fn random(n: usize, p: f64, seed: u64) -> Graph {
    random_connected_gnp(n, p, seed)
}

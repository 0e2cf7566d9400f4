//! Shared inputs for the benchmarks.

use multicut_core::arcs::{greedy_system_of_arcs, ArcSystem};
use multicut_core::{random_planar_instance, GenConfig, Instance};

/// Random planar instance with the given size and seed.
pub fn planar(seed: u64, vertices: usize, terminals: usize) -> Instance {
    let cfg = GenConfig { vertices, terminals, max_edges: Some(2 * vertices + 2), ..GenConfig::default() };
    Instance::new(random_planar_instance(seed, &cfg).expect("generator succeeds")).expect("valid instance")
}

/// Arc system of `planar(seed, vertices, terminals)`.
pub fn arcs(seed: u64, vertices: usize, terminals: usize) -> ArcSystem {
    greedy_system_of_arcs(&planar(seed, vertices, terminals).carved).expect("arc system")
}

//! Shared inputs for the criterion benches.

use onion_core::{gen_random, nearest_neighbor, Instance, Point, Tour};

/// Seeded uniform instance.
pub fn uniform(n: usize, seed: u64) -> Instance {
    gen_random(n, seed).expect("n is positive")
}

/// A `k` by `k` integer grid. Heavy collinearity stresses the hull code.
pub fn grid(k: usize) -> Vec<Point> {
    (0..k * k)
        .map(|i| Point::new(i, (i / k) as f64, (i % k) as f64))
        .collect()
}

/// Nearest-neighbour start tour for the improvement benches.
pub fn nn_tour(inst: &Instance) -> Tour {
    nearest_neighbor(inst, 0).expect("instance is non-empty")
}

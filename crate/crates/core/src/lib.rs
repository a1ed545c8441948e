//! Convex layers for the planar travelling salesman problem.
//!
//! The point set is peeled into nested convex layers, either by repeated
//! hulls ([`convex_layers_naive`]) or with the deletion-only hull graph
//! ([`convex_layers_fast`]). The layers are merged into one tour by cheapest
//! two-edge splices, then refined with 2-opt or 3-opt. Exact solvers and a
//! seeded experiment harness measure the result.

pub mod bench;
pub mod construct;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod hull_graph;
pub mod improve;
pub mod io;
pub mod pipeline;
pub mod tsp;

pub use bench::{gen_circle, gen_random, run_experiment, BenchConfig, BenchReport, Rng};
pub use construct::{layer_merge, nearest_neighbor, splice, MergeOrder};
pub use error::{Error, Result};
pub use exact::{brute_force, held_karp};
pub use geometry::{
    convex_hull, convex_layers_naive, orientation, ConvexLayers, HullCycle, Orientation, Point,
};
pub use hull_graph::{convex_layers_fast, Chain, HullGraph};
pub use improve::{has_crossings, three_opt, two_opt, ImproveConfig};
pub use pipeline::{Construction, Improvement, Pipeline, PipelineRun};
pub use tsp::{distance, tour_length, validate_tour, Instance, Metric, Tour, TourViolation};

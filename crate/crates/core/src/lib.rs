//! Genetic algorithms for the symmetric travelling salesman problem built
//! around three genotype encodings:
//!
//! * **NSE** (node shift encoding): a vector of `n - 1` forward circular
//!   shifts applied, in order, to the cities of a fixed reference tour.
//! * **PR** (path representation): the visit order itself.
//! * **DC** (double chromosome): a guide of position pairs that are swapped
//!   on a fixed map tour.
//!
//! Around the encodings sit a TSPLIB reader, a nearest-neighbour seeding
//! heuristic, an elitist generational GA, an exhaustive referee for small
//! instances, an MTZ model exporter for external MIP solvers, and a
//! benchmark harness that writes CSV results and SVG plots.
//!
//! City indices are 0-based everywhere in the API. TSPLIB files, CSV
//! output and the CLI use 1-based indices; [`Tour::from_one_based`] and
//! [`Tour::to_one_based`] convert at the boundary.

pub mod bench;
pub mod encoding;
mod error;
pub mod exact;
pub mod ga;
pub mod heuristics;
pub mod tour;
pub mod tsplib;

pub use encoding::{EncodingAdapter, EncodingKind};
pub use error::{Error, Result};
pub use ga::{evolve, GaConfig, RunRecord, Seeding};
pub use tour::{canonical_tour, tour_cost, validate_tour, Tour, TourViolation};
pub use tsplib::{build_cost_matrix, parse_tsplib, CostMatrix, EdgeWeightKind, TspInstance};

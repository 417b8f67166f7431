//! Loads a TSPLIB instance and prints its best nearest-neighbour tour.
//!
//!     cargo run --example nearest_neighbour -- [path/to/instance.tsp]

use std::path::PathBuf;

use nse_tsp::heuristics::{best_nn_tour, nearest_neighbour};
use nse_tsp::{build_cost_matrix, tour_cost, TspInstance};

fn main() -> nse_tsp::Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/tsplib/berlin52.tsp")
    });
    let instance = TspInstance::from_file(&path)?;
    let matrix = build_cost_matrix(&instance)?;
    println!("{}: {} cities, {}", instance.name, instance.dimension, instance.edge_weight_kind);

    let from_first = nearest_neighbour(&matrix, 0)?;
    println!("from city 1: {}", tour_cost(&matrix, &from_first)?);

    let best = best_nn_tour(&matrix);
    println!("best start:  {} (starts at city {})", tour_cost(&matrix, &best)?, best.first() + 1);
    println!("{}", best.format_one_based("-"));
    Ok(())
}

//! Runs each of the six GA variants once on eil51.
//!
//!     cargo run --release --example solve

use std::path::Path;

use nse_tsp::bench::{adapter_for, Variant};
use nse_tsp::{build_cost_matrix, evolve, GaConfig, TspInstance};

fn main() -> nse_tsp::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tsplib/eil51.tsp");
    let matrix = build_cost_matrix(&TspInstance::from_file(path)?)?;

    for variant in Variant::ALL {
        let config = GaConfig {
            population_size: 100,
            iterations: 500,
            mutation_chance: 0.03,
            seeding: variant.seeding,
            rng_seed: 7,
            ..GaConfig::default()
        };
        let adapter = adapter_for(variant, matrix.n(), None)?;
        let run = evolve(&matrix, &adapter, &config)?;
        let history = &run.best_cost_per_generation;
        println!(
            "{variant:<9} start {:>5}  final {:>5}  {:>7.1} ms",
            history[0], run.final_best_cost, run.wall_clock_ms
        );
    }
    Ok(())
}

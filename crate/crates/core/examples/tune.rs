//! Grid-searches population size, iterations and mutation chance for one
//! variant on a small grid.
//!
//!     cargo run --release --example tune

use std::path::Path;

use nse_tsp::bench::{tune_parameters, ParameterGrid, Variant};
use nse_tsp::{build_cost_matrix, GaConfig, TspInstance};

fn main() -> nse_tsp::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tsplib/eil51.tsp");
    let matrix = build_cost_matrix(&TspInstance::from_file(path)?)?;
    let grid = ParameterGrid {
        population_sizes: vec![50, 100],
        iterations: vec![100, 500],
        mutation_chances: vec![0.01, 0.03, 0.05],
    };
    for name in ["NSE-RAND", "PR-RAND"] {
        let variant: Variant = name.parse()?;
        let best = tune_parameters(&matrix, variant, &grid, &GaConfig::default(), None)?;
        println!(
            "{variant}: population {} iterations {} mutation {}",
            best.population_size, best.iterations, best.mutation_chance
        );
    }
    Ok(())
}

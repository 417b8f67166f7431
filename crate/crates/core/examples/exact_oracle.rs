//! Compares the GA with exhaustive search on small random instances.
//!
//!     cargo run --release --example exact_oracle

use nse_tsp::exact::brute_force_optimum;
use nse_tsp::{build_cost_matrix, evolve, EdgeWeightKind, EncodingAdapter, EncodingKind, GaConfig, TspInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> nse_tsp::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..8 {
        let n = rng.gen_range(5..=10);
        let coords = (0..n)
            .map(|_| (rng.gen_range(0.0..100.0f64).round(), rng.gen_range(0.0..100.0f64).round()))
            .collect();
        let instance = TspInstance::from_coords(format!("rand{k}"), EdgeWeightKind::Euc2d, coords)?;
        let matrix = build_cost_matrix(&instance)?;

        let (tour, optimum) = brute_force_optimum(&matrix)?;
        let adapter = EncodingAdapter::canonical(EncodingKind::Nse, n)?;
        let config = GaConfig {
            population_size: 100,
            iterations: 300,
            rng_seed: k,
            ..GaConfig::default()
        };
        let ga = evolve(&matrix, &adapter, &config)?.final_best_cost;
        println!("{:<6} n={n:<2} optimum {optimum:>4} {tour}  GA {ga:>4}", instance.name);
    }
    Ok(())
}

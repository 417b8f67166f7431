use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use nse_tsp::bench::{self, Campaign, ParameterGrid, Variant};
use nse_tsp::encoding::{dc_decode, nse_decode_trace, DcChromosome, NseChromosome};
use nse_tsp::exact::export_mtz;
use nse_tsp::heuristics::best_nn_tour;
use nse_tsp::{build_cost_matrix, evolve, tour_cost, EncodingKind, GaConfig, Seeding, Tour, TspInstance};

#[derive(Parser)]
#[command(name = "nse-tsp", version, about = "Genetic algorithms for the TSP with node shift, path and double-chromosome encodings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the GA once on an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "nse")]
        encoding: EncodingKind,
        #[arg(long, default_value = "rand")]
        seeding: Seeding,
        #[command(flatten)]
        ga: GaFlags,
        /// DC guide length (even).
        #[arg(long)]
        guide_len: Option<usize>,
    },
    /// Run a benchmark campaign described by a TOML file.
    Bench {
        config: PathBuf,
        /// Output directory; overrides the config file and NSE_TSP_OUT_DIR.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid-search population size, iterations and mutation chance.
    Tune {
        instance: PathBuf,
        #[arg(long, default_value = "NSE-RAND")]
        variant: Variant,
        #[arg(long, value_delimiter = ',')]
        population: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        iterations: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        mutation: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        guide_len: Option<usize>,
    },
    /// Best nearest-neighbour tour over all start cities.
    Nn { instance: PathBuf },
    /// Decode a chromosome against a reference tour, printing every step.
    Decode {
        /// 1-based reference (or map) tour, e.g. 1,4,3,5,2
        #[arg(long)]
        reference: String,
        /// NSE shifts or 1-based DC guide positions, e.g. 2,1,2,1
        #[arg(long)]
        chromosome: String,
        #[arg(long, default_value = "nse")]
        encoding: EncodingKind,
    },
    /// Write the MTZ integer program of an instance as an LP file.
    ExportLp { instance: PathBuf, out: PathBuf },
}

#[derive(Args)]
struct GaFlags {
    #[arg(long, default_value_t = 100)]
    population: usize,
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    #[arg(long, default_value_t = 0.05)]
    mutation: f64,
    #[arg(long, default_value_t = 1.0)]
    crossover: f64,
    #[arg(long, default_value_t = 1)]
    elitism: usize,
    #[arg(long, default_value_t = 2)]
    tournament: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn load(path: &PathBuf) -> Result<(TspInstance, nse_tsp::CostMatrix)> {
    let inst = TspInstance::from_file(path)?;
    let matrix = build_cost_matrix(&inst)?;
    Ok((inst, matrix))
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad number `{s}`")))
        .collect()
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run(Cli::parse().command) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Solve {
            instance,
            encoding,
            seeding,
            ga,
            guide_len,
        } => {
            let (inst, matrix) = load(&instance)?;
            let config = GaConfig {
                population_size: ga.population,
                iterations: ga.iterations,
                mutation_chance: ga.mutation,
                crossover_chance: ga.crossover,
                elitism_count: ga.elitism,
                tournament_size: ga.tournament,
                seeding,
                rng_seed: ga.seed,
            };
            let adapter = bench::adapter_for(Variant::new(encoding, seeding), matrix.n(), guide_len)?;
            let record = evolve(&matrix, &adapter, &config)?;
            println!("instance: {} ({} cities)", inst.name, matrix.n());
            println!("variant:  {}", Variant::new(encoding, seeding));
            println!("cost:     {}", record.final_best_cost);
            println!("time_ms:  {:.1}", record.wall_clock_ms);
            println!("tour:     {}", record.final_best_tour.format_one_based(","));
        }
        Command::Bench { config, out } => {
            let campaign = Campaign::from_file(&config)?;
            let dir = out
                .or_else(|| campaign.output_dir.clone())
                .or_else(|| std::env::var_os("NSE_TSP_OUT_DIR").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("nse-tsp-results"));
            let outcome = bench::run_campaign(&campaign)?;
            let files = bench::write_outputs(&outcome, &dir)?;
            for s in &outcome.summaries {
                println!(
                    "{:<10} {:<9} best {:>8} mean {:>10} nn {:>8} failed {}",
                    s.instance,
                    s.variant,
                    s.best_cost.map_or("-".into(), |c| c.to_string()),
                    s.mean_cost.map_or("-".into(), |m| format!("{m:.1}")),
                    s.nn_cost,
                    s.failed
                );
            }
            println!("wrote {}", files.runs_csv.parent().unwrap_or(&dir).display());
            if outcome.runs.iter().any(|r| !r.succeeded()) {
                bail!("some runs failed; see runs.csv");
            }
        }
        Command::Tune {
            instance,
            variant,
            population,
            iterations,
            mutation,
            seed,
            guide_len,
        } => {
            let (_, matrix) = load(&instance)?;
            let defaults = ParameterGrid::default();
            let grid = ParameterGrid {
                population_sizes: population.unwrap_or(defaults.population_sizes),
                iterations: iterations.unwrap_or(defaults.iterations),
                mutation_chances: mutation.unwrap_or(defaults.mutation_chances),
            };
            let base = GaConfig {
                rng_seed: seed,
                ..GaConfig::default()
            };
            let best = bench::tune_parameters(&matrix, variant, &grid, &base, guide_len)?;
            println!(
                "population {} iterations {} mutation {}",
                best.population_size, best.iterations, best.mutation_chance
            );
        }
        Command::Nn { instance } => {
            let (_, matrix) = load(&instance)?;
            let tour = best_nn_tour(&matrix);
            println!("cost: {}", tour_cost(&matrix, &tour)?);
            println!("tour: {}", tour.format_one_based(","));
        }
        Command::Decode {
            reference,
            chromosome,
            encoding,
        } => {
            let reference = Tour::parse_one_based(&reference)?;
            let genes = parse_list(&chromosome)?;
            let n = reference.len();
            println!("reference: {reference}");
            match encoding {
                EncodingKind::Nse => {
                    let chromo = NseChromosome::new(genes, n)?;
                    let states = nse_decode_trace(&reference, &chromo)?;
                    for (k, (state, shift)) in states.iter().zip(chromo.shifts()).enumerate() {
                        let city = reference.order()[k + 1] + 1;
                        println!("city {city} moved forward by {shift}: {state}");
                    }
                    println!("tour: {}", states.last().expect("n >= 3"));
                }
                EncodingKind::Dc => {
                    let guide = DcChromosome::from_one_based(&genes, n)?;
                    let mut map = reference.clone();
                    for (a, b) in guide.pairs() {
                        let step = DcChromosome::new(vec![a, b], n)?;
                        map = dc_decode(&map, &step)?;
                        println!("swap positions {} and {}: {map}", a + 1, b + 1);
                    }
                    println!("tour: {map}");
                }
                EncodingKind::Pr => {
                    let tour = Tour::from_one_based(&genes)?;
                    println!("tour: {tour}");
                }
            }
        }
        Command::ExportLp { instance, out } => {
            let (inst, matrix) = load(&instance)?;
            let lp = export_mtz(&inst, &matrix)?;
            std::fs::write(&out, lp).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}

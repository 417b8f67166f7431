//! Elitist generational genetic algorithm, generic over the encodings.
//!
//! Each generation keeps the `elitism_count` cheapest genotypes unchanged
//! and fills the rest of the population with children: two parents are
//! picked by tournament, recombined by one-point crossover, and mutated
//! gene by gene. Fitness is the raw tour cost of the decoded genotype.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::encoding::{EncodingAdapter, EncodingKind};
use crate::error::{Error, Result};
use crate::heuristics::best_nn_tour;
use crate::tour::{order_cost, Tour};
use crate::tsplib::CostMatrix;

/// How the initial population is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Seeding {
    /// Random genotypes only, over the canonical reference tour.
    #[serde(rename = "RAND")]
    Rand,
    /// One genotype decoding to the best nearest-neighbour tour, which also
    /// becomes the reference tour; the rest random.
    #[serde(rename = "NN")]
    Nn,
}

impl fmt::Display for Seeding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Seeding::Rand => "RAND",
            Seeding::Nn => "NN",
        })
    }
}

impl FromStr for Seeding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "RAND" | "RND" | "RANDOM" => Ok(Seeding::Rand),
            "NN" => Ok(Seeding::Nn),
            _ => Err(Error::Validation(format!(
                "unknown seeding `{s}` (expected rand or nn)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population_size: usize,
    /// Number of generations after the initial population.
    pub iterations: usize,
    /// Per-gene mutation probability.
    pub mutation_chance: f64,
    /// Probability that a parent pair is recombined rather than copied.
    pub crossover_chance: f64,
    pub elitism_count: usize,
    pub tournament_size: usize,
    pub seeding: Seeding,
    pub rng_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            iterations: 1000,
            mutation_chance: 0.05,
            crossover_chance: 1.0,
            elitism_count: 1,
            tournament_size: 2,
            seeding: Seeding::Rand,
            rng_seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Validation(msg));
        if self.population_size == 0 {
            return bad("population_size must be positive".into());
        }
        if self.iterations == 0 {
            return bad("iterations must be positive".into());
        }
        if self.elitism_count == 0 || self.elitism_count >= self.population_size {
            return bad(format!(
                "elitism_count must be in 1..{}, got {}",
                self.population_size, self.elitism_count
            ));
        }
        if self.tournament_size == 0 || self.tournament_size > self.population_size {
            return bad(format!(
                "tournament_size must be in 1..={}, got {}",
                self.population_size, self.tournament_size
            ));
        }
        for (name, p) in [
            ("mutation_chance", self.mutation_chance),
            ("crossover_chance", self.crossover_chance),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must be in [0, 1], got {p}"));
            }
        }
        Ok(())
    }
}

/// Outcome of one [`evolve`] call.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Entry 0 is the initial population, entry `g` the population after
    /// generation `g`.
    pub best_cost_per_generation: Vec<i64>,
    pub final_best_tour: Tour,
    pub final_best_cost: i64,
    pub wall_clock_ms: f64,
    pub config: GaConfig,
    pub encoding: EncodingKind,
    pub reference_tour: Tour,
}

impl RunRecord {
    /// Equality on everything except the wall-clock time.
    pub fn same_outcome(&self, other: &RunRecord) -> bool {
        self.best_cost_per_generation == other.best_cost_per_generation
            && self.final_best_tour == other.final_best_tour
            && self.final_best_cost == other.final_best_cost
            && self.config == other.config
            && self.encoding == other.encoding
            && self.reference_tour == other.reference_tour
    }
}

/// Index of the cheapest of `tournament_size` distinct individuals drawn
/// uniformly (without replacement). Ties go to the lowest index.
pub fn tournament_select<R: Rng + ?Sized>(
    fitness: &[i64],
    tournament_size: usize,
    rng: &mut R,
) -> usize {
    assert!(!fitness.is_empty(), "cannot select from an empty population");
    let size = tournament_size.clamp(1, fitness.len());
    rand::seq::index::sample(rng, fitness.len(), size)
        .into_iter()
        .min_by_key(|&i| (fitness[i], i))
        .expect("tournament is not empty")
}

/// Splices `a[..cut]` with `b[cut..]` and vice versa.
///
/// For PR the suffix is replaced by the remaining cities in the order they
/// appear in the other parent, so both children stay permutations.
pub fn one_point_crossover(
    a: &[usize],
    b: &[usize],
    cut: usize,
    kind: EncodingKind,
) -> (Vec<usize>, Vec<usize>) {
    assert_eq!(a.len(), b.len(), "parents differ in length");
    assert!(
        cut >= 1 && cut < a.len(),
        "cut {cut} outside 1..{}",
        a.len()
    );
    match kind {
        EncodingKind::Nse | EncodingKind::Dc => {
            let mut c1 = a[..cut].to_vec();
            c1.extend_from_slice(&b[cut..]);
            let mut c2 = b[..cut].to_vec();
            c2.extend_from_slice(&a[cut..]);
            (c1, c2)
        }
        EncodingKind::Pr => (order_fill(a, b, cut), order_fill(b, a, cut)),
    }
}

fn order_fill(head: &[usize], donor: &[usize], cut: usize) -> Vec<usize> {
    let mut taken = vec![false; head.len()];
    let mut child = Vec::with_capacity(head.len());
    for &c in &head[..cut] {
        taken[c] = true;
        child.push(c);
    }
    child.extend(donor.iter().copied().filter(|&c| !taken[c]));
    child
}

/// Mutates `genes` in place.
///
/// NSE and DC genes are each redrawn uniformly within bounds with
/// probability `chance`. PR positions are each swapped, with probability
/// `chance`, with a uniformly chosen other position.
pub fn mutate<R: Rng + ?Sized>(
    genes: &mut [usize],
    chance: f64,
    rng: &mut R,
    adapter: &EncodingAdapter,
) {
    if chance <= 0.0 {
        return;
    }
    match adapter.kind() {
        EncodingKind::Nse | EncodingKind::Dc => {
            let max = adapter.gene_max();
            for gene in genes.iter_mut() {
                if rng.gen_bool(chance) {
                    *gene = rng.gen_range(0..=max);
                }
            }
        }
        EncodingKind::Pr => {
            let n = genes.len();
            if n < 2 {
                return;
            }
            for i in 0..n {
                if rng.gen_bool(chance) {
                    let mut j = rng.gen_range(0..n - 1);
                    if j >= i {
                        j += 1;
                    }
                    genes.swap(i, j);
                }
            }
        }
    }
}

fn evaluate(
    matrix: &CostMatrix,
    adapter: &EncodingAdapter,
    population: &[Vec<usize>],
) -> Result<Vec<i64>> {
    population
        .iter()
        .map(|genes| {
            let tour = adapter.decode(genes)?;
            Ok(order_cost(matrix, tour.order()))
        })
        .collect()
}

fn argmin(fitness: &[i64]) -> usize {
    fitness
        .iter()
        .enumerate()
        .min_by_key(|&(i, &f)| (f, i))
        .map(|(i, _)| i)
        .expect("population is not empty")
}

/// Runs the GA. The result depends only on the inputs and `config.rng_seed`.
///
/// With [`Seeding::Nn`] the adapter is re-centered on the best
/// nearest-neighbour tour before the initial population is built; the
/// reference actually used is recorded in the returned [`RunRecord`].
pub fn evolve(
    matrix: &CostMatrix,
    adapter: &EncodingAdapter,
    config: &GaConfig,
) -> Result<RunRecord> {
    config.validate()?;
    if adapter.n() != matrix.n() {
        return Err(Error::Validation(format!(
            "adapter is for {} cities, matrix has {}",
            adapter.n(),
            matrix.n()
        )));
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut adapter = adapter.clone();
    let pop_size = config.population_size;
    let genome_len = adapter.genome_len();

    let mut population = Vec::with_capacity(pop_size);
    if config.seeding == Seeding::Nn {
        let nn = best_nn_tour(matrix);
        population.push(adapter.seed_genotype(&nn)?);
    }
    while population.len() < pop_size {
        population.push(adapter.random_genotype(&mut rng));
    }
    let mut fitness = evaluate(matrix, &adapter, &population)?;
    let mut history = Vec::with_capacity(config.iterations + 1);
    history.push(fitness[argmin(&fitness)]);

    let mut ranked: Vec<usize> = Vec::with_capacity(pop_size);
    for _ in 0..config.iterations {
        ranked.clear();
        ranked.extend(0..pop_size);
        ranked.sort_by_key(|&i| (fitness[i], i));

        let mut next: Vec<Vec<usize>> = ranked[..config.elitism_count]
            .iter()
            .map(|&i| population[i].clone())
            .collect();
        while next.len() < pop_size {
            let pa = tournament_select(&fitness, config.tournament_size, &mut rng);
            let pb = tournament_select(&fitness, config.tournament_size, &mut rng);
            let (mut c1, mut c2) = if genome_len >= 2 && rng.gen_bool(config.crossover_chance) {
                let cut = rng.gen_range(1..genome_len);
                one_point_crossover(&population[pa], &population[pb], cut, adapter.kind())
            } else {
                (population[pa].clone(), population[pb].clone())
            };
            mutate(&mut c1, config.mutation_chance, &mut rng, &adapter);
            next.push(c1);
            if next.len() < pop_size {
                mutate(&mut c2, config.mutation_chance, &mut rng, &adapter);
                next.push(c2);
            }
        }
        population = next;
        fitness = evaluate(matrix, &adapter, &population)?;
        history.push(fitness[argmin(&fitness)]);
    }

    let best = argmin(&fitness);
    let final_best_tour = adapter.decode(&population[best])?;
    let final_best_cost = fitness[best];
    debug_assert_eq!(final_best_cost, order_cost(matrix, final_best_tour.order()));
    Ok(RunRecord {
        best_cost_per_generation: history,
        final_best_tour,
        final_best_cost,
        wall_clock_ms: started.elapsed().as_secs_f64() * 1e3,
        config: config.clone(),
        encoding: adapter.kind(),
        reference_tour: adapter.reference().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tour::validate_tour;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn nse_crossover_splices() {
        let (c1, c2) = one_point_crossover(&[2, 1, 2, 1], &[0, 0, 0, 0], 2, EncodingKind::Nse);
        assert_eq!(c1, vec![2, 1, 0, 0]);
        assert_eq!(c2, vec![0, 0, 2, 1]);
    }

    #[test]
    fn pr_crossover_repairs_by_donor_order() {
        // (1,2,3,4,5) x (1,4,3,5,2) at cut 2, 0-based.
        let a = [0, 1, 2, 3, 4];
        let b = [0, 3, 2, 4, 1];
        let (c1, c2) = one_point_crossover(&a, &b, 2, EncodingKind::Pr);
        assert_eq!(c1, vec![0, 1, 3, 2, 4]);
        assert_eq!(c2, vec![0, 3, 1, 2, 4]);
    }

    #[test]
    #[should_panic]
    fn crossover_rejects_cut_at_end() {
        one_point_crossover(&[1, 2], &[2, 1], 2, EncodingKind::Dc);
    }

    #[test]
    fn zero_mutation_is_a_no_op() {
        let mut rng = rng();
        for kind in EncodingKind::ALL {
            let adapter = EncodingAdapter::canonical(kind, 9).unwrap();
            let genes = adapter.random_genotype(&mut rng);
            let mut mutated = genes.clone();
            mutate(&mut mutated, 0.0, &mut rng, &adapter);
            assert_eq!(mutated, genes);
        }
    }

    #[test]
    fn full_mutation_stays_in_bounds() {
        let mut rng = rng();
        let adapter = EncodingAdapter::canonical(EncodingKind::Nse, 9).unwrap();
        let mut genes = vec![0; 8];
        mutate(&mut genes, 1.0, &mut rng, &adapter);
        assert!(genes.iter().all(|&g| g <= 7));

        let pr = EncodingAdapter::canonical(EncodingKind::Pr, 9).unwrap();
        let mut genes: Vec<usize> = (0..9).collect();
        mutate(&mut genes, 1.0, &mut rng, &pr);
        assert!(validate_tour(&genes, 9).is_ok());
    }

    #[test]
    fn full_tournament_picks_global_best() {
        let mut rng = rng();
        let fitness = [5, 3, 9, 1, 7];
        for _ in 0..100 {
            assert_eq!(tournament_select(&fitness, 5, &mut rng), 3);
        }
    }

    #[test]
    fn tournament_ties_prefer_low_index() {
        let mut rng = rng();
        for _ in 0..100 {
            assert_eq!(tournament_select(&[2, 2, 2], 3, &mut rng), 0);
        }
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        let bad = [
            GaConfig { elitism_count: 100, ..Default::default() },
            GaConfig { elitism_count: 0, ..Default::default() },
            GaConfig { tournament_size: 101, ..Default::default() },
            GaConfig { mutation_chance: 1.5, ..Default::default() },
            GaConfig { crossover_chance: -0.1, ..Default::default() },
            GaConfig { population_size: 0, ..Default::default() },
            GaConfig { iterations: 0, ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn evolve_rejects_mismatched_adapter() {
        let m = CostMatrix::from_fn(5, |i, j| (i + j) as i64).unwrap();
        let adapter = EncodingAdapter::canonical(EncodingKind::Nse, 6).unwrap();
        assert!(evolve(&m, &adapter, &GaConfig::default()).is_err());
    }

    #[test]
    fn seeding_text() {
        assert_eq!("rand".parse::<Seeding>().unwrap(), Seeding::Rand);
        assert_eq!("NN".parse::<Seeding>().unwrap(), Seeding::Nn);
        assert_eq!(Seeding::Nn.to_string(), "NN");
    }
}

//! Benchmark campaigns: repeated GA runs over instances and variants,
//! optional parameter tuning, and CSV/SVG reporting.
//!
//! A campaign is usually described by a TOML file:
//!
//! ```toml
//! repetitions = 30
//! base_seed = 1
//! variants = ["NSE-RAND", "NSE-NN", "PR-RAND", "PR-NN", "DC-RAND", "DC-NN"]
//!
//! [[instances]]
//! path = "data/tsplib/eil51.tsp"
//! class = 1
//!
//! [ga]
//! population_size = 100
//! iterations = 1000
//! mutation_chance = 0.05
//!
//! [tuning]            # optional
//! mode = "per-class"  # or "per-instance"
//! seed = 7
//! ```
//!
//! Instance paths are resolved relative to the file. Run `r` of every
//! (instance, variant) pair uses seed `base_seed + r`.

mod csv_io;
mod plot;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoding::{EncodingAdapter, EncodingKind};
use crate::error::{Error, Result};
use crate::ga::{evolve, GaConfig, Seeding};
use crate::heuristics::best_nn_tour;
use crate::tour::tour_cost;
use crate::tsplib::{build_cost_matrix, CostMatrix, TspInstance};

pub use csv_io::{
    read_runs_csv, read_summaries, runs_csv, summary_csv, timings_csv, tuned_csv,
    RUNS_SCHEMA, SUMMARY_SCHEMA,
};
pub use plot::{
    boxplot_svg, emit_boxplot_svg, emit_runtime_report, runtime_csv, runtime_svg, BoxStats,
};

/// One of the six encoding/seeding combinations, written `NSE-RAND` etc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Variant {
    pub encoding: EncodingKind,
    pub seeding: Seeding,
}

impl Variant {
    pub const fn new(encoding: EncodingKind, seeding: Seeding) -> Self {
        Variant { encoding, seeding }
    }

    pub const ALL: [Variant; 6] = [
        Variant::new(EncodingKind::Nse, Seeding::Rand),
        Variant::new(EncodingKind::Nse, Seeding::Nn),
        Variant::new(EncodingKind::Pr, Seeding::Rand),
        Variant::new(EncodingKind::Pr, Seeding::Nn),
        Variant::new(EncodingKind::Dc, Seeding::Rand),
        Variant::new(EncodingKind::Dc, Seeding::Nn),
    ];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{}-{}", self.encoding, self.seeding))
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (enc, seed) = s
            .split_once('-')
            .ok_or_else(|| Error::Validation(format!("variant `{s}` is not ENCODING-SEEDING")))?;
        Ok(Variant::new(enc.parse()?, seed.parse()?))
    }
}

impl TryFrom<String> for Variant {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Variant> for String {
    fn from(v: Variant) -> String {
        v.to_string()
    }
}

/// Builds the adapter a variant starts from: the canonical reference tour,
/// re-centered on the nearest-neighbour tour inside [`evolve`] for NN
/// seeding.
pub fn adapter_for(variant: Variant, n: usize, dc_guide_len: Option<usize>) -> Result<EncodingAdapter> {
    let adapter = EncodingAdapter::canonical(variant.encoding, n)?;
    match (variant.encoding, dc_guide_len) {
        (EncodingKind::Dc, Some(len)) => adapter.with_guide_len(len),
        _ => Ok(adapter),
    }
}

/// Values tried by [`tune_parameters`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ParameterGrid {
    pub population_sizes: Vec<usize>,
    pub iterations: Vec<usize>,
    pub mutation_chances: Vec<f64>,
}

impl Default for ParameterGrid {
    fn default() -> Self {
        ParameterGrid {
            population_sizes: vec![50, 100, 500, 1000],
            iterations: vec![100, 500, 1000, 2000],
            mutation_chances: vec![0.01, 0.03, 0.05, 0.1],
        }
    }
}

impl ParameterGrid {
    /// Every `(population, iterations, mutation)` triple in ascending order.
    pub fn combinations(&self) -> Vec<(usize, usize, f64)> {
        let mut pops = self.population_sizes.clone();
        let mut iters = self.iterations.clone();
        let mut muts = self.mutation_chances.clone();
        pops.sort_unstable();
        pops.dedup();
        iters.sort_unstable();
        iters.dedup();
        muts.sort_by(f64::total_cmp);
        muts.dedup();
        let mut out = Vec::with_capacity(pops.len() * iters.len() * muts.len());
        for &p in &pops {
            for &i in &iters {
                for &m in &muts {
                    out.push((p, i, m));
                }
            }
        }
        out
    }
}

/// Runs every grid combination once with `base.rng_seed` and returns the
/// configuration with the cheapest final tour. Ties prefer the smaller
/// population, then fewer iterations, then the lower mutation chance.
pub fn tune_parameters(
    matrix: &CostMatrix,
    variant: Variant,
    grid: &ParameterGrid,
    base: &GaConfig,
    dc_guide_len: Option<usize>,
) -> Result<GaConfig> {
    let combos = grid.combinations();
    if combos.is_empty() {
        return Err(Error::Validation("parameter grid is empty".into()));
    }
    let adapter = adapter_for(variant, matrix.n(), dc_guide_len)?;
    let configs: Vec<GaConfig> = combos
        .iter()
        .map(|&(population_size, iterations, mutation_chance)| GaConfig {
            population_size,
            iterations,
            mutation_chance,
            seeding: variant.seeding,
            ..base.clone()
        })
        .collect();
    let costs = configs
        .par_iter()
        .map(|cfg| evolve(matrix, &adapter, cfg).map(|r| r.final_best_cost))
        .collect::<Result<Vec<i64>>>()?;
    let best = (0..configs.len())
        .min_by_key(|&k| (costs[k], k))
        .expect("grid is not empty");
    Ok(configs[best].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TuningMode {
    /// Tune on the largest instance of each class and reuse the result for
    /// the whole class.
    PerClass,
    PerInstance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tuning {
    #[serde(default = "default_tuning_mode")]
    pub mode: TuningMode,
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub grid: ParameterGrid,
}

fn default_tuning_mode() -> TuningMode {
    TuningMode::PerClass
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceEntry {
    pub path: PathBuf,
    /// Size class for per-class tuning. Unclassified instances form their
    /// own class.
    #[serde(default)]
    pub class: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Campaign {
    pub instances: Vec<InstanceEntry>,
    #[serde(default = "all_variants")]
    pub variants: Vec<Variant>,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Template for every run; `seeding` and `rng_seed` are set per run.
    #[serde(default)]
    pub ga: GaConfig,
    #[serde(default)]
    pub dc_guide_len: Option<usize>,
    #[serde(default)]
    pub tuning: Option<Tuning>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Worker threads; defaults to rayon's choice.
    #[serde(default)]
    pub jobs: Option<usize>,
}

fn all_variants() -> Vec<Variant> {
    Variant::ALL.to_vec()
}

fn default_repetitions() -> usize {
    30
}

impl Campaign {
    pub fn new(instances: Vec<InstanceEntry>) -> Self {
        Campaign {
            instances,
            variants: all_variants(),
            repetitions: default_repetitions(),
            base_seed: 0,
            ga: GaConfig::default(),
            dc_guide_len: None,
            tuning: None,
            output_dir: None,
            jobs: None,
        }
    }

    /// Parses a TOML campaign; relative paths are resolved against `base_dir`.
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self> {
        let mut campaign: Campaign =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for entry in &mut campaign.instances {
            if entry.path.is_relative() {
                entry.path = base_dir.join(&entry.path);
            }
        }
        if let Some(dir) = &campaign.output_dir {
            if dir.is_relative() {
                campaign.output_dir = Some(base_dir.join(dir));
            }
        }
        campaign.validate()?;
        Ok(campaign)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Campaign::from_toml_str(&text, base)
    }

    pub fn validate(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::Config("no instances listed".into()));
        }
        if self.variants.is_empty() {
            return Err(Error::Config("no variants listed".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        if self.tuning.is_none() {
            self.ga.validate()?;
        }
        Ok(())
    }
}

/// One GA run as written to `runs.csv`. Failed runs carry the error in
/// `status` and no cost or tour.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub instance: String,
    pub variant: Variant,
    pub run_index: usize,
    pub seed: u64,
    pub population: usize,
    pub iterations: usize,
    pub mutation: f64,
    pub final_best_cost: Option<i64>,
    /// 1-based cities joined by `-`.
    pub tour: String,
    pub status: String,
    pub wall_ms: f64,
}

impl RunRow {
    pub fn succeeded(&self) -> bool {
        self.final_best_cost.is_some()
    }
}

/// Aggregate over the runs of one (instance, variant) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub instance: String,
    pub variant: Variant,
    pub runs: usize,
    pub failed: usize,
    pub best_cost: Option<i64>,
    pub mean_cost: Option<f64>,
    pub run_costs: Vec<i64>,
    /// Cost of the best nearest-neighbour tour for the instance.
    pub nn_cost: i64,
    pub mean_wall_ms: f64,
}

/// The configuration a tuning step settled on.
#[derive(Debug, Clone, PartialEq)]
pub struct TunedRow {
    /// Instance the grid was evaluated on.
    pub tuned_on: String,
    pub class: Option<u32>,
    pub variant: Variant,
    pub config: GaConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignOutcome {
    pub runs: Vec<RunRow>,
    pub summaries: Vec<SummaryRow>,
    pub tuned: Vec<TunedRow>,
}

struct LoadedInstance {
    name: String,
    class: Option<u32>,
    matrix: CostMatrix,
    nn_cost: i64,
}

/// Executes every (instance, variant, repetition) run of the campaign.
///
/// Runs may execute in parallel; the returned rows are ordered by
/// instance (as listed), variant (as listed) and run index.
pub fn run_campaign(campaign: &Campaign) -> Result<CampaignOutcome> {
    campaign.validate()?;
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(jobs) = campaign.jobs {
            builder = builder.num_threads(jobs);
        }
        builder
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
    };
    pool.install(|| run_campaign_inner(campaign))
}

fn run_campaign_inner(campaign: &Campaign) -> Result<CampaignOutcome> {
    let instances = campaign
        .instances
        .iter()
        .map(|entry| {
            let inst = TspInstance::from_file(&entry.path)?;
            let matrix = build_cost_matrix(&inst)?;
            let nn_cost = tour_cost(&matrix, &best_nn_tour(&matrix))?;
            let name = if inst.name.is_empty() {
                entry
                    .path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default()
            } else {
                inst.name
            };
            Ok(LoadedInstance {
                name,
                class: entry.class,
                matrix,
                nn_cost,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let (configs, tuned) = resolve_configs(campaign, &instances)?;

    let jobs: Vec<(usize, usize, usize)> = (0..instances.len())
        .flat_map(|i| {
            (0..campaign.variants.len())
                .flat_map(move |v| (0..campaign.repetitions).map(move |r| (i, v, r)))
        })
        .collect();
    let mut runs: Vec<((usize, usize, usize), RunRow)> = jobs
        .par_iter()
        .map(|&(i, v, r)| {
            let inst = &instances[i];
            let variant = campaign.variants[v];
            let seed = campaign.base_seed.wrapping_add(r as u64);
            let config = GaConfig {
                rng_seed: seed,
                ..configs[&(i, v)].clone()
            };
            let outcome = adapter_for(variant, inst.matrix.n(), campaign.dc_guide_len)
                .and_then(|adapter| evolve(&inst.matrix, &adapter, &config));
            let mut row = RunRow {
                instance: inst.name.clone(),
                variant,
                run_index: r,
                seed,
                population: config.population_size,
                iterations: config.iterations,
                mutation: config.mutation_chance,
                final_best_cost: None,
                tour: String::new(),
                status: String::new(),
                wall_ms: 0.0,
            };
            match outcome {
                Ok(record) => {
                    row.final_best_cost = Some(record.final_best_cost);
                    row.tour = record.final_best_tour.format_one_based("-");
                    row.status = "ok".into();
                    row.wall_ms = record.wall_clock_ms;
                }
                Err(e) => {
                    warn!("{} {variant} run {r} failed: {e}", inst.name);
                    row.status = format!("failed: {e}");
                }
            }
            ((i, v, r), row)
        })
        .collect();
    runs.sort_by_key(|(key, _)| *key);

    let mut summaries = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        for (v, &variant) in campaign.variants.iter().enumerate() {
            let group: Vec<&RunRow> = runs
                .iter()
                .filter(|((ri, rv, _), _)| *ri == i && *rv == v)
                .map(|(_, row)| row)
                .collect();
            summaries.push(summarize(&inst.name, variant, inst.nn_cost, &group));
        }
    }
    Ok(CampaignOutcome {
        runs: runs.into_iter().map(|(_, row)| row).collect(),
        summaries,
        tuned,
    })
}

fn summarize(instance: &str, variant: Variant, nn_cost: i64, rows: &[&RunRow]) -> SummaryRow {
    let run_costs: Vec<i64> = rows.iter().filter_map(|r| r.final_best_cost).collect();
    let ok: Vec<&&RunRow> = rows.iter().filter(|r| r.succeeded()).collect();
    let mean_wall_ms = if ok.is_empty() {
        0.0
    } else {
        ok.iter().map(|r| r.wall_ms).sum::<f64>() / ok.len() as f64
    };
    SummaryRow {
        instance: instance.to_string(),
        variant,
        runs: rows.len(),
        failed: rows.len() - run_costs.len(),
        best_cost: run_costs.iter().copied().min(),
        mean_cost: (!run_costs.is_empty())
            .then(|| run_costs.iter().sum::<i64>() as f64 / run_costs.len() as f64),
        run_costs,
        nn_cost,
        mean_wall_ms,
    }
}

type ConfigMap = BTreeMap<(usize, usize), GaConfig>;

fn resolve_configs(
    campaign: &Campaign,
    instances: &[LoadedInstance],
) -> Result<(ConfigMap, Vec<TunedRow>)> {
    let mut configs = ConfigMap::new();
    let mut tuned = Vec::new();
    let Some(tuning) = &campaign.tuning else {
        for i in 0..instances.len() {
            for (v, variant) in campaign.variants.iter().enumerate() {
                let cfg = GaConfig {
                    seeding: variant.seeding,
                    ..campaign.ga.clone()
                };
                configs.insert((i, v), cfg);
            }
        }
        return Ok((configs, tuned));
    };

    // Each group is tuned on its largest instance (first listed on ties).
    let mut groups: Vec<Vec<usize>> = Vec::new();
    match tuning.mode {
        TuningMode::PerInstance => groups.extend((0..instances.len()).map(|i| vec![i])),
        TuningMode::PerClass => {
            let mut by_class: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (i, inst) in instances.iter().enumerate() {
                match inst.class {
                    Some(c) => by_class.entry(c).or_default().push(i),
                    None => groups.push(vec![i]),
                }
            }
            groups.extend(by_class.into_values());
        }
    }
    let base = GaConfig {
        rng_seed: tuning.seed,
        ..campaign.ga.clone()
    };
    for group in groups {
        let target = *group
            .iter()
            .rev()
            .max_by_key(|&&i| instances[i].matrix.n())
            .expect("groups are non-empty");
        for (v, &variant) in campaign.variants.iter().enumerate() {
            info!("tuning {variant} on {}", instances[target].name);
            let cfg = tune_parameters(
                &instances[target].matrix,
                variant,
                &tuning.grid,
                &base,
                campaign.dc_guide_len,
            )?;
            for &i in &group {
                configs.insert((i, v), cfg.clone());
            }
            tuned.push(TunedRow {
                tuned_on: instances[target].name.clone(),
                class: instances[target].class,
                variant,
                config: cfg,
            });
        }
    }
    Ok((configs, tuned))
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFiles {
    pub runs_csv: PathBuf,
    pub summary_csv: PathBuf,
    pub timings_csv: PathBuf,
    pub runtime_csv: PathBuf,
    pub runtime_svg: PathBuf,
    pub tuned_csv: Option<PathBuf>,
    pub boxplots: Vec<PathBuf>,
}

/// Writes every report for a campaign into `dir`.
///
/// `runs.csv`, `summary.csv`, `tuned.csv` and the boxplots depend only on
/// the campaign and its seeds. Wall-clock measurements go to
/// `timings.csv`, `runtime.csv` and `runtime.svg`.
pub fn write_outputs(outcome: &CampaignOutcome, dir: &Path) -> Result<OutputFiles> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: &str, body: String| -> Result<PathBuf> {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    };
    let runs_csv = write("runs.csv", runs_csv(&outcome.runs)?)?;
    let summary_csv = write("summary.csv", summary_csv(&outcome.summaries)?)?;
    let timings_csv = write("timings.csv", timings_csv(&outcome.runs)?)?;
    let tuned_csv = if outcome.tuned.is_empty() {
        None
    } else {
        Some(write("tuned.csv", tuned_csv(&outcome.tuned)?)?)
    };
    let (runtime_csv, runtime_svg) = emit_runtime_report(&outcome.summaries, dir)?;

    let mut boxplots = Vec::new();
    let mut instances: Vec<&str> = Vec::new();
    for s in &outcome.summaries {
        if !instances.contains(&s.instance.as_str()) {
            instances.push(&s.instance);
        }
    }
    for name in instances {
        let groups: Vec<(String, Vec<f64>)> = outcome
            .summaries
            .iter()
            .filter(|s| s.instance == name && !s.run_costs.is_empty())
            .map(|s| {
                (
                    s.variant.to_string(),
                    s.run_costs.iter().map(|&c| c as f64).collect(),
                )
            })
            .collect();
        if groups.is_empty() {
            continue;
        }
        let path = dir.join(format!("boxplot_{}.svg", sanitize(name)));
        emit_boxplot_svg(name, &groups, &path)?;
        boxplots.push(path);
    }
    Ok(OutputFiles {
        runs_csv,
        summary_csv,
        timings_csv,
        runtime_csv,
        runtime_svg,
        tuned_csv,
        boxplots,
    })
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

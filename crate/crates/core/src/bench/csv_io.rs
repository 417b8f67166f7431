//! CSV files written by campaigns.
//!
//! Every file starts with a `#` comment naming its schema and version,
//! followed by a header row.

use serde::{Deserialize, Serialize};

use super::{RunRow, SummaryRow, TunedRow, Variant};
use crate::error::{Error, Result};

pub const RUNS_SCHEMA: &str = "nse-tsp runs v1";
pub const SUMMARY_SCHEMA: &str = "nse-tsp summary v1";
const TIMINGS_SCHEMA: &str = "nse-tsp timings v1";
const TUNED_SCHEMA: &str = "nse-tsp tuned v1";
pub(super) const RUNTIME_SCHEMA: &str = "nse-tsp runtime v1";

#[derive(Debug, Serialize, Deserialize)]
struct RunCsv {
    instance: String,
    variant: Variant,
    run_index: usize,
    seed: u64,
    population: usize,
    iterations: usize,
    mutation: f64,
    final_best_cost: Option<i64>,
    tour: String,
    status: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct SummaryCsv {
    instance: String,
    variant: Variant,
    runs: usize,
    failed: usize,
    best_cost: Option<i64>,
    mean_cost: Option<f64>,
    nn_cost: i64,
    /// Per-run final costs joined by `;`.
    run_costs: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct TimingCsv {
    instance: String,
    variant: Variant,
    run_index: usize,
    wall_ms: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub(super) struct RuntimeCsv {
    pub instance: String,
    pub variant: Variant,
    pub runs: usize,
    pub mean_wall_ms: f64,
}

#[derive(Debug, Serialize)]
struct TunedCsv<'a> {
    tuned_on: &'a str,
    class: Option<u32>,
    variant: Variant,
    population: usize,
    iterations: usize,
    mutation: f64,
    crossover: f64,
    elitism: usize,
    tournament: usize,
    seed: u64,
}

pub(super) fn write_csv<T: Serialize>(schema: &str, rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut buf = format!("# {schema}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        for row in rows {
            w.serialize(row)?;
        }
        w.flush().map_err(|e| Error::Csv(e.into()))?;
    }
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn read_csv<T: for<'de> Deserialize<'de>>(schema: &str, text: &str) -> Result<Vec<T>> {
    let first = text.lines().next().unwrap_or_default();
    if first.trim_start_matches('#').trim() != schema {
        return Err(Error::Validation(format!(
            "expected a `{schema}` file, found `{first}`"
        )));
    }
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn runs_csv(rows: &[RunRow]) -> Result<String> {
    write_csv(
        RUNS_SCHEMA,
        rows.iter().map(|r| RunCsv {
            instance: r.instance.clone(),
            variant: r.variant,
            run_index: r.run_index,
            seed: r.seed,
            population: r.population,
            iterations: r.iterations,
            mutation: r.mutation,
            final_best_cost: r.final_best_cost,
            tour: r.tour.clone(),
            status: r.status.clone(),
        }),
    )
}

/// Reads `runs.csv`. Wall-clock times live elsewhere, so `wall_ms` is 0.
pub fn read_runs_csv(text: &str) -> Result<Vec<RunRow>> {
    Ok(read_csv::<RunCsv>(RUNS_SCHEMA, text)?
        .into_iter()
        .map(|r| RunRow {
            instance: r.instance,
            variant: r.variant,
            run_index: r.run_index,
            seed: r.seed,
            population: r.population,
            iterations: r.iterations,
            mutation: r.mutation,
            final_best_cost: r.final_best_cost,
            tour: r.tour,
            status: r.status,
            wall_ms: 0.0,
        })
        .collect())
}

pub fn timings_csv(rows: &[RunRow]) -> Result<String> {
    write_csv(
        TIMINGS_SCHEMA,
        rows.iter().map(|r| TimingCsv {
            instance: r.instance.clone(),
            variant: r.variant,
            run_index: r.run_index,
            wall_ms: r.wall_ms,
        }),
    )
}

pub fn summary_csv(rows: &[SummaryRow]) -> Result<String> {
    write_csv(
        SUMMARY_SCHEMA,
        rows.iter().map(|s| SummaryCsv {
            instance: s.instance.clone(),
            variant: s.variant,
            runs: s.runs,
            failed: s.failed,
            best_cost: s.best_cost,
            mean_cost: s.mean_cost,
            nn_cost: s.nn_cost,
            run_costs: s
                .run_costs
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(";"),
        }),
    )
}

/// Rebuilds summary rows from `summary.csv` and the matching `runtime.csv`.
pub fn read_summaries(summary: &str, runtime: &str) -> Result<Vec<SummaryRow>> {
    let times = read_csv::<RuntimeCsv>(RUNTIME_SCHEMA, runtime)?;
    read_csv::<SummaryCsv>(SUMMARY_SCHEMA, summary)?
        .into_iter()
        .map(|s| {
            let run_costs = s
                .run_costs
                .split(';')
                .filter(|c| !c.is_empty())
                .map(|c| {
                    c.parse::<i64>()
                        .map_err(|_| Error::Validation(format!("bad run cost `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let mean_wall_ms = times
                .iter()
                .find(|t| t.instance == s.instance && t.variant == s.variant)
                .map_or(0.0, |t| t.mean_wall_ms);
            Ok(SummaryRow {
                instance: s.instance,
                variant: s.variant,
                runs: s.runs,
                failed: s.failed,
                best_cost: s.best_cost,
                mean_cost: s.mean_cost,
                run_costs,
                nn_cost: s.nn_cost,
                mean_wall_ms,
            })
        })
        .collect()
}

pub fn tuned_csv(rows: &[TunedRow]) -> Result<String> {
    write_csv(
        TUNED_SCHEMA,
        rows.iter().map(|t| TunedCsv {
            tuned_on: &t.tuned_on,
            class: t.class,
            variant: t.variant,
            population: t.config.population_size,
            iterations: t.config.iterations,
            mutation: t.config.mutation_chance,
            crossover: t.config.crossover_chance,
            elitism: t.config.elitism_count,
            tournament: t.config.tournament_size,
            seed: t.config.rng_seed,
        }),
    )
}

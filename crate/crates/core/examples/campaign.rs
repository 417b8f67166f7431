//! Runs the smoke campaign and writes CSV reports and SVG plots.
//!
//!     cargo run --release --example campaign -- [campaign.toml] [out-dir]

use std::path::PathBuf;

use nse_tsp::bench::{run_campaign, write_outputs, Campaign};

fn main() -> nse_tsp::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("campaigns/smoke.toml")
    });
    let campaign = Campaign::from_file(&config)?;
    let out = args
        .next()
        .map(PathBuf::from)
        .or_else(|| campaign.output_dir.clone())
        .unwrap_or_else(|| std::env::temp_dir().join("nse-tsp-smoke"));

    let outcome = run_campaign(&campaign)?;
    for s in &outcome.summaries {
        println!(
            "{:<9} {:<9} best {:>6}  mean {:>8.1}  NN {:>6}",
            s.instance,
            s.variant,
            s.best_cost.unwrap_or_default(),
            s.mean_cost.unwrap_or_default(),
            s.nn_cost
        );
    }
    let files = write_outputs(&outcome, &out)?;
    println!("runs:     {}", files.runs_csv.display());
    println!("summary:  {}", files.summary_csv.display());
    println!("runtime:  {}", files.runtime_svg.display());
    for b in &files.boxplots {
        println!("boxplot:  {}", b.display());
    }
    Ok(())
}

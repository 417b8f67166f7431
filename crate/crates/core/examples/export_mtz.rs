//! Writes the MTZ integer program of an instance in LP format.
//!
//!     cargo run --example export_mtz -- [instance.tsp] [out.lp]
//!
//! Solve it with any MIP solver that reads LP files, e.g. HiGHS or GLPK
//! (`glpsol --lp out.lp`).

use std::path::PathBuf;

use nse_tsp::exact::{export_mtz, ConstraintKind, MtzModel};
use nse_tsp::{build_cost_matrix, TspInstance};

fn main() -> nse_tsp::Result<()> {
    let mut args = std::env::args().skip(1);
    let input = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/tsplib/eil51.tsp")
    });
    let output = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("mtz.lp"));

    let instance = TspInstance::from_file(&input)?;
    let matrix = build_cost_matrix(&instance)?;
    let model = MtzModel::build(&instance.name, &matrix)?;
    println!(
        "{}: {} arc variables, {} order variables, {} degree rows, {} subtour rows",
        instance.name,
        model.binary_var_count(),
        model.order_vars.len(),
        model.count(ConstraintKind::OutDegree) + model.count(ConstraintKind::InDegree),
        model.count(ConstraintKind::Subtour),
    );
    std::fs::write(&output, export_mtz(&instance, &matrix)?).expect("write LP file");
    println!("wrote {}", output.display());
    Ok(())
}

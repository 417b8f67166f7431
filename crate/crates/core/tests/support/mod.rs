#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use nse_tsp::{build_cost_matrix, CostMatrix, TspInstance};
use rand::Rng;

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tsplib")
}

pub fn instance(name: &str) -> TspInstance {
    TspInstance::from_file(data_dir().join(format!("{name}.tsp"))).unwrap()
}

pub fn matrix(name: &str) -> CostMatrix {
    build_cost_matrix(&instance(name)).unwrap()
}

/// Random EUC_2D instance with integer coordinates in [0, 100).
pub fn random_instance<R: Rng>(name: &str, n: usize, rng: &mut R) -> TspInstance {
    let coords = (0..n)
        .map(|_| (rng.gen_range(0..100) as f64, rng.gen_range(0..100) as f64))
        .collect();
    TspInstance::from_coords(name, nse_tsp::EdgeWeightKind::Euc2d, coords).unwrap()
}

/// Moves each non-head city of `reference` forward one place at a time,
/// wrapping from the last slot to the slot right after the head.
pub fn list_shift_oracle(reference: &[usize], shifts: &[usize]) -> Vec<usize> {
    let mut list = reference.to_vec();
    let len = list.len();
    for (k, &steps) in shifts.iter().enumerate() {
        let city = reference[k + 1];
        for _ in 0..steps {
            let pos = list.iter().position(|&c| c == city).unwrap();
            if pos + 1 < len {
                list.swap(pos, pos + 1);
            } else {
                list.remove(pos);
                list.insert(1, city);
            }
        }
    }
    list
}

/// Every arc variable set to 1 by the solver, plus the objective, or `None`
/// when no solver is available on this host.
pub fn solve_lp(lp_path: &Path) -> Option<(f64, Vec<String>)> {
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/support/solve_lp.py");
    let out = Command::new("python3").arg(&script).arg(lp_path).output().ok()?;
    match out.status.code() {
        Some(0) => {}
        Some(3) => return None,
        _ => panic!(
            "solver helper failed: {}",
            String::from_utf8_lossy(&out.stderr)
        ),
    }
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let objective = lines.next()?.trim().parse().unwrap();
    Some((objective, lines.map(str::to_owned).collect()))
}

pub fn solver_available() -> bool {
    Command::new("python3")
        .args(["-c", "import highspy"])
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

//! Example 1 (`x^2 + x^4/30` on `[0, 5]`): K-run aggregate experiment for
//! all three engines, written to `out/example1/`.
//!
//! `cargo run --release --example example1_experiment [K]`

use std::path::Path;

use greedy_lab::experiments::export_csv;
use greedy_lab::{run_experiment, ExperimentConfig, Preset};

fn main() -> greedy_lab::Result<()> {
    let mut cfg = ExperimentConfig::preset(Preset::Example1);
    if let Some(k) = std::env::args().nth(1).and_then(|s| s.parse().ok()) {
        cfg.k = k;
    }
    let stats = run_experiment(&cfg)?;
    for e in &stats.engines {
        let last = e.final_step();
        println!(
            "{:<12} stops at {:>3} nodes  E_t = {:.5}  V_t = {:.3e}  selection evals = {:.0}",
            e.engine.name(),
            e.stop_nodes.mean,
            last.e_t,
            last.v_t,
            e.selection_evals.mean
        );
    }
    for p in export_csv(&stats, Path::new("out/example1"))? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

//! Example 2: R-PDM against uniform sampling and weak greedy, aligned by
//! node count.
//!
//! `cargo run --release --example rpdm_vs_uniform`

use greedy_lab::experiments::compare_engines;
use greedy_lab::{EngineKind, ExperimentConfig, Preset};

fn main() -> greedy_lab::Result<()> {
    let cfg = ExperimentConfig {
        k: 100,
        engines: vec![EngineKind::Rpdm, EngineKind::Uniform, EngineKind::WeakGreedy],
        ..ExperimentConfig::preset(Preset::Example2)
    };
    let cmp = compare_engines(&[cfg])?;
    println!("{:>5} {}", "nodes", cmp.labels.iter().map(|l| format!("{l:>24}")).collect::<String>());
    for (step, cols) in cmp.rows.iter().step_by(5) {
        let cells: String = cols
            .iter()
            .map(|c| match c {
                Some((e, v)) => format!("{:>12.5} ±{:>10.2e}", e, v.sqrt()),
                None => format!("{:>24}", "stopped"),
            })
            .collect();
        println!("{:>5} {cells}", step + 1);
    }
    for f in &cmp.finals {
        println!("{:<12} final nodes {:>5.1}  E_t {:.5}  V_t {:.3e}  selection evals {:.0}", f.label, f.nodes, f.e_t, f.v_t, f.selection_evals);
    }
    println!("by error: {:?}", cmp.by_error);
    println!("by variance: {:?}", cmp.by_variance);
    Ok(())
}

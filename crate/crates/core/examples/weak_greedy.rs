//! The deterministic weak greedy baseline on Example 3: the interior
//! training set, the selected nodes and the evaluation count.

use greedy_lab::process::{simulate, GridEstimator, StoppingRule};
use greedy_lab::{Clock, EngineKind, EngineSpec, InterpolationCop, Preset, QuadratureGrid};

fn main() -> greedy_lab::Result<()> {
    let preset = Preset::Example3;
    let cop = InterpolationCop::preset(preset);
    let grid = QuadratureGrid::new(&preset.domain(), 500)?;
    let est = GridEstimator { cop: &cop, grid: &grid };
    let spec = EngineSpec { sample_size: preset.default_sample_size(), ..EngineSpec::new(EngineKind::WeakGreedy) };
    let a = simulate(&spec, &cop, &est, Clock::Node, StoppingRule::ErrorBelow(0.01), 0, 1)?;
    let b = simulate(&spec, &cop, &est, Clock::Node, StoppingRule::ErrorBelow(0.01), 0, 99)?;
    let last = a.last();
    println!("|S| = {}, stopped at {} nodes, {} evaluations", spec.sample_size, last.configuration.count(), last.evals.selection);
    println!("first five selected nodes, newest first: {:?}", &a.final_configuration().scalars()[a.final_configuration().count() - 5..]);
    println!("seed-independent: {}", a.final_configuration() == b.final_configuration());
    Ok(())
}

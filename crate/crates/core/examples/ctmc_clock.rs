//! The same seed on the node clock and the CTMC clock: both visit the same
//! configurations, the CTMC one at exponential jump times.

use greedy_lab::process::{simulate, GridEstimator, StoppingRule};
use greedy_lab::theory::ctmc_node_counts;
use greedy_lab::{Clock, EngineKind, EngineSpec, InterpolationCop, Preset, QuadratureGrid};

fn main() -> greedy_lab::Result<()> {
    let preset = Preset::Example1;
    let cop = InterpolationCop::preset(preset);
    let grid = QuadratureGrid::new(&preset.domain(), 500)?;
    let est = GridEstimator { cop: &cop, grid: &grid };
    let spec = EngineSpec::new(EngineKind::Rpdm);
    let ctmc = simulate(&spec, &cop, &est, Clock::Ctmc, StoppingRule::MaxTime(10.0), 0, 5)?;
    let n = ctmc.last().configuration.count();
    let node = simulate(&spec, &cop, &est, Clock::Node, StoppingRule::MaxNodes(n), 0, 5)?;
    for (c, d) in ctmc.events.iter().zip(&node.events) {
        println!("jump {:>2}  t = {:>7.3}  G = {:.5}  same configuration: {}", c.step, c.time, c.error.global, c.configuration == d.configuration);
    }
    let stats = ctmc_node_counts(10.0, 2000, 0)?;
    println!("mean N(10) over {} runs: {:.3}, P(N > 22) = {:.4}", stats.runs, stats.mean, stats.tail);
    Ok(())
}

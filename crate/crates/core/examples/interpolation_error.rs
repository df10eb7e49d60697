//! Local and global interpolation errors of the three presets on a fixed
//! set of nodes.

use greedy_lab::interpolation::{global_error, global_error_exact, local_error};
use greedy_lab::{Configuration, Preset, QuadratureGrid};

fn main() -> greedy_lab::Result<()> {
    for preset in [Preset::Example1, Preset::Example2, Preset::Example3] {
        let domain = preset.domain();
        let f = preset.target();
        let (a, b) = domain.bounds_1d()?;
        let nodes: Vec<f64> = (1..10).map(|i| a + (b - a) * i as f64 / 10.0).collect();
        let eta = Configuration::from_scalars(&nodes, &domain)?;
        let grid = QuadratureGrid::new(&domain, 500)?;
        let mid = a + 0.05 * (b - a);
        println!(
            "{}: J({mid}) = {:.5}, G (trapezoid, L=500) = {:.6}, G (exact) = {}",
            preset.name(),
            local_error(&f, &eta, mid, &domain)?,
            global_error(&f, &eta, &grid, &domain)?,
            global_error_exact(&f, &eta, &domain).map_or_else(|e| format!("n/a ({e})"), |g| format!("{g:.6}")),
        );
    }
    Ok(())
}

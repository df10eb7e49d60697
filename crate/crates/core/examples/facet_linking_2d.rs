//! Polytope division in the unit square: facet linking around a point and
//! repeated splits, checking that the cells keep covering the square.

use greedy_lab::geometry::{facet_linking, Polytope, PolytopeDivision};
use greedy_lab::Domain;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> greedy_lab::Result<()> {
    let square = Polytope::from_domain(&Domain::unit_square())?;
    for (i, t) in facet_linking(&[0.3, 0.6], &square)?.iter().enumerate() {
        println!("triangle {i}: area {:.4}, barycenter {:?}", t.volume(), t.barycenter());
    }

    let mut division = PolytopeDivision::initial(&[0.5, 0.5], &square)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let cell = division.cells().iter().enumerate().max_by(|a, b| a.1.polytope.volume().total_cmp(&b.1.polytope.volume())).map(|c| c.0).unwrap_or(0);
        let y = division.cells()[cell].polytope.sample_uniform(&mut rng);
        division.split(cell, &y)?;
    }
    println!("{} cells after 50 splits, total area {:.15}", division.len(), division.total_volume());
    let probe = [0.123, 0.987];
    println!("({}, {}) lies in cell {}", probe[0], probe[1], division.locate(&probe)?);
    Ok(())
}

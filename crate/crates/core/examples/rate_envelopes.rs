//! Synthetic problem in the three decay regimes against the closed-form
//! bounds on the expected error.

use greedy_lab::theory::{check_rng, expectation_bound, run_synthetic, theta, RateParams};

fn main() -> greedy_lab::Result<()> {
    let times: Vec<f64> = (0..=20).map(f64::from).collect();
    let mut rng = check_rng(2024);
    for beta in [0.0, 0.5, 1.0] {
        let params = RateParams { gamma: 0.5, delta: 0.5, beta, c0: 1.0, e0: 1.0 };
        let curve = run_synthetic(params, &times, 2000, &mut rng)?;
        println!("beta = {beta}");
        for i in [1, 2, 4, 8, 16, 20] {
            println!(
                "  t = {:>2}  mean {:.5} ± {:.5}  bound {:.5}  theta {:.5}",
                times[i],
                curve.mean[i],
                curve.std_error[i],
                expectation_bound(&params, times[i])?,
                theta(beta, times[i], &params)?
            );
        }
        if let Some(s) = curve.log_slope(2.0, 20.0) {
            println!("  log-slope over [2, 20]: {s:.4} (γδ = {})", params.rate());
        }
    }
    Ok(())
}

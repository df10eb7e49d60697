//! Mass of `B_mu(eta)` under the uniform and R-PDM kernels.

use greedy_lab::kernels::{kernel_mass, MassKernel};
use greedy_lab::theory::b_mu_set;
use greedy_lab::{Configuration, Domain, FnCop};

fn main() -> greedy_lab::Result<()> {
    let domain = Domain::interval(0.0, 1.0)?;
    let cop = FnCop::nearest_node_distance(domain.clone());
    let eta = Configuration::from_scalars(&[0.5, 0.1, 0.8, 0.35], &domain)?;
    for mu in [0.05, 0.1, 0.25, 0.4] {
        let set = b_mu_set(&eta, mu, &domain)?;
        let u = kernel_mass(MassKernel::Uniform, &eta, &set, &cop, 4)?;
        let r = kernel_mass(MassKernel::Rpdm { alpha: 50.0 }, &eta, &set, &cop, 4)?;
        println!("mu = {mu:<4}  uniform {u:.15}  rpdm {r:.15}  1-2mu = {:.15}", 1.0 - 2.0 * mu);
    }
    Ok(())
}

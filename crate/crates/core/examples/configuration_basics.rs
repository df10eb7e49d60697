//! Configurations, the `⊕` transition, the sequence metric and the order
//! mapping on `[0, 1]`.

use greedy_lab::{metric, Configuration, Domain};

fn main() -> greedy_lab::Result<()> {
    let domain = Domain::interval(0.0, 1.0)?;
    let eta = Configuration::from_scalars(&[0.7, 0.2], &domain)?;
    let next = eta.oplus(&[0.5], &domain)?;
    println!("eta         = {:?} ({} nodes)", eta.scalars(), eta.count());
    println!("eta ⊕ 0.5   = {:?}", next.scalars());
    println!("order       = {:?}", next.order()?.scalars());

    let empty = Configuration::empty(1);
    println!("d(eta, eta⊕0.5)  = {}", metric(&eta, &next, &domain));
    println!("d(eta, empty)    = {}", metric(&eta, &empty, &domain));
    println!("d(eta⊕0.5, eta⊕0.51) = {}", metric(&next, &eta.oplus(&[0.51], &domain)?, &domain));

    match eta.oplus(&[1.5], &domain) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("eta ⊕ 1.5 rejected: {e}"),
    }
    Ok(())
}

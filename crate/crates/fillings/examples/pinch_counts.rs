//! Fillings from pinching sequences: how many clusters the ℓ! orders reach.

use fillings::braid::BraidWord;
use fillings::cluster::DEFAULT_BUDGET;
use fillings::pinch::{catalan, pinch_count, two_braid_classes};

fn main() -> fillings::Result<()> {
    for k in 2..=7 {
        println!("s1^{k}: {:>3} classes of orders, C_{k} = {}", two_braid_classes(k)?, catalan(k));
    }
    for w in ["(s1 s2)^3", "(s1 s2 s2)^2", "(s2 s1 s1)^2", "(s1 s2)^4"] {
        let t = std::time::Instant::now();
        let (r, _) = pinch_count(&BraidWord::parse(w)?, 1, DEFAULT_BUDGET)?;
        println!("{w:<14} {:>6} orders -> {:>3} of {:>3} clusters  ({:?})", r.orders, r.clusters, r.exchange, t.elapsed());
    }
    Ok(())
}

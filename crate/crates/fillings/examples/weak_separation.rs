//! Maximal weakly separated collections of k-subsets of [m].
//!
//!     cargo run --example weak_separation -- 3 7

use fillings::separated::{maximal_collections, weakly_separated_count};

fn main() -> fillings::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (k, m) = match args[..] {
        [k, m] => (k, m),
        _ => (2, 5),
    };
    let r = weakly_separated_count(k, m)?;
    println!("Gr({k},{m}): {} maximal collections of size {} (pure: {})", r.count, r.expected_size, r.pure);
    if r.count <= 5 {
        for c in maximal_collections(k, m)? {
            println!("  {:?}", c.sets);
        }
    }
    Ok(())
}

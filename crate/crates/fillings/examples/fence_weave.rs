//! Compile the weave of a braid and check its cycle lattice.
//!
//!     cargo run --example fence_weave -- "(s1 s2)^3" weave.svg

use fillings::braid::BraidWord;
use fillings::weave::compile_braid_weave;

fn main() -> fillings::Result<()> {
    let mut args = std::env::args().skip(1);
    let word = args.next().unwrap_or_else(|| "(s1 s2)^3".into());
    let w = compile_braid_weave(&BraidWord::parse(&word)?);
    let c = w.vertex_counts();
    println!("{word}: {} trivalent, {} hexavalent, {} tetravalent", c.trivalent, c.hexavalent, c.tetravalent);
    println!("boundary word {:?} (β Δ²: {})", w.boundary_word().letters, w.boundary_word().matches);
    println!("duality {} / chain identity {}", w.check_duality(), w.check_chain_identity());
    for row in w.intersection_matrix() {
        println!("  {row:?}");
    }
    if let Some(path) = args.next() {
        std::fs::write(&path, w.geometry().to_svg())?;
        println!("wrote {path}");
    }
    Ok(())
}

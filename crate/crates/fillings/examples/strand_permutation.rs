//! Strand permutations of fences and of the reduced graphs of the top cells.

use fillings::braid::BraidWord;
use fillings::plabic::{fan_triangulation, fence_from_braid, le_graph, triangulation_graph};

fn main() -> fillings::Result<()> {
    for w in ["s1^3", "(s1 s2)^3", "s1 s2 s3 s2 s1"] {
        let fence = fence_from_braid(&BraidWord::parse(w)?);
        let g = fence.graph();
        println!("fence {w:<16} {:?}", g.strand_permutation()?);
    }
    println!("pentagon          {:?}", triangulation_graph(5, &fan_triangulation(5))?.strand_permutation()?);
    println!("Le graph Gr(3,6)  {:?}", le_graph(3, 6)?.strand_permutation()?);
    Ok(())
}

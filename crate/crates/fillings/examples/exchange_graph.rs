//! Exchange graphs of fence seeds.

use fillings::braid::BraidWord;
use fillings::cluster::{exchange_graph, DEFAULT_BUDGET};

fn main() -> fillings::Result<()> {
    let words: Vec<String> = std::env::args().skip(1).collect();
    let words = if words.is_empty() {
        ["s1^3", "s1^4", "s1^5", "(s1 s2)^3", "(s1 s2)^4"].map(String::from).to_vec()
    } else {
        words
    };
    for w in &words {
        let t = std::time::Instant::now();
        let g = exchange_graph(&BraidWord::parse(w)?, 1, DEFAULT_BUDGET)?;
        println!("{w:<12} {:>4} clusters, {:>5} edges  ({:?})", g.len(), g.edges.len(), t.elapsed());
    }
    Ok(())
}

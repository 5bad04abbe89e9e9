//! The square-move transformation of monodromies on random nonagon
//! configurations.

use fillings::flags::{square_move_check, SquareConfig};

fn main() -> fillings::Result<()> {
    let (mut ok, mut degenerate) = (0, 0);
    for seed in 0..100 {
        let r = square_move_check(&SquareConfig::random(seed))?;
        if r.degenerate {
            degenerate += 1;
        } else if r.holds() {
            ok += 1;
        } else {
            println!("seed {seed}: {:?}", r.failures);
        }
        if seed < 3 {
            println!("seed {seed}: m_F = {}", r.m_f);
        }
    }
    println!("{ok} configurations satisfy the law, {degenerate} degenerate");
    Ok(())
}

//! Closed-cycle monodromies against the monomials in the minors.

use fillings::braid::BraidWord;
use fillings::flags::{check_x_duality, cycle_monodromy, sample_conf};
use fillings::weave::compile_braid_weave;

fn main() -> fillings::Result<()> {
    let beta = BraidWord::parse("(s1 s2)^3")?;
    let chain = sample_conf(&beta, 3)?;
    for c in compile_braid_weave(&beta).cycle_basis().closed {
        println!("{c:?}: {}", cycle_monodromy(&chain, &c)?);
    }
    let r = check_x_duality(&chain)?;
    println!("{} checks, holds: {}", r.checked, r.holds());
    Ok(())
}

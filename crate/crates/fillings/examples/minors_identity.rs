//! Merodromy of relative cycles against leading principal minors, under
//! both candidate sign conventions for the braid matrices.

use fillings::braid::BraidWord;
use fillings::flags::{check_minor_identity, principal_minor, sample_conf_with, TauConvention};

fn main() -> fillings::Result<()> {
    let beta = BraidWord::parse("(s1 s2)^3")?;
    for conv in [TauConvention::Standard, TauConvention::Mirrored] {
        let chain = sample_conf_with(&beta, 1, conv)?;
        let r = check_minor_identity(&chain)?;
        println!("{conv:?}: {} checks, {} failures", r.checked, r.failures.len());
    }
    let chain = sample_conf_with(&beta, 1, TauConvention::Standard)?;
    println!("z = {:?}", chain.z.iter().map(|z| z.to_string()).collect::<Vec<_>>());
    for t in 0..=chain.len() {
        let m = chain.matrix(t);
        println!("  Δ_1 = {:>8}  Δ_2 = {:>8}", principal_minor(m, 1).to_string(), principal_minor(m, 2).to_string());
    }
    Ok(())
}

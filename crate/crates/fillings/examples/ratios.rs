use fillings::flags::{cross_ratio, cross_ratio_by_transport, triple_ratio, triple_ratio_by_transport, DecoratedFlag3};
use fillings::linalg::q;

fn main() -> fillings::Result<()> {
    let v = |xs: &[i64]| xs.iter().map(|&x| q(x)).collect::<Vec<_>>();
    let (a, b, c, d) = (v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[1, -1]));
    println!("cross ratio        {}", cross_ratio(&a, &b, &c, &d)?);
    println!("  by transport     {}", cross_ratio_by_transport(&a, &b, &c, &d)?);

    let f1 = DecoratedFlag3::new(v(&[1, 0, 0]), v(&[0, 1, 0]));
    let f2 = DecoratedFlag3::new(v(&[0, 0, 1]), v(&[1, 1, 0]));
    let f3 = DecoratedFlag3::new(v(&[1, 2, 3]), v(&[1, 0, 1]));
    println!("triple ratio       {}", triple_ratio(&f1, &f2, &f3)?);
    println!("  by transport     {}", triple_ratio_by_transport(&f1, &f2, &f3)?);
    Ok(())
}

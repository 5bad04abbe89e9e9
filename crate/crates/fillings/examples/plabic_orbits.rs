//! Square-move orbits of reduced plabic graphs, compared with weak separation.

use fillings::plabic::{fan_triangulation, le_graph, plabic_orbit_count, triangulation_graph, zigzag_triangulation};
use fillings::separated::weakly_separated_count;

fn main() -> fillings::Result<()> {
    for (k, m) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let orbit = plabic_orbit_count(&le_graph(k, m)?, 100_000)?;
        let ws = weakly_separated_count(k, m)?.count;
        println!("Le graph Gr({k},{m}): {orbit:>3} graphs, {ws:>3} weakly separated collections");
    }
    let fan = triangulation_graph(5, &fan_triangulation(5))?;
    let zz = triangulation_graph(6, &zigzag_triangulation(6))?;
    println!("pentagon, fan:       {}", plabic_orbit_count(&fan, 1000)?);
    println!("hexagon, zigzag:     {}", plabic_orbit_count(&zz, 1000)?);
    Ok(())
}

//! Compares the quotient-complex image ranks with the independent coned
//! persistence computation on random small instances and a worked example.

use localhom::complexes::Flavor;
use localhom::geometry::Point;
use localhom::relhom::{cross_validate, image_rank, image_rank_oracle, Level, QuerySpec};

fn main() -> localhom::Result<()> {
    let circle: Vec<Point> = (0..12)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 12.0;
            Point::xy(t.cos(), t.sin())
        })
        .collect();
    let spec = QuerySpec {
        center: 0,
        level1: Level::new(0.3, 0.9),
        level2: Level::new(0.4, 0.6),
        flavor: Flavor::Rips,
        modulus: 3,
        max_degree: 1,
    };
    println!("12-gon, direct {:?}", image_rank(&spec, &circle)?.ranks);
    println!("12-gon, coned  {:?}", image_rank_oracle(&spec, &circle)?.ranks);

    let report = cross_validate(500, 10, 42)?;
    println!("{}/{} random instances agree", report.agreed, report.instances);
    for d in &report.disagreements {
        println!("  mismatch: direct {:?} coned {:?}", d.direct, d.coned);
    }
    Ok(())
}

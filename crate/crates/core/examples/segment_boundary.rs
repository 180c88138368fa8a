//! A segment has boundary: interior points see one degree-1 class, points at
//! the ends see none. Scales keep the outer ball narrower than the margin.

use localhom::complexes::Flavor;
use localhom::geometry::{Sample, StratifiedShape};
use localhom::pipeline::infer_all;
use localhom::scales::{select_manifold, Choice, ReachBound, ScaleConstants};

fn main() -> localhom::Result<()> {
    let shape = StratifiedShape::segment([0.0, 0.0], [1.0, 0.0])?;
    let eps = 0.01;
    let sample = Sample::new(shape.even_sample(101), eps, false)?;
    let cc = ScaleConstants::euclidean(false, Flavor::Rips);
    let scales = select_manifold(cc, eps, ReachBound::new(0.5, Some(0.3))?, Choice::Midpoint)?;
    println!("R = {:.4}, r = {:.4}", scales.radius1, scales.radius2);
    let results = infer_all(&sample, &scales, cc, 2, 1)?;
    for r in results.iter().step_by(10) {
        println!("x = {:.2}: ranks {:?} ({})", sample.points[r.index].coords()[0], r.signature.ranks, r.label);
    }
    Ok(())
}

//! Evenly sampled unit circle with scales chosen from its reach: every
//! point should carry the local homology of a curve, one class in degree 1.

use localhom::complexes::Flavor;
use localhom::geometry::{hausdorff, Sample, StratifiedShape};
use localhom::pipeline::{classify, default_sweep, infer_all, ReportContext};
use localhom::scales::{select_manifold, Choice, ReachBound, ScaleConstants};

fn main() -> localhom::Result<()> {
    let shape = StratifiedShape::circle(1.0)?;
    let eps = 0.05;
    let points = shape.even_sample(150);
    println!("Hausdorff distance {:.4}", hausdorff(&points, &shape, 4000)?.value);
    let mut sample = Sample::new(points, eps, false)?;
    sample.shape = Some(shape.kind().clone());

    let cc = ScaleConstants::euclidean(false, Flavor::Rips);
    let scales = select_manifold(cc, eps, ReachBound::new(1.0, None)?, Choice::Explicit { outer: 1.0, inner: 0.5 })?;
    let results = infer_all(&sample, &scales, cc, 2, 1)?;
    let ctx = ReportContext { sample: &sample, scales: &scales, flavor: cc.flavor, modulus: 2, max_degree: 1 };
    let report = classify(&ctx, &results, &shape, &default_sweep())?;
    println!("first point ranks {:?}, label {}", report.points[0].ranks, report.points[0].label);
    println!("accuracy {:?}", report.accuracy.overall);
    Ok(())
}

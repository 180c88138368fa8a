//! Noisy circle with a chord: classify every sample point by its estimated
//! degree-1 local homology and report accuracy away from the junctions.

use std::time::Instant;

use localhom::complexes::Flavor;
use localhom::geometry::{generate_sample, Noise, StratifiedShape};
use localhom::pipeline::{classify, default_sweep, infer_all, ReportContext};
use localhom::scales::{validate_manual, ScaleConstants, SelectedScales};

fn main() -> localhom::Result<()> {
    let shape = StratifiedShape::circle_chord();
    let eps = 0.018;
    let sample = generate_sample(&shape, eps, 1500, Noise::UniformDisc { radius: 0.009 }, 7)?;
    let cc = ScaleConstants::euclidean(true, Flavor::Rips);
    let scales = SelectedScales::manual(0.018, 0.06, 0.175, 0.116)?;
    for w in validate_manual(cc, eps, &scales)? {
        println!("warning: {w}");
    }

    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
    let start = Instant::now();
    let results = pool.install(|| infer_all(&sample, &scales, cc, 2, 1))?;
    println!("inference: {:.2?} single-threaded", start.elapsed());

    let ctx = ReportContext { sample: &sample, scales: &scales, flavor: cc.flavor, modulus: 2, max_degree: 1 };
    let report = classify(&ctx, &results, &shape, &default_sweep())?;
    println!("overall accuracy {:.4}", report.accuracy.overall.unwrap_or(f64::NAN));
    for e in &report.accuracy.by_w0 {
        println!("  w0 = {:.2}: accuracy {:.4} over {} points", e.w0, e.acc.unwrap_or(f64::NAN), e.n);
    }
    let mut counts = std::collections::BTreeMap::new();
    for p in &report.points {
        *counts.entry(p.label.as_str()).or_insert(0) += 1;
    }
    println!("labels: {counts:?}");
    Ok(())
}

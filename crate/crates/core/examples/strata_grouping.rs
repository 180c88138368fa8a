//! Groups points of a circle-with-chord sample whose local homology maps
//! have the same image. The grouping is a heuristic with no guarantee.

use localhom::complexes::Flavor;
use localhom::geometry::{generate_sample, Noise, StratifiedShape};
use localhom::pipeline::group_strata;
use localhom::scales::{ScaleConstants, SelectedScales};

fn main() -> localhom::Result<()> {
    let shape = StratifiedShape::circle_chord();
    let eps = 0.018;
    let sample = generate_sample(&shape, eps, 1500, Noise::UniformDisc { radius: 0.009 }, 7)?;
    let cc = ScaleConstants::euclidean(true, Flavor::Rips);
    let scales = SelectedScales::manual(0.018, 0.06, 0.175, 0.116)?;
    let grouping = group_strata(&sample, &scales, cc.flavor, 2, 1, eps)?;
    println!("{} of {} neighbor pairs joined", grouping.pairs_joined, grouping.pairs_tested);
    println!("{} groups", grouping.groups.len());
    for g in grouping.groups.iter().filter(|g| g.len() > 1) {
        let centroid = g.iter().fold([0.0, 0.0], |acc, &i| {
            let c = sample.points[i].coords();
            [acc[0] + c[0] / g.len() as f64, acc[1] + c[1] / g.len() as f64]
        });
        println!("  {:4} points around ({:+.3}, {:+.3})", g.len(), centroid[0], centroid[1]);
    }
    Ok(())
}

//! Generates ε-samples of each built-in shape, with and without noise, and
//! prints the verified Hausdorff distance alongside its discretization slack.

use localhom::geometry::{generate_sample, hausdorff, Noise, StratifiedShape};

fn main() -> localhom::Result<()> {
    let shapes = [
        ("unit circle", StratifiedShape::circle(1.0)?),
        ("circle with chord", StratifiedShape::circle_chord()),
        ("unit segment", StratifiedShape::segment([0.0, 0.0], [1.0, 0.0])?),
    ];
    for (name, shape) in &shapes {
        for noise in [Noise::None, Noise::UniformDisc { radius: 0.01 }] {
            let sample = generate_sample(shape, 0.03, 400, noise, 11)?;
            let est = hausdorff(&sample.points, shape, 2000)?;
            println!(
                "{name:18} {noise:?}: {} points, d_H in [{:.5}, {:.5}]",
                sample.len(),
                est.value,
                est.value + est.discretization_bound
            );
        }
    }

    // Too few points for the requested epsilon: verification refuses the sample.
    match generate_sample(&shapes[0].1, 0.01, 50, Noise::None, 0) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("50 points at eps 0.01: {e}"),
    }
    Ok(())
}

//! Picks complex scales and ball radii in each supported regime and checks
//! hand-chosen values against the same thresholds.

use localhom::complexes::Flavor;
use localhom::scales::{
    manifold_outer_interval, select_bounded, select_manifold, select_strong, validate_manual, Ambient, Choice,
    ReachBound, ScaleConstants, SeemlinessBound, SelectedScales,
};

fn show(label: &str, s: &SelectedScales) {
    println!(
        "{label:28} scale1 {:.4}  scale2 {:.4}  R {:.4}  r {:.4}  ({} warnings)",
        s.scale1,
        s.scale2,
        s.radius1,
        s.radius2,
        s.warnings.len()
    );
}

fn main() -> localhom::Result<()> {
    let rips = ScaleConstants::new(false, Ambient::Euclidean, Flavor::Rips);
    let eps = 0.05;
    let (lo, hi) = manifold_outer_interval(rips, eps, 1.0);
    println!("unit circle, eps {eps}: R must lie in ({lo:.5}, {hi:.5})");
    show("manifold, midpoint", &select_manifold(rips, eps, ReachBound::new(1.0, None)?, Choice::Midpoint)?);
    let explicit = Choice::Explicit { outer: 1.0, inner: 0.5 };
    show("manifold, R = 1, r = 0.5", &select_manifold(rips, eps, ReachBound::new(1.0, None)?, explicit)?);
    show("manifold with boundary", &select_manifold(rips, 0.01, ReachBound::new(0.5, Some(0.3))?, Choice::Midpoint)?);

    let cech = ScaleConstants::euclidean(true, Flavor::Cech);
    show("strong, Čech, noisy", &select_strong(cech, 0.01, 0.1, 0.8, Choice::Midpoint)?);
    show("bounded, Čech, noisy", &select_bounded(cech, 0.01, SeemlinessBound::new(2.0, 0.5, 1.0)?, Choice::Midpoint)?);

    if let Err(e) = select_manifold(rips, 0.2, ReachBound::new(1.0, None)?, Choice::Midpoint) {
        println!("eps 0.2 on the unit circle: {e}");
    }

    let noisy_rips = ScaleConstants::euclidean(true, Flavor::Rips);
    let hand = SelectedScales::manual(0.018, 0.06, 0.175, 0.116)?;
    println!("hand-picked values at eps 0.018:");
    for w in validate_manual(noisy_rips, 0.018, &hand)? {
        println!("  {w}");
    }
    Ok(())
}

//! Scans admissible (R, r) radii at the junction of the circle-with-chord
//! for a few complex scales and compares the lower end of the largest
//! admissible triangle with the rough bound sqrt(3)·alpha.

use localhom::complexes::Flavor;
use localhom::explorer::{scan_alpha_section, section_nesting, section_properties, GridSpec, ScanRequest};
use localhom::geometry::{Point, StratifiedShape};

fn main() -> localhom::Result<()> {
    let shape = StratifiedShape::circle_chord();
    let grid = GridSpec { lo: 0.02, hi: 1.2, steps: 60 };
    let mut scans = Vec::new();
    for alpha in [0.04, 0.06, 0.08, 0.1] {
        let req =
            ScanRequest { center: Point::xy(1.0, 0.0), alpha, eps: 0.02, grid, dense_n: 600, flavor: Flavor::Cech };
        let scan = scan_alpha_section(&shape, &req)?;
        let s = &scan.summary;
        let props = section_properties(&scan);
        println!(
            "alpha {alpha:.2}: {}/{} cells admissible, triangle side {:?} from r = {:?} (sqrt3*alpha = {:.4}), intervals ok: {}",
            s.members,
            s.evaluated,
            s.triangle_side,
            s.triangle_lower,
            3f64.sqrt() * alpha,
            props.passed()
        );
        for v in props.violations.iter().take(3) {
            println!("  {v}");
        }
        scans.push(scan);
    }
    for w in scans.windows(2) {
        let rep = section_nesting(&w[0], &w[1])?;
        println!("alpha {} within alpha {}: {}", w[1].alpha, w[0].alpha, rep.passed());
    }
    Ok(())
}

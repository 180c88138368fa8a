//! Hand-written SVG figures: labelled sample scatter and scan heatmaps.

use std::fmt::Write;

use crate::explorer::AlphaSectionScan;
use crate::geometry::{Primitive, StratifiedShape};
use crate::pipeline::RunReport;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

pub fn label_color(label: &str) -> &'static str {
    match label {
        "rank1" => "#1f4fd8",
        "rank2" => "#d62728",
        "boundary" => "#8c8c8c",
        _ => "#000000",
    }
}

/// Maps data coordinates onto the square drawing area, y pointing up.
struct Frame {
    min: [f64; 2],
    scale: f64,
}

impl Frame {
    fn fit(lo: [f64; 2], hi: [f64; 2]) -> Self {
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let pad = 0.05 * span;
        Self { min: [lo[0] - pad, lo[1] - pad], scale: (SIZE - 2.0 * MARGIN) / (span + 2.0 * pad) }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (MARGIN + (p[0] - self.min[0]) * self.scale, SIZE - MARGIN - (p[1] - self.min[1]) * self.scale)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{title}</text>"#);
}

fn axes(out: &mut String) {
    let (lo, hi) = (MARGIN, SIZE - MARGIN);
    let _ = writeln!(out, r#"<g class="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(out, r#"<line x1="{lo}" y1="{hi}" x2="{hi}" y2="{hi}"/>"#);
    let _ = writeln!(out, r#"<line x1="{lo}" y1="{hi}" x2="{lo}" y2="{lo}"/>"#);
    let _ = writeln!(out, "</g>");
}

fn overlay(out: &mut String, frame: &Frame, shape: &StratifiedShape) {
    let _ = writeln!(out, r##"<g class="shape" fill="none" stroke="#444" stroke-width="0.8" stroke-dasharray="3,2">"##);
    for prim in shape.primitives() {
        let steps = match prim {
            Primitive::Segment { .. } => 1,
            _ => 96,
        };
        let len = prim.length();
        let pts: Vec<String> = (0..=steps)
            .map(|k| {
                let (x, y) = frame.map(prim.point_at(len * k as f64 / steps as f64));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(out, r#"<polyline points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");
}

fn legend(out: &mut String, labels: &[&str]) {
    let _ = writeln!(out, r#"<g class="legend" font-family="sans-serif" font-size="11">"#);
    for (k, label) in labels.iter().enumerate() {
        let y = MARGIN + 14.0 * k as f64;
        let x = SIZE - MARGIN - 70.0;
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="4" fill="{}"/>"#, label_color(label));
        let _ = writeln!(out, r#"<text x="{}" y="{}">{label}</text>"#, x + 8.0, y + 4.0);
    }
    let _ = writeln!(out, "</g>");
}

/// Scatter of the points in a report, colored by label. With `only_correct`
/// misclassified points are left out.
pub fn report_svg(report: &RunReport, shape: Option<&StratifiedShape>, only_correct: bool) -> String {
    let shown: Vec<_> = report
        .points
        .iter()
        .filter(|p| !only_correct || p.correct == Some(true))
        .filter(|p| p.coords.len() >= 2)
        .collect();
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in &shown {
        for k in 0..2 {
            lo[k] = lo[k].min(p.coords[k]);
            hi[k] = hi[k].max(p.coords[k]);
        }
    }
    if shown.is_empty() {
        (lo, hi) = ([-1.0, -1.0], [1.0, 1.0]);
    }
    let frame = Frame::fit(lo, hi);
    let mut out = String::new();
    let title = if only_correct { "correctly estimated points" } else { "estimated local homology" };
    header(&mut out, title);
    axes(&mut out);
    if shown.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    if let Some(shape) = shape {
        overlay(&mut out, &frame, shape);
    }
    let _ = writeln!(out, r#"<g class="points">"#);
    for p in &shown {
        let (x, y) = frame.map([p.coords[0], p.coords[1]]);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.6" fill="{}"/>"#, label_color(&p.label));
    }
    let _ = writeln!(out, "</g>");
    let mut labels: Vec<&str> = Vec::new();
    for p in &shown {
        if !labels.contains(&p.label.as_str()) {
            labels.push(&p.label);
        }
    }
    labels.sort_unstable();
    legend(&mut out, &labels);
    out.push_str("</svg>\n");
    out
}

/// Heatmap of an alpha-section scan: outer radius on x, inner on y.
pub fn scan_svg(scan: &AlphaSectionScan) -> String {
    let n = scan.axis.len();
    let mut out = String::new();
    header(&mut out, &format!("admissible radii, alpha = {}", scan.alpha));
    axes(&mut out);
    let cell = (SIZE - 2.0 * MARGIN) / n.max(1) as f64;
    let _ = writeln!(out, r#"<g class="cells">"#);
    for (i, row) in scan.membership.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            let fill = match c {
                Some(true) => "#2ca02c",
                Some(false) => "#f2d0d0",
                None => continue,
            };
            let x = MARGIN + i as f64 * cell;
            let y = SIZE - MARGIN - (j + 1) as f64 * cell;
            let _ =
                writeln!(out, r#"<rect x="{x:.2}" y="{y:.2}" width="{cell:.2}" height="{cell:.2}" fill="{fill}"/>"#);
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11">R</text>"#,
        SIZE / 2.0,
        SIZE - MARGIN / 3.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11">r</text>"#,
        MARGIN / 3.0,
        SIZE / 2.0
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Flavor;
    use crate::pipeline::{Accuracy, PointRecord, SampleInfo};
    use crate::scales::SelectedScales;

    fn report(points: Vec<PointRecord>) -> RunReport {
        RunReport {
            sample: SampleInfo {
                n: points.len(),
                epsilon: 0.1,
                noisy: false,
                seed: None,
                shape: None,
                flavor: Flavor::Rips,
                field: 2,
                max_degree: 1,
            },
            scales: SelectedScales::manual(0.1, 0.2, 0.5, 0.3).unwrap(),
            points,
            accuracy: Accuracy { overall: None, by_w0: Vec::new() },
        }
    }

    fn record(i: usize, x: f64, label: &str, correct: bool) -> PointRecord {
        PointRecord {
            i,
            coords: vec![x, 0.5 * x],
            ranks: Default::default(),
            label: label.into(),
            nearest_stratum: None,
            dist_to_0strata: None,
            correct: Some(correct),
        }
    }

    fn count(svg: &str, pat: &str) -> usize {
        svg.matches(pat).count()
    }

    #[test]
    fn scatter_structure() {
        let rep =
            report(vec![record(0, 0.0, "rank1", true), record(1, 1.0, "rank2", false), record(2, 2.0, "rank1", true)]);
        let shape = StratifiedShape::circle_chord();
        let svg = report_svg(&rep, Some(&shape), false);
        assert!(svg.starts_with("<svg"));
        assert_eq!(count(&svg, "<polyline"), 3);
        assert_eq!(count(&svg, r##"fill="#1f4fd8""##), 3);
        assert_eq!(count(&svg, r##"fill="#d62728""##), 2);
        assert!(svg.contains(">rank2</text>"));
        let filtered = report_svg(&rep, None, true);
        assert_eq!(count(&filtered, r##"fill="#d62728""##), 0);
        assert_eq!(count(&filtered, "<polyline"), 0);
    }

    #[test]
    fn empty_report_draws_axes_only() {
        let svg = report_svg(&report(Vec::new()), None, false);
        assert!(svg.contains(r#"class="axes""#));
        assert!(!svg.contains("<circle"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}

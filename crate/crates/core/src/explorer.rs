//! Empirical scans of the admissible (R, r) radii at a fixed complex scale.
//!
//! The admissible set is defined through homology of continuous thickenings
//! of the shape, which is not computable. A scan replaces the thickenings by
//! complexes on a dense noise-free sample and records, for every grid cell
//! `(R, r)` with `R ≥ r > alpha`, whether the map
//! `H(X_eps, X_eps − B_R(x)) → H(X_alpha, X_alpha − B_r(x))` has the ranks of
//! the true local homology at `x`. Every result is an empirical surrogate.

use serde::{Deserialize, Serialize};

use crate::complexes::{build_complex, ChainBasis, Flavor, SimplicialComplex};
use crate::error::{Error, Result};
use crate::fieldla::{Field, Gf2};
use crate::geometry::{ground_truth, hausdorff, Point, StratifiedShape};
use crate::relhom::{SourceClasses, TargetSpace};

const MAX_DEGREE: usize = 1;

/// Common axis for both radii: `steps` values from `lo` to `hi` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn axis(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.lo + h * k as f64).collect()
    }

    pub fn cell_width(&self) -> f64 {
        if self.steps < 2 {
            0.0
        } else {
            (self.hi - self.lo) / (self.steps - 1) as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRequest {
    pub center: Point,
    pub alpha: f64,
    pub eps: f64,
    pub grid: GridSpec,
    pub dense_n: usize,
    pub flavor: Flavor,
}

/// Membership per cell, `None` outside `R ≥ r > alpha`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaSectionScan {
    pub center: Point,
    pub alpha: f64,
    pub eps: f64,
    pub flavor: Flavor,
    pub axis: Vec<f64>,
    /// `membership[i][j]` for outer radius `axis[i]`, inner radius `axis[j]`
    pub membership: Vec<Vec<Option<bool>>>,
    /// ranks of the true local homology at the center, by degree
    pub target_ranks: Vec<usize>,
    /// Hausdorff distance of the dense sample to the shape
    pub dense_hausdorff: f64,
    pub summary: SectionSummary,
}

/// Extent of the member cells and the largest right isosceles triangle
/// `{(R, r) : lower ≤ r ≤ R ≤ lower + side}` made only of member cells.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SectionSummary {
    pub members: usize,
    pub evaluated: usize,
    pub outer_min: Option<f64>,
    pub outer_max: Option<f64>,
    pub inner_min: Option<f64>,
    pub inner_max: Option<f64>,
    pub triangle_side: Option<f64>,
    pub triangle_lower: Option<f64>,
    pub empirical: bool,
}

fn image_ranks<F: Field>(target: &mut TargetSpace<F>, source: &SourceClasses<F>) -> Vec<usize> {
    (0..=MAX_DEGREE).map(|d| target.image_rank(source, d)).collect()
}

pub fn scan_alpha_section(shape: &StratifiedShape, req: &ScanRequest) -> Result<AlphaSectionScan> {
    if !(req.eps > 0.0 && req.alpha >= req.eps) {
        return Err(Error::InvalidArgument(format!("need 0 < eps <= alpha, got eps={} alpha={}", req.eps, req.alpha)));
    }
    let axis = req.grid.axis();
    if req.grid.steps == 0 || !axis.iter().any(|&r| r > req.alpha) {
        return Err(Error::InvalidArgument(format!("no grid radius exceeds alpha = {}", req.alpha)));
    }
    let truth = ground_truth(shape, &req.center)?;
    let target_ranks: Vec<usize> = (0..=MAX_DEGREE).map(|d| truth.rank(d)).collect();
    let dense = shape.even_sample(req.dense_n);
    let grid = ((4.0 / req.eps).ceil() as usize).max(1);
    let dense_hausdorff = hausdorff(&dense, shape, grid)?.value;

    let all: Vec<usize> = (0..dense.len()).collect();
    let fine = build_complex(req.flavor, &dense, &all, req.eps, MAX_DEGREE + 1);
    let coarse = build_complex(req.flavor, &dense, &all, req.alpha, MAX_DEGREE + 1);
    let membership = scan_cells(Gf2, &dense, &fine, &coarse, req, &axis, &target_ranks);
    let summary = summarize(&axis, &membership);
    Ok(AlphaSectionScan {
        center: req.center.clone(),
        alpha: req.alpha,
        eps: req.eps,
        flavor: req.flavor,
        axis,
        membership,
        target_ranks,
        dense_hausdorff,
        summary,
    })
}

fn scan_cells<F: Field>(
    field: F,
    dense: &[Point],
    fine: &SimplicialComplex,
    coarse: &SimplicialComplex,
    req: &ScanRequest,
    axis: &[f64],
    truth: &[usize],
) -> Vec<Vec<Option<bool>>> {
    let n = axis.len();
    let live = |j: usize| axis[j] > req.alpha;
    let mut targets: Vec<Option<TargetSpace<F>>> = (0..n)
        .map(|j| {
            live(j).then(|| {
                let chains = ChainBasis::meeting_ball(coarse, dense, &req.center, axis[j]);
                TargetSpace::new(field, chains, MAX_DEGREE)
            })
        })
        .collect();
    (0..n)
        .map(|i| {
            let source = live(i).then(|| {
                let chains = ChainBasis::meeting_ball(fine, dense, &req.center, axis[i]);
                SourceClasses::new(field, &chains, MAX_DEGREE)
            });
            (0..n)
                .map(|j| match (&source, &mut targets[j]) {
                    (Some(s), Some(t)) if j <= i => Some(image_ranks(t, s) == truth),
                    _ => None,
                })
                .collect()
        })
        .collect()
}

fn summarize(axis: &[f64], m: &[Vec<Option<bool>>]) -> SectionSummary {
    let mut s = SectionSummary { empirical: true, ..Default::default() };
    let fold = |slot: &mut Option<f64>, v: f64, take_min: bool| {
        *slot = Some(match *slot {
            None => v,
            Some(cur) if take_min => cur.min(v),
            Some(cur) => cur.max(v),
        });
    };
    for (i, row) in m.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            match cell {
                Some(true) => {
                    s.members += 1;
                    s.evaluated += 1;
                    fold(&mut s.outer_min, axis[i], true);
                    fold(&mut s.outer_max, axis[i], false);
                    fold(&mut s.inner_min, axis[j], true);
                    fold(&mut s.inner_max, axis[j], false);
                }
                Some(false) => s.evaluated += 1,
                None => {}
            }
        }
    }
    if let Some((a, b)) = largest_triangle(m) {
        s.triangle_side = Some(axis[b] - axis[a]);
        s.triangle_lower = Some(axis[a]);
    }
    s
}

/// Largest `b - a` such that every cell `a ≤ j ≤ i ≤ b` is a member;
/// ties go to the smallest `a`.
fn largest_triangle(m: &[Vec<Option<bool>>]) -> Option<(usize, usize)> {
    let n = m.len();
    let member = |i: usize, j: usize| m[i][j] == Some(true);
    let mut best: Option<(usize, usize)> = None;
    for a in 0..n {
        if !member(a, a) {
            continue;
        }
        let mut b = a;
        while b + 1 < n && (a..=b + 1).all(|j| member(b + 1, j)) {
            b += 1;
        }
        if best.is_none_or(|(ba, bb)| b - a > bb - ba) {
            best = Some((a, b));
        }
    }
    best
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub rows_are_intervals: bool,
    pub columns_are_intervals: bool,
    pub violations: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Member indices along a line form an interval once single-cell gaps are filled.
fn is_interval_with_slack(members: &[usize]) -> bool {
    members.windows(2).all(|w| w[1] - w[0] <= 2)
}

/// Row sections (fixed R) and column sections (fixed r) must be intervals,
/// up to one grid cell.
pub fn section_properties(scan: &AlphaSectionScan) -> PropertyReport {
    let m = &scan.membership;
    let n = m.len();
    let mut report = PropertyReport { rows_are_intervals: true, columns_are_intervals: true, violations: Vec::new() };
    for i in 0..n {
        let members: Vec<usize> = (0..n).filter(|&j| m[i][j] == Some(true)).collect();
        if !is_interval_with_slack(&members) {
            report.rows_are_intervals = false;
            report.violations.push(format!("R = {:.6}: inner radii {members:?} not an interval", scan.axis[i]));
        }
    }
    for j in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| m[i][j] == Some(true)).collect();
        if !is_interval_with_slack(&members) {
            report.columns_are_intervals = false;
            report.violations.push(format!("r = {:.6}: outer radii {members:?} not an interval", scan.axis[j]));
        }
    }
    report
}

/// Every member cell of the larger-alpha scan must be a member of the
/// smaller-alpha scan, or have a member among its eight neighbors there.
pub fn section_nesting(smaller: &AlphaSectionScan, larger: &AlphaSectionScan) -> Result<PropertyReport> {
    if smaller.axis != larger.axis || smaller.alpha > larger.alpha {
        return Err(Error::InvalidArgument("nesting needs a common axis and ordered alphas".into()));
    }
    let n = smaller.axis.len();
    let member = |i: isize, j: isize| {
        i >= 0
            && j >= 0
            && (i as usize) < n
            && (j as usize) < n
            && smaller.membership[i as usize][j as usize] == Some(true)
    };
    let mut report = PropertyReport { rows_are_intervals: true, columns_are_intervals: true, violations: Vec::new() };
    for i in 0..n {
        for j in 0..n {
            if larger.membership[i][j] != Some(true) {
                continue;
            }
            let (ii, jj) = (i as isize, j as isize);
            let covered = (-1..=1).any(|di| (-1..=1).any(|dj| member(ii + di, jj + dj)));
            if !covered {
                report.violations.push(format!(
                    "(R, r) = ({:.6}, {:.6}) member at alpha {} but not at {}",
                    larger.axis[i], larger.axis[j], larger.alpha, smaller.alpha
                ));
            }
        }
    }
    Ok(report)
}

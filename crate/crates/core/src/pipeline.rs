//! Per-point inference over a whole sample, scoring against analytic ground
//! truth, and a heuristic grouping of points into strata.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{quotient_pair, Flavor};
use crate::error::{Error, Result};
use crate::fieldla::{is_prime, Field};
use crate::geometry::{ground_truth, Point, Sample, ShapeKind, StratifiedShape};
use crate::relhom::{
    check_levels, image_rank_batch, with_field, HomologySignature, QuerySpec, SourceClasses, TargetSpace,
};
use crate::scales::{ScaleConstants, SelectedScales};

/// Distances from the nearest 0-dimensional stratum used for restricted accuracy.
pub fn default_sweep() -> Vec<f64> {
    (0..=10).map(|k| k as f64 * 0.05).collect()
}

/// Label from the degree-1 rank alone; the full signature is kept alongside.
pub fn label_for(sig: &HomologySignature) -> String {
    match sig.rank(1) {
        0 => "boundary".to_string(),
        1 => "rank1".to_string(),
        2 => "rank2".to_string(),
        _ => {
            let parts: Vec<String> = sig.ranks.iter().map(usize::to_string).collect();
            format!("other({})", parts.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointResult {
    pub index: usize,
    pub signature: HomologySignature,
    pub label: String,
}

/// One query per sample point, level 1 = (scale1, R), level 2 = (scale2, r),
/// complex type taken from the constants. Results are in sample order.
pub fn infer_all(
    sample: &Sample,
    scales: &SelectedScales,
    cc: ScaleConstants,
    modulus: u32,
    max_degree: usize,
) -> Result<Vec<PointResult>> {
    check_levels(scales.level1(), scales.level2())?;
    if !is_prime(modulus) {
        return Err(Error::NonPrimeModulus(modulus));
    }
    let specs: Vec<QuerySpec> = (0..sample.len())
        .map(|center| QuerySpec {
            center,
            level1: scales.level1(),
            level2: scales.level2(),
            flavor: cc.flavor,
            modulus,
            max_degree,
        })
        .collect();
    image_rank_batch(&specs, &sample.points)
        .into_iter()
        .enumerate()
        .map(|(index, sig)| {
            let signature = sig?;
            let label = label_for(&signature);
            Ok(PointResult { index, signature, label })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleInfo {
    pub n: usize,
    pub epsilon: f64,
    pub noisy: bool,
    pub seed: Option<u64>,
    pub shape: Option<ShapeKind>,
    pub flavor: Flavor,
    pub field: u32,
    pub max_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub i: usize,
    pub coords: Vec<f64>,
    /// degree (as a string key) -> rank
    pub ranks: BTreeMap<String, usize>,
    pub label: String,
    pub nearest_stratum: Option<usize>,
    pub dist_to_0strata: Option<f64>,
    pub correct: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub w0: f64,
    /// `None` when no point is at least `w0` away from the 0-strata
    pub acc: Option<f64>,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Accuracy {
    pub overall: Option<f64>,
    pub by_w0: Vec<SweepEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub sample: SampleInfo,
    pub scales: SelectedScales,
    pub points: Vec<PointRecord>,
    pub accuracy: Accuracy,
}

impl RunReport {
    /// Misclassified points, in sample order.
    pub fn mistakes(&self) -> impl Iterator<Item = &PointRecord> {
        self.points.iter().filter(|p| p.correct == Some(false))
    }

    /// Smallest sweep value whose restricted accuracy reaches `target`.
    pub fn calibrated_w0(&self, target: f64) -> Option<f64> {
        self.accuracy.by_w0.iter().find(|e| e.acc.is_some_and(|a| a >= target)).map(|e| e.w0)
    }
}

pub struct ReportContext<'a> {
    pub sample: &'a Sample,
    pub scales: &'a SelectedScales,
    pub flavor: Flavor,
    pub modulus: u32,
    pub max_degree: usize,
}

impl ReportContext<'_> {
    fn info(&self) -> SampleInfo {
        SampleInfo {
            n: self.sample.len(),
            epsilon: self.sample.epsilon,
            noisy: self.sample.noisy,
            seed: self.sample.seed,
            shape: self.sample.shape.clone(),
            flavor: self.flavor,
            field: self.modulus,
            max_degree: self.max_degree,
        }
    }
}

fn base_record(p: &Point, r: &PointResult) -> PointRecord {
    PointRecord {
        i: r.index,
        coords: p.coords().to_vec(),
        ranks: r.signature.ranks.iter().enumerate().map(|(d, &k)| (d.to_string(), k)).collect(),
        label: r.label.clone(),
        nearest_stratum: None,
        dist_to_0strata: None,
        correct: None,
    }
}

/// Report without ground truth: ranks and labels only.
pub fn report(ctx: &ReportContext<'_>, results: &[PointResult]) -> RunReport {
    let points = results.iter().map(|r| base_record(&ctx.sample.points[r.index], r)).collect();
    RunReport {
        sample: ctx.info(),
        scales: ctx.scales.clone(),
        points,
        accuracy: Accuracy { overall: None, by_w0: Vec::new() },
    }
}

/// Scores every result against the local homology of the shape at the
/// point's associated shape point (the generating point when recorded,
/// else the nearest point). A result is correct iff its ranks in every
/// computed degree match.
pub fn classify(
    ctx: &ReportContext<'_>,
    results: &[PointResult],
    shape: &StratifiedShape,
    sweep: &[f64],
) -> Result<RunReport> {
    let sample = ctx.sample;
    let points = results
        .iter()
        .map(|r| {
            let p = &sample.points[r.index];
            let anchor = match &sample.associated {
                Some(a) => a[r.index].clone(),
                None => shape.closest_point(p)?.0,
            };
            let truth = ground_truth(shape, &anchor)?;
            let correct = r.signature.ranks.iter().enumerate().all(|(d, &k)| truth.rank(d) == k);
            Ok(PointRecord {
                nearest_stratum: Some(truth.stratum_id),
                dist_to_0strata: shape.dist_to_zero_strata(p)?,
                correct: Some(correct),
                ..base_record(p, r)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let frac = |sel: &mut dyn Iterator<Item = &PointRecord>| {
        let (mut n, mut ok) = (0usize, 0usize);
        for p in sel {
            n += 1;
            ok += usize::from(p.correct == Some(true));
        }
        (n, if n == 0 { None } else { Some(ok as f64 / n as f64) })
    };
    let overall = frac(&mut points.iter()).1;
    let by_w0 = sweep
        .iter()
        .map(|&w0| {
            let (n, acc) = frac(&mut points.iter().filter(|p| p.dist_to_0strata.is_none_or(|d| d >= w0)));
            SweepEntry { w0, acc, n }
        })
        .collect();
    Ok(RunReport { sample: ctx.info(), scales: ctx.scales.clone(), points, accuracy: Accuracy { overall, by_w0 } })
}

/// Partition of the sample produced by [`group_strata`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataGrouping {
    /// each group sorted, groups ordered by smallest member
    pub groups: Vec<Vec<usize>>,
    /// always true: the grouping carries no guarantee
    pub heuristic: bool,
    pub pairs_tested: usize,
    pub pairs_joined: usize,
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Transitively joins points `p`, `q` closer than `2·eps` whose maps into
/// the level-2 pair at `q` have the same image: the map from `p`'s level-1
/// pair and the map from `q`'s own. The cross map exists only when
/// `B_r(q) ⊆ B_R(p)`; pairs violating that are not joined. The test must
/// pass with either point in the role of `q`, and both points must have
/// the same local homology ranks: image equality alone lets the rank-2
/// zone around a junction merge with the curves through it.
pub fn group_strata(
    sample: &Sample,
    scales: &SelectedScales,
    flavor: Flavor,
    modulus: u32,
    max_degree: usize,
    eps: f64,
) -> Result<StrataGrouping> {
    check_levels(scales.level1(), scales.level2())?;
    Ok(with_field!(modulus, f => group_in(f, sample, scales, flavor, max_degree, eps)))
}

fn group_in<F: Field>(
    field: F,
    sample: &Sample,
    scales: &SelectedScales,
    flavor: Flavor,
    max_degree: usize,
    eps: f64,
) -> StrataGrouping {
    let pts = &sample.points;
    let n = pts.len();
    let dist = |a: usize, b: usize| {
        pts[a].coords().iter().zip(pts[b].coords()).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    };
    let sources: Vec<SourceClasses<F>> = (0..n)
        .into_par_iter()
        .map(|p| {
            let pair = quotient_pair(pts, &pts[p], scales.scale1, scales.radius1, flavor, max_degree + 1);
            SourceClasses::new(field, &pair.chains, max_degree)
        })
        .collect();
    // per q: neighbors tested, neighbors whose cross image matches, own signature
    let joins: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
        .into_par_iter()
        .map(|q| {
            let neighbors: Vec<usize> = (0..n)
                .filter(|&p| p != q)
                .filter(|&p| {
                    let d = dist(p, q);
                    d < 2.0 * eps && d + scales.radius2 <= scales.radius1
                })
                .collect();
            if neighbors.is_empty() {
                return (0, Vec::new(), Vec::new());
            }
            let pair = quotient_pair(pts, &pts[q], scales.scale2, scales.radius2, flavor, max_degree + 1);
            let mut target = TargetSpace::new(field, pair.chains, max_degree);
            let signature = (0..=max_degree).map(|d| target.image_rank(&sources[q], d)).collect();
            let joined = neighbors
                .iter()
                .copied()
                .filter(|&p| (0..=max_degree).all(|d| target.same_image(&sources[p], &sources[q], d)))
                .collect();
            (neighbors.len(), joined, signature)
        })
        .collect();
    let directed: BTreeSet<(usize, usize)> =
        joins.iter().enumerate().flat_map(|(q, (_, joined, _))| joined.iter().map(move |&p| (p, q))).collect();
    let mut sets = DisjointSets((0..n).collect());
    let pairs_tested = joins.iter().map(|(tested, ..)| tested).sum::<usize>() / 2;
    let mut pairs_joined = 0;
    for &(p, q) in directed.iter().filter(|&&(p, q)| p < q) {
        if directed.contains(&(q, p)) && joins[p].2 == joins[q].2 {
            pairs_joined += 1;
            sets.union(p, q);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = sets.find(i);
        by_root.entry(r).or_default().push(i);
    }
    StrataGrouping { groups: by_root.into_values().collect(), heuristic: true, pairs_tested, pairs_joined }
}

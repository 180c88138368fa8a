//! Euclidean points, analytic stratified curve shapes, Hausdorff distance and
//! epsilon-sample generation.
//!
//! Shapes are finite unions of planar curve primitives (circles, arcs and
//! segments) meeting only at primitive endpoints. The stratification is the
//! obvious one: every merged endpoint is a 0-dimensional stratum and every
//! primitive with its endpoints removed is a 1-dimensional stratum. Vertex
//! strata always receive the lowest ids.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for "on the shape" tests and nearest-stratum ties.
pub const ON_SHAPE_TOL: f64 = 1e-12;

const VERTEX_MERGE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("point must have at least one coordinate".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite coordinate in {coords:?}")));
        }
        Ok(Self(coords))
    }

    pub fn xy(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Self(vec![x, y])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn as_xy(&self) -> Result<[f64; 2]> {
        match self.0.as_slice() {
            &[x, y] => Ok([x, y]),
            _ => Err(Error::DimensionMismatch { expected: 2, found: self.dim() }),
        }
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Self::xy(p[0], p[1])
    }
}

pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Euclidean distance.
pub fn distance(a: &Point, b: &Point) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(dist_sq(&a.0, &b.0).sqrt())
}

fn norm2(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// A finite point sample with its nominal density bound `epsilon`.
///
/// `noisy` selects the constant t (t = 1 when noisy). `associated`, when
/// present, holds for every sample point the shape point it was generated
/// from.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub points: Vec<Point>,
    pub epsilon: f64,
    pub noisy: bool,
    pub seed: Option<u64>,
    pub shape: Option<ShapeKind>,
    pub associated: Option<Vec<Point>>,
}

impl Sample {
    pub fn new(points: Vec<Point>, epsilon: f64, noisy: bool) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidArgument("sample must be nonempty".into()));
        };
        let dim = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(Self { points, epsilon, noisy, seed: None, shape: None, associated: None })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// The constant t: 1 for noisy samples, 0 otherwise.
    pub fn t(&self) -> u8 {
        u8::from(self.noisy)
    }
}

/// A planar curve primitive. Arcs run counterclockwise from `start` through
/// `sweep` radians.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Primitive {
    Circle { center: [f64; 2], radius: f64 },
    Arc { center: [f64; 2], radius: f64, start: f64, sweep: f64 },
    Segment { a: [f64; 2], b: [f64; 2] },
}

impl Primitive {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Primitive::Circle { radius, .. } => radius > 0.0,
            Primitive::Arc { radius, sweep, .. } => radius > 0.0 && sweep > 0.0 && sweep < TAU,
            Primitive::Segment { a, b } => a != b,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedShape(format!("degenerate primitive {self:?}")))
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Primitive::Circle { radius, .. } => TAU * radius,
            Primitive::Arc { radius, sweep, .. } => radius * sweep,
            Primitive::Segment { a, b } => norm2(sub2(b, a)),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Primitive::Circle { .. })
    }

    /// Point at arc length `s` from the start of the primitive.
    pub fn point_at(&self, s: f64) -> [f64; 2] {
        match *self {
            Primitive::Circle { center, radius } => {
                let th = s / radius;
                [center[0] + radius * th.cos(), center[1] + radius * th.sin()]
            }
            Primitive::Arc { center, radius, start, .. } => {
                let th = start + s / radius;
                [center[0] + radius * th.cos(), center[1] + radius * th.sin()]
            }
            Primitive::Segment { a, b } => {
                let u = s / self.length();
                [a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])]
            }
        }
    }

    pub fn endpoints(&self) -> Vec<[f64; 2]> {
        match *self {
            Primitive::Circle { .. } => Vec::new(),
            Primitive::Arc { .. } => vec![self.point_at(0.0), self.point_at(self.length())],
            Primitive::Segment { a, b } => vec![a, b],
        }
    }

    /// Closest point of the closed primitive together with the exact distance.
    pub fn closest(&self, x: [f64; 2]) -> ([f64; 2], f64) {
        match *self {
            Primitive::Circle { center, radius } => {
                let v = sub2(x, center);
                let n = norm2(v);
                let y = if n == 0.0 {
                    [center[0] + radius, center[1]]
                } else {
                    [center[0] + radius * v[0] / n, center[1] + radius * v[1] / n]
                };
                (y, (n - radius).abs())
            }
            Primitive::Arc { center, radius, start, sweep } => {
                let v = sub2(x, center);
                let n = norm2(v);
                if n > 0.0 {
                    let offset = (v[1].atan2(v[0]) - start).rem_euclid(TAU);
                    if offset <= sweep {
                        let y = [center[0] + radius * v[0] / n, center[1] + radius * v[1] / n];
                        return (y, (n - radius).abs());
                    }
                }
                let ends = self.endpoints();
                let d0 = norm2(sub2(x, ends[0]));
                let d1 = norm2(sub2(x, ends[1]));
                if d0 <= d1 {
                    (ends[0], d0)
                } else {
                    (ends[1], d1)
                }
            }
            Primitive::Segment { a, b } => {
                let ab = sub2(b, a);
                let u = ((x[0] - a[0]) * ab[0] + (x[1] - a[1]) * ab[1]) / (ab[0] * ab[0] + ab[1] * ab[1]);
                let u = u.clamp(0.0, 1.0);
                let y = [a[0] + u * ab[0], a[1] + u * ab[1]];
                (y, norm2(sub2(x, y)))
            }
        }
    }
}

/// Descriptor of an analytic shape; this is what sample metadata records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ShapeKind {
    /// Circle of the given radius centered at the origin.
    Circle {
        radius: f64,
    },
    /// Unit circle together with its horizontal diameter.
    CircleChord,
    Segment {
        a: [f64; 2],
        b: [f64; 2],
    },
    Union {
        primitives: Vec<Primitive>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum StratumGeometry {
    Vertex {
        point: [f64; 2],
        valence: usize,
    },
    /// The primitive with the given index, endpoints removed.
    Open {
        primitive: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stratum {
    pub id: usize,
    pub height: usize,
    pub geometry: StratumGeometry,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratifiedShape {
    kind: ShapeKind,
    primitives: Vec<Primitive>,
    strata: Vec<Stratum>,
    reach: Option<f64>,
}

impl StratifiedShape {
    pub fn new(kind: ShapeKind) -> Result<Self> {
        let (primitives, reach) = match &kind {
            ShapeKind::Circle { radius } => {
                (vec![Primitive::Circle { center: [0.0, 0.0], radius: *radius }], Some(*radius))
            }
            ShapeKind::CircleChord => (
                vec![
                    Primitive::Arc { center: [0.0, 0.0], radius: 1.0, start: 0.0, sweep: PI },
                    Primitive::Arc { center: [0.0, 0.0], radius: 1.0, start: PI, sweep: PI },
                    Primitive::Segment { a: [-1.0, 0.0], b: [1.0, 0.0] },
                ],
                None,
            ),
            ShapeKind::Segment { a, b } => {
                let seg = Primitive::Segment { a: *a, b: *b };
                // reach of a segment is infinite; its boundary (two points) has reach half the length
                let nu = seg.length() / 2.0;
                (vec![seg], Some(nu))
            }
            ShapeKind::Union { primitives } => (primitives.clone(), None),
        };
        if primitives.is_empty() {
            return Err(Error::UnsupportedShape("shape has no primitives".into()));
        }
        for p in &primitives {
            p.validate()?;
        }

        let mut vertices: Vec<([f64; 2], usize)> = Vec::new();
        for p in &primitives {
            for e in p.endpoints() {
                match vertices.iter_mut().find(|(v, _)| norm2(sub2(*v, e)) <= VERTEX_MERGE_TOL) {
                    Some((_, valence)) => *valence += 1,
                    None => vertices.push((e, 1)),
                }
            }
        }
        let mut strata = Vec::with_capacity(vertices.len() + primitives.len());
        for (point, valence) in vertices {
            let id = strata.len();
            strata.push(Stratum { id, height: 0, geometry: StratumGeometry::Vertex { point, valence } });
        }
        for i in 0..primitives.len() {
            let id = strata.len();
            strata.push(Stratum { id, height: 1, geometry: StratumGeometry::Open { primitive: i } });
        }
        Ok(Self { kind, primitives, strata, reach })
    }

    pub fn circle(radius: f64) -> Result<Self> {
        Self::new(ShapeKind::Circle { radius })
    }

    pub fn circle_chord() -> Self {
        Self::new(ShapeKind::CircleChord).expect("circle-chord is well formed")
    }

    pub fn segment(a: [f64; 2], b: [f64; 2]) -> Result<Self> {
        Self::new(ShapeKind::Segment { a, b })
    }

    pub fn kind(&self) -> &ShapeKind {
        &self.kind
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// Reach bound nu when known analytically.
    pub fn reach(&self) -> Option<f64> {
        self.reach
    }

    pub fn length(&self) -> f64 {
        self.primitives.iter().map(Primitive::length).sum()
    }

    pub fn zero_strata(&self) -> impl Iterator<Item = (usize, [f64; 2])> + '_ {
        self.strata.iter().filter_map(|s| match s.geometry {
            StratumGeometry::Vertex { point, .. } => Some((s.id, point)),
            StratumGeometry::Open { .. } => None,
        })
    }

    /// Distance to the closure of every stratum, indexed by stratum id.
    pub fn stratum_distances(&self, x: &Point) -> Result<Vec<f64>> {
        let x = x.as_xy()?;
        Ok(self
            .strata
            .iter()
            .map(|s| match s.geometry {
                StratumGeometry::Vertex { point, .. } => norm2(sub2(x, point)),
                StratumGeometry::Open { primitive } => self.primitives[primitive].closest(x).1,
            })
            .collect())
    }

    /// Smallest distance to any 0-dimensional stratum (`None` if there is none).
    pub fn dist_to_zero_strata(&self, x: &Point) -> Result<Option<f64>> {
        let x = x.as_xy()?;
        Ok(self.zero_strata().map(|(_, v)| norm2(sub2(x, v))).reduce(f64::min))
    }

    /// Nearest point of the shape and the stratum containing it.
    pub fn closest_point(&self, x: &Point) -> Result<(Point, usize)> {
        let xy = x.as_xy()?;
        let (_, sid) = dist_to_shape(x, self)?;
        let y = match self.strata[sid].geometry {
            StratumGeometry::Vertex { point, .. } => point,
            StratumGeometry::Open { primitive } => self.primitives[primitive].closest(xy).0,
        };
        Ok((Point::from(y), sid))
    }

    /// Noise-free sample of `n` points spaced evenly in arc length.
    pub fn even_sample(&self, n: usize) -> Vec<Point> {
        self.even_points(n).into_iter().map(Point::from).collect()
    }

    /// Points spaced evenly in arc length, `n` in total.
    fn even_points(&self, n: usize) -> Vec<[f64; 2]> {
        match &self.kind {
            ShapeKind::Circle { .. } => {
                let c = &self.primitives[0];
                let len = c.length();
                (0..n).map(|k| c.point_at(len * k as f64 / n as f64)).collect()
            }
            ShapeKind::Segment { .. } => {
                let s = &self.primitives[0];
                let len = s.length();
                if n == 1 {
                    return vec![s.point_at(len / 2.0)];
                }
                (0..n).map(|k| s.point_at(len * k as f64 / (n - 1) as f64)).collect()
            }
            _ => {
                let total = self.length();
                (0..n).map(|k| self.point_at_arclength(total * (k as f64 + 0.5) / n as f64)).collect()
            }
        }
    }

    fn point_at_arclength(&self, mut s: f64) -> [f64; 2] {
        for p in &self.primitives {
            let len = p.length();
            if s <= len {
                return p.point_at(s);
            }
            s -= len;
        }
        let last = self.primitives.last().expect("nonempty");
        last.point_at(last.length())
    }

    /// Discretization nodes with at most `1 / grid` arc length between
    /// consecutive nodes; returns the nodes and the largest half-step.
    fn discretize(&self, grid: usize) -> (Vec<[f64; 2]>, f64) {
        let mut nodes = Vec::new();
        let mut half_step: f64 = 0.0;
        for p in &self.primitives {
            let len = p.length();
            let m = ((len * grid as f64).ceil() as usize).max(1);
            let h = len / m as f64;
            half_step = half_step.max(h / 2.0);
            let upto = if p.is_closed() { m } else { m + 1 };
            nodes.extend((0..upto).map(|j| p.point_at(h * j as f64)));
        }
        (nodes, half_step)
    }
}

/// Exact distance from `x` to the shape and the id of the nearest stratum.
/// Ties (within [`ON_SHAPE_TOL`]) go to the lowest stratum id.
pub fn dist_to_shape(x: &Point, shape: &StratifiedShape) -> Result<(f64, usize)> {
    let d = shape.stratum_distances(x)?;
    let min = d.iter().copied().fold(f64::INFINITY, f64::min);
    let id = d.iter().position(|&v| v <= min + ON_SHAPE_TOL).expect("nonempty strata");
    Ok((min, id))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HausdorffEstimate {
    /// max of the two one-sided terms below
    pub value: f64,
    /// sup over sample points of the distance to the shape (exact)
    pub sample_to_shape: f64,
    /// sup over discretized shape of the distance to the sample
    pub shape_to_sample: f64,
    /// the true distance lies in `[value, value + discretization_bound]`
    pub discretization_bound: f64,
}

/// Hausdorff distance between a sample and a shape. The sup over the shape is
/// taken over a discretization with `grid` nodes per unit length.
pub fn hausdorff(points: &[Point], shape: &StratifiedShape, grid: usize) -> Result<HausdorffEstimate> {
    if grid == 0 {
        return Err(Error::InvalidArgument("grid must be at least 1".into()));
    }
    if points.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    let mut sample_to_shape: f64 = 0.0;
    let mut xy = Vec::with_capacity(points.len());
    for p in points {
        sample_to_shape = sample_to_shape.max(dist_to_shape(p, shape)?.0);
        xy.push(p.as_xy()?);
    }
    let (nodes, bound) = shape.discretize(grid);
    let shape_to_sample = nodes
        .iter()
        .map(|&y| xy.iter().map(|&p| dist_sq(&p, &y)).fold(f64::INFINITY, f64::min).sqrt())
        .fold(0.0, f64::max);
    Ok(HausdorffEstimate {
        value: sample_to_shape.max(shape_to_sample),
        sample_to_shape,
        shape_to_sample,
        discretization_bound: bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Noise {
    None,
    /// Uniform displacement in a closed disc of the given radius.
    UniformDisc {
        radius: f64,
    },
}

/// Discretization density used when verifying generated samples, relative to eps.
fn verification_grid(eps: f64) -> usize {
    (8.0 / eps).ceil() as usize
}

/// Generates `n` points evenly spaced along the shape, optionally perturbed,
/// and verifies that the Hausdorff distance (plus its discretization bound)
/// stays below `eps`.
pub fn generate_sample(shape: &StratifiedShape, eps: f64, n: usize, noise: Noise, seed: u64) -> Result<Sample> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if let Noise::UniformDisc { radius } = noise {
        if !(radius >= 0.0 && radius < eps) {
            return Err(Error::InvalidArgument(format!("noise radius {radius} must lie in [0, eps)")));
        }
    }
    let truth = shape.even_points(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = truth
        .iter()
        .map(|&[x, y]| match noise {
            Noise::None => Point::xy(x, y),
            Noise::UniformDisc { radius } => {
                let rho = radius * rng.random::<f64>().sqrt();
                let th = TAU * rng.random::<f64>();
                Point::xy(x + rho * th.cos(), y + rho * th.sin())
            }
        })
        .collect();
    let noisy = !matches!(noise, Noise::None);
    let est = hausdorff(&points, shape, verification_grid(eps))?;
    if est.value + est.discretization_bound >= eps {
        return Err(Error::VerificationFailed { achieved: est.value, bound: est.discretization_bound, eps });
    }
    let mut sample = Sample::new(points, eps, noisy)?;
    sample.seed = Some(seed);
    sample.shape = Some(shape.kind.clone());
    sample.associated = Some(truth.into_iter().map(Point::from).collect());
    Ok(sample)
}

/// Local homology ranks of the shape at a point: degree -> rank, zeros omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruthLabel {
    pub stratum_id: usize,
    pub local_ranks: BTreeMap<usize, usize>,
}

impl GroundTruthLabel {
    pub fn rank(&self, degree: usize) -> usize {
        self.local_ranks.get(&degree).copied().unwrap_or(0)
    }
}

/// Local homology of a curve complex at a point on it. A point with k incident
/// branches has rank k - 1 in degree 1 and nothing else.
pub fn ground_truth(shape: &StratifiedShape, x: &Point) -> Result<GroundTruthLabel> {
    let (d, sid) = dist_to_shape(x, shape)?;
    if d > ON_SHAPE_TOL {
        return Err(Error::NotOnShape { distance: d });
    }
    let branches = match shape.strata[sid].geometry {
        StratumGeometry::Vertex { valence, .. } => valence,
        StratumGeometry::Open { .. } => 2,
    };
    let mut local_ranks = BTreeMap::new();
    if branches >= 2 {
        local_ranks.insert(1, branches - 1);
    }
    Ok(GroundTruthLabel { stratum_id: sid, local_ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&Point::xy(0.0, 0.0), &Point::xy(3.0, 4.0)).unwrap(), 5.0);
        assert_eq!(distance(&Point::xy(1.0, 1.0), &Point::xy(1.0, 1.0)).unwrap(), 0.0);
        assert!(close(distance(&Point::xy(1.0, 0.0), &Point::xy(0.0, 1.0)).unwrap(), 2f64.sqrt(), 1e-15));
        let p3 = Point::new(vec![0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(distance(&p3, &Point::xy(0.0, 0.0)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn point_rejects_non_finite() {
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![]).is_err());
    }

    #[test]
    fn dist_to_shape_examples() {
        let circle = StratifiedShape::circle(1.0).unwrap();
        assert_eq!(dist_to_shape(&Point::xy(2.0, 0.0), &circle).unwrap(), (1.0, 0));
        assert_eq!(dist_to_shape(&Point::xy(0.0, 0.0), &circle).unwrap().0, 1.0);

        let cc = StratifiedShape::circle_chord();
        let (d, sid) = dist_to_shape(&Point::xy(0.0, 0.3), &cc).unwrap();
        assert!(close(d, 0.3, 1e-15));
        assert!(matches!(cc.strata()[sid].geometry, StratumGeometry::Open { primitive: 2 }));
        // junction ties resolve to the vertex stratum
        assert_eq!(dist_to_shape(&Point::xy(1.0, 0.0), &cc).unwrap().1, 0);
        assert_eq!(dist_to_shape(&Point::xy(-1.0, 0.0), &cc).unwrap().1, 1);
    }

    #[test]
    fn circle_chord_strata_layout() {
        let cc = StratifiedShape::circle_chord();
        let heights: Vec<_> = cc.strata().iter().map(|s| s.height).collect();
        assert_eq!(heights, vec![0, 0, 1, 1, 1]);
        for s in &cc.strata()[..2] {
            assert!(matches!(s.geometry, StratumGeometry::Vertex { valence: 3, .. }));
        }
        assert!(close(cc.length(), TAU + 2.0, 1e-12));
    }

    #[test]
    fn arc_closest_outside_sweep_uses_endpoint() {
        let arc = Primitive::Arc { center: [0.0, 0.0], radius: 1.0, start: 0.0, sweep: PI };
        let (y, d) = arc.closest([0.5, -2.0]);
        assert_eq!(y, arc.endpoints()[0]);
        assert!(close(d, (0.25f64 + 4.0).sqrt(), 1e-12));
    }

    #[test]
    fn hausdorff_examples() {
        let circle = StratifiedShape::circle(1.0).unwrap();
        let four = vec![Point::xy(1.0, 0.0), Point::xy(0.0, 1.0), Point::xy(-1.0, 0.0), Point::xy(0.0, -1.0)];
        let est = hausdorff(&four, &circle, 2000).unwrap();
        let expect = (2.0 - 2f64.sqrt()).sqrt();
        assert!(est.value <= expect + 1e-12 && expect <= est.value + est.discretization_bound);

        let n = 360;
        let even: Vec<Point> =
            (0..n).map(|k| Point::xy((TAU * k as f64 / n as f64).cos(), (TAU * k as f64 / n as f64).sin())).collect();
        let est = hausdorff(&even, &circle, 4000).unwrap();
        let chord = 2.0 * (PI / (2.0 * n as f64)).sin();
        assert!(est.sample_to_shape < 1e-12);
        assert!(est.value <= chord + 1e-12 && chord <= est.value + est.discretization_bound);
        assert!(close(est.value, (PI / 360.0).sin(), 1e-5));

        let two = vec![Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)];
        let est = hausdorff(&two, &circle, 1000).unwrap();
        assert!(est.value <= 2f64.sqrt() + 1e-12 && 2f64.sqrt() <= est.value + est.discretization_bound);

        assert!(hausdorff(&two, &circle, 0).is_err());
    }

    #[test]
    fn generate_sample_examples() {
        let circle = StratifiedShape::circle(1.0).unwrap();
        let s = generate_sample(&circle, 0.05, 150, Noise::None, 0).unwrap();
        assert_eq!(s.len(), 150);
        assert_eq!(s.t(), 0);
        let est = hausdorff(&s.points, &circle, 4000).unwrap();
        assert!(close(est.value, 0.02094, 1e-4));

        let seg = StratifiedShape::segment([0.0, 0.0], [1.0, 0.0]).unwrap();
        let s = generate_sample(&seg, 0.01, 60, Noise::None, 0).unwrap();
        let est = hausdorff(&s.points, &seg, 20000).unwrap();
        assert!(close(est.value, 1.0 / 118.0, 1e-4));

        let cc = StratifiedShape::circle_chord();
        let s = generate_sample(&cc, 0.018, 1500, Noise::UniformDisc { radius: 0.009 }, 7).unwrap();
        assert_eq!(s.t(), 1);
        let est = hausdorff(&s.points, &cc, 2000).unwrap();
        assert!(est.value + est.discretization_bound < 0.018);
        let again = generate_sample(&cc, 0.018, 1500, Noise::UniformDisc { radius: 0.009 }, 7).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn generate_sample_too_sparse_fails() {
        let circle = StratifiedShape::circle(1.0).unwrap();
        let err = generate_sample(&circle, 0.05, 20, Noise::None, 0).unwrap_err();
        assert!(matches!(err, Error::VerificationFailed { .. }));
    }

    #[test]
    fn ground_truth_examples() {
        let cc = StratifiedShape::circle_chord();
        assert_eq!(ground_truth(&cc, &Point::xy(0.0, 1.0)).unwrap().rank(1), 1);
        let junction = ground_truth(&cc, &Point::xy(1.0, 0.0)).unwrap();
        assert_eq!(junction.rank(1), 2);
        assert_eq!(junction.rank(0), 0);
        let seg = StratifiedShape::segment([0.0, 0.0], [1.0, 0.0]).unwrap();
        assert!(ground_truth(&seg, &Point::xy(0.0, 0.0)).unwrap().local_ranks.is_empty());
        assert!(matches!(ground_truth(&seg, &Point::xy(0.5, 0.1)), Err(Error::NotOnShape { .. })));
    }

    proptest! {
        #[test]
        fn triangle_inequality(a in prop::array::uniform3(-10.0..10.0f64),
                               b in prop::array::uniform3(-10.0..10.0f64),
                               c in prop::array::uniform3(-10.0..10.0f64)) {
            let (a, b, c) = (Point::new(a.to_vec()).unwrap(), Point::new(b.to_vec()).unwrap(), Point::new(c.to_vec()).unwrap());
            let ab = distance(&a, &b).unwrap();
            let bc = distance(&b, &c).unwrap();
            let ac = distance(&a, &c).unwrap();
            prop_assert!(ac <= ab + bc + 1e-12);
            prop_assert!((ab - distance(&b, &a).unwrap()).abs() == 0.0);
        }

        #[test]
        fn ground_truth_constant_on_strata(u in 0.01..0.99f64, v in 0.01..0.99f64) {
            let cc = StratifiedShape::circle_chord();
            for prim in 0..3 {
                let p = &cc.primitives()[prim];
                let x = Point::from(p.point_at(u * p.length()));
                let y = Point::from(p.point_at(v * p.length()));
                prop_assert_eq!(ground_truth(&cc, &x).unwrap(), ground_truth(&cc, &y).unwrap());
            }
        }
    }
}

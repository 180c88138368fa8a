//! Vietoris-Rips and Čech complexes, ball deletion, relative chain bases and
//! coned pairs.
//!
//! Scales use the ball-radius convention: at scale `alpha` two points span an
//! edge iff their closed balls of radius `alpha` meet, i.e. `d <= 2 * alpha`.
//! A Čech simplex needs a smallest enclosing ball of radius `<= alpha`.
//! Deleted balls are open: a point at distance exactly `b` survives deletion.

use std::collections::HashSet;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fieldla::{Column, Field, FieldMatrix};
use crate::geometry::{dist_sq, Point};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[u32; 4]>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        let len = vertices.len();
        vertices.dedup();
        if vertices.is_empty() || vertices.len() != len {
            return Err(Error::InvalidArgument("simplex vertices must be nonempty and distinct".into()));
        }
        Ok(Self(SmallVec::from_vec(vertices)))
    }

    fn from_sorted(v: &[u32]) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(SmallVec::from_slice(v))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces with the index of the removed vertex.
    pub fn faces(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            (i, Simplex(f))
        })
    }

    /// The join with a vertex larger than every vertex of `self`.
    pub fn cone(&self, apex: u32) -> Simplex {
        debug_assert!(self.0.last().is_some_and(|&v| v < apex));
        let mut v = self.0.clone();
        v.push(apex);
        Simplex(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Rips,
    Cech,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    vertex_ids: Vec<u32>,
    simplices: Vec<Vec<Simplex>>,
    max_dim: usize,
}

impl SimplicialComplex {
    /// Builds a complex from an explicit simplex list, adding all faces.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>, max_dim: usize) -> Self {
        let mut seen: HashSet<Simplex> = HashSet::new();
        let mut stack: Vec<Simplex> = simplices.into_iter().filter(|s| s.dim() <= max_dim).collect();
        while let Some(s) = stack.pop() {
            if seen.contains(&s) {
                continue;
            }
            stack.extend(s.faces().map(|f| f.1));
            seen.insert(s);
        }
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); max_dim + 1];
        for s in seen {
            by_dim[s.dim()].push(s);
        }
        for d in &mut by_dim {
            d.sort_unstable();
        }
        let vertex_ids = by_dim[0].iter().map(|s| s.0[0]).collect();
        Self { vertex_ids, simplices: by_dim, max_dim }
    }

    pub fn vertex_ids(&self) -> &[u32] {
        &self.vertex_ids
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Simplices of dimension `dim`, lexicographically sorted.
    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_ids.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices(s.dim()).binary_search(s).is_ok()
    }

    /// One simplex per line, `dim k: v0 v1 ... vk`, by dimension then lexicographically.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in self.iter() {
            let vs: Vec<String> = s.0.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "dim {}: {}", s.dim(), vs.join(" "));
        }
        out
    }
}

/// Radius of the smallest ball enclosing the given points (move-to-front
/// recursion over a fixed input order).
pub fn min_enclosing_radius(points: &[&[f64]]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let (center, _) = welzl(points, points.len(), &mut Vec::new());
    points.iter().map(|p| dist_sq(p, &center)).fold(0.0, f64::max).sqrt()
}

fn welzl<'a>(points: &[&'a [f64]], n: usize, boundary: &mut Vec<&'a [f64]>) -> (Vec<f64>, f64) {
    let dim = points[0].len();
    if n == 0 || boundary.len() == dim + 1 {
        if boundary.is_empty() {
            // empty ball: contains nothing
            return (vec![0.0; dim], -1.0);
        }
        let c = circumcenter(boundary, dim);
        let r2 = boundary.iter().map(|p| dist_sq(p, &c)).fold(0.0, f64::max);
        return (c, r2);
    }
    let p = points[n - 1];
    let (c, r2) = welzl(points, n - 1, boundary);
    if dist_sq(p, &c) <= r2 {
        return (c, r2);
    }
    boundary.push(p);
    let ball = welzl(points, n - 1, boundary);
    boundary.pop();
    ball
}

/// Center of the smallest sphere through all boundary points (least squares
/// in the degenerate case).
fn circumcenter(boundary: &[&[f64]], dim: usize) -> Vec<f64> {
    match boundary.len() {
        0 => vec![0.0; dim],
        1 => boundary[0].to_vec(),
        k => {
            let p0 = boundary[0];
            let diffs: Vec<Vec<f64>> =
                boundary[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
            let m = k - 1;
            let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
            let a = DMatrix::from_fn(m, m, |i, j| 2.0 * dot(&diffs[i], &diffs[j]));
            let rhs = DVector::from_fn(m, |i, _| dot(&diffs[i], &diffs[i]));
            let lambda = a
                .clone()
                .lu()
                .solve(&rhs)
                .unwrap_or_else(|| a.svd(true, true).solve(&rhs, 1e-12).unwrap_or_else(|_| DVector::zeros(m)));
            let mut c = p0.to_vec();
            for (l, d) in lambda.iter().zip(&diffs) {
                for (ci, di) in c.iter_mut().zip(d) {
                    *ci += l * di;
                }
            }
            c
        }
    }
}

/// Forward adjacency (neighbors with larger id) restricted to `ids`, which must be sorted.
fn forward_neighbors(points: &[Point], ids: &[u32], alpha: f64) -> Vec<Vec<u32>> {
    let thresh = 4.0 * alpha * alpha;
    ids.iter()
        .enumerate()
        .map(|(i, &u)| {
            ids[i + 1..]
                .iter()
                .copied()
                .filter(|&v| dist_sq(points[u as usize].coords(), points[v as usize].coords()) <= thresh)
                .collect()
        })
        .collect()
}

fn sorted_ids(vertex_subset: &[usize]) -> Vec<u32> {
    let mut ids: Vec<u32> = vertex_subset.iter().map(|&i| i as u32).collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// Builds the complex of the given flavor on `vertex_subset`.
pub fn build_complex(
    flavor: Flavor,
    points: &[Point],
    vertex_subset: &[usize],
    alpha: f64,
    max_dim: usize,
) -> SimplicialComplex {
    let ids = sorted_ids(vertex_subset);
    let fwd = forward_neighbors(points, &ids, alpha);
    let pos = |v: u32| ids.binary_search(&v).expect("vertex in subset");
    let mut simplices: Vec<Vec<Simplex>> = vec![ids.iter().map(|&v| Simplex::from_sorted(&[v])).collect()];
    // candidates[i]: common forward neighbors of simplices[d][i]
    let mut candidates: Vec<Vec<u32>> = fwd.clone();
    for d in 1..=max_dim {
        let prev = &simplices[d - 1];
        let prev_set: HashSet<&Simplex> =
            if flavor == Flavor::Cech && d >= 3 { prev.iter().collect() } else { HashSet::new() };
        let mut next = Vec::new();
        let mut next_cand = Vec::new();
        let mut buf: Vec<u32> = Vec::with_capacity(d + 1);
        for (s, cand) in prev.iter().zip(&candidates) {
            for &v in cand {
                buf.clear();
                buf.extend_from_slice(s.vertices());
                buf.push(v);
                if flavor == Flavor::Cech && d >= 2 {
                    if d >= 3 {
                        let all_faces = (0..buf.len() - 1).all(|i| {
                            let mut f = buf.clone();
                            f.remove(i);
                            prev_set.contains(&Simplex::from_sorted(&f))
                        });
                        if !all_faces {
                            continue;
                        }
                    }
                    let coords: Vec<&[f64]> = buf.iter().map(|&u| points[u as usize].coords()).collect();
                    if min_enclosing_radius(&coords) > alpha {
                        continue;
                    }
                }
                let nv = &fwd[pos(v)];
                let common: Vec<u32> = cand.iter().copied().filter(|w| *w > v && nv.binary_search(w).is_ok()).collect();
                next.push(Simplex::from_sorted(&buf));
                next_cand.push(common);
            }
        }
        // extension order keeps each dimension lexicographically sorted
        debug_assert!(next.windows(2).all(|w| w[0] < w[1]));
        simplices.push(next);
        candidates = next_cand;
    }
    SimplicialComplex { vertex_ids: ids, simplices, max_dim }
}

/// Vietoris-Rips complex: cliques of the graph with edges `d <= 2 * alpha`.
pub fn rips(points: &[Point], vertex_subset: &[usize], alpha: f64, max_dim: usize) -> SimplicialComplex {
    build_complex(Flavor::Rips, points, vertex_subset, alpha, max_dim)
}

/// Čech complex: simplices whose smallest enclosing ball has radius `<= alpha`.
pub fn cech(points: &[Point], vertex_subset: &[usize], alpha: f64, max_dim: usize) -> SimplicialComplex {
    build_complex(Flavor::Cech, points, vertex_subset, alpha, max_dim)
}

/// Indices of points at distance `>= radius` from `center`.
pub fn delete_ball(points: &[Point], center: &Point, radius: f64) -> Vec<usize> {
    let r2 = radius * radius;
    (0..points.len()).filter(|&i| dist_sq(points[i].coords(), center.coords()) >= r2).collect()
}

fn in_open_ball(points: &[Point], center: &Point, radius: f64) -> HashSet<u32> {
    let r2 = radius * radius;
    (0..points.len() as u32).filter(|&i| dist_sq(points[i as usize].coords(), center.coords()) < r2).collect()
}

/// Per-degree simplex bases of a relative chain complex with the boundary
/// induced on the quotient: faces outside the basis are dropped.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ChainBasis {
    basis: Vec<Vec<Simplex>>,
}

impl ChainBasis {
    /// Chains of `x` relative to the subcomplex `a`.
    pub fn relative(x: &SimplicialComplex, a: &SimplicialComplex) -> Self {
        let basis =
            (0..=x.max_dim).map(|d| x.simplices(d).iter().filter(|s| !a.contains(s)).cloned().collect()).collect();
        Self { basis }
    }

    pub fn absolute(x: &SimplicialComplex) -> Self {
        Self { basis: x.simplices.clone() }
    }

    fn from_filter(x: &SimplicialComplex, keep: impl Fn(&Simplex) -> bool) -> Self {
        Self { basis: x.simplices.iter().map(|d| d.iter().filter(|s| keep(s)).cloned().collect()).collect() }
    }

    /// Chains of `x` relative to its full subcomplex on the points outside
    /// the open ball: the simplices with a vertex inside the ball.
    pub fn meeting_ball(x: &SimplicialComplex, points: &[Point], center: &Point, radius: f64) -> Self {
        let inside = in_open_ball(points, center, radius);
        if inside.is_empty() {
            return Self { basis: vec![Vec::new(); x.max_dim + 1] };
        }
        Self::from_filter(x, |s| s.vertices().iter().any(|v| inside.contains(v)))
    }

    pub fn top_dim(&self) -> usize {
        self.basis.len().saturating_sub(1)
    }

    pub fn basis(&self, degree: usize) -> &[Simplex] {
        self.basis.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.basis(s.dim()).binary_search(s).ok()
    }

    /// Columns of the quotient boundary map in degree `degree`, rows indexed
    /// by `basis(degree - 1)`.
    pub fn boundary_columns<F: Field>(&self, field: F, degree: usize) -> Vec<Column<F>> {
        let cols = self.basis(degree);
        if degree == 0 {
            return vec![Vec::new(); cols.len()];
        }
        let rows = self.basis(degree - 1);
        let (plus, minus) = (field.one(), field.neg(field.one()));
        cols.iter()
            .map(|s| {
                let mut col: Column<F> = s
                    .faces()
                    .filter_map(|(i, f)| {
                        let r = rows.binary_search(&f).ok()?;
                        Some((r as u32, if i % 2 == 0 { plus } else { minus }))
                    })
                    .collect();
                col.sort_unstable_by_key(|e| e.0);
                col
            })
            .collect()
    }

    pub fn boundary_matrix(&self, degree: usize, modulus: u32) -> Result<FieldMatrix> {
        let rows = if degree == 0 { 0 } else { self.basis(degree - 1).len() };
        let mut m = FieldMatrix::new(modulus, rows)?;
        for s in self.basis(degree) {
            if degree == 0 {
                m.push_signed_column(Vec::new())?;
                continue;
            }
            let col = s
                .faces()
                .filter_map(|(i, f)| {
                    let r = self.basis(degree - 1).binary_search(&f).ok()?;
                    Some((r as u32, if i % 2 == 0 { 1 } else { -1 }))
                })
                .collect();
            m.push_signed_column(col)?;
        }
        Ok(m)
    }
}

/// The quotient chain complex of the pair (X_a(P), X_a(P - B_b(p))): its basis
/// is the set of simplices of X_a(P) with a vertex in the open ball B_b(p).
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientPairComplex {
    pub center: Point,
    pub scale: f64,
    pub radius: f64,
    pub flavor: Flavor,
    pub max_dim: usize,
    pub chains: ChainBasis,
}

impl QuotientPairComplex {
    pub fn basis(&self, degree: usize) -> &[Simplex] {
        self.chains.basis(degree)
    }
}

/// Builds the quotient pair using only points within `b + 2a` of the center;
/// every simplex meeting the open ball lies there.
pub fn quotient_pair(
    points: &[Point],
    center: &Point,
    a: f64,
    b: f64,
    flavor: Flavor,
    max_dim: usize,
) -> QuotientPairComplex {
    let reach = (b + 2.0 * a) * (1.0 + 1e-9) + 1e-12;
    let r2 = reach * reach;
    let local: Vec<usize> = (0..points.len()).filter(|&i| dist_sq(points[i].coords(), center.coords()) <= r2).collect();
    quotient_on(points, &local, center, a, b, flavor, max_dim)
}

/// Same as [`quotient_pair`] but built from the complex on the whole sample.
pub fn quotient_pair_global(
    points: &[Point],
    center: &Point,
    a: f64,
    b: f64,
    flavor: Flavor,
    max_dim: usize,
) -> QuotientPairComplex {
    let all: Vec<usize> = (0..points.len()).collect();
    quotient_on(points, &all, center, a, b, flavor, max_dim)
}

fn quotient_on(
    points: &[Point],
    subset: &[usize],
    center: &Point,
    a: f64,
    b: f64,
    flavor: Flavor,
    max_dim: usize,
) -> QuotientPairComplex {
    let x = build_complex(flavor, points, subset, a, max_dim);
    let chains = ChainBasis::meeting_ball(&x, points, center, b);
    QuotientPairComplex { center: center.clone(), scale: a, radius: b, flavor, max_dim, chains }
}

/// X together with the cone over its full subcomplex A on the points that
/// survive ball deletion. Reduced homology of `X ∪ ωA` equals H(X, A).
#[derive(Clone, Debug, PartialEq)]
pub struct ConedPair {
    pub base: SimplicialComplex,
    pub deleted: SimplicialComplex,
    pub cone_vertex: u32,
}

impl ConedPair {
    /// Base simplices first, then ω, then the coned simplices, each part by
    /// dimension and lexicographically.
    pub fn simplices(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self.base.iter().cloned().collect();
        out.push(Simplex::from_sorted(&[self.cone_vertex]));
        out.extend(self.coned());
        out
    }

    fn coned(&self) -> impl Iterator<Item = Simplex> + '_ {
        let cap = self.base.max_dim;
        self.deleted.iter().filter(move |s| s.dim() < cap).map(|s| s.cone(self.cone_vertex))
    }
}

pub fn cone_pair(points: &[Point], center: &Point, a: f64, b: f64, flavor: Flavor, max_dim: usize) -> ConedPair {
    let all: Vec<usize> = (0..points.len()).collect();
    let base = build_complex(flavor, points, &all, a, max_dim);
    let deleted = build_complex(flavor, points, &delete_ball(points, center, b), a, max_dim);
    ConedPair { base, deleted, cone_vertex: points.len() as u32 }
}

/// Two nested coned pairs, level-1 simplices first.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoLevelFiltration {
    pub simplices: Vec<Simplex>,
    pub levels: Vec<u8>,
}

impl TwoLevelFiltration {
    pub fn new(
        points: &[Point],
        center: &Point,
        level1: (f64, f64),
        level2: (f64, f64),
        flavor: Flavor,
        max_dim: usize,
    ) -> Result<Self> {
        let ((a1, b1), (a2, b2)) = (level1, level2);
        if a1 > a2 || b2 > b1 {
            return Err(Error::NestingViolation { scale1: a1, scale2: a2, radius1: b1, radius2: b2 });
        }
        let first = cone_pair(points, center, a1, b1, flavor, max_dim);
        let second = cone_pair(points, center, a2, b2, flavor, max_dim);
        let by_dim = |mut v: Vec<Simplex>| {
            v.sort_by(|x, y| x.dim().cmp(&y.dim()).then_with(|| x.cmp(y)));
            v
        };
        let k1 = by_dim(first.simplices());
        let in_k1: HashSet<&Simplex> = k1.iter().collect();
        let rest = by_dim(second.simplices().into_iter().filter(|s| !in_k1.contains(s)).collect());
        let levels = std::iter::repeat_n(1, k1.len()).chain(std::iter::repeat_n(2, rest.len())).collect();
        let mut simplices = k1;
        simplices.extend(rest);
        Ok(Self { simplices, levels })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.simplices.iter().map(Simplex::dim).collect()
    }

    /// Full boundary matrix in filtration order.
    pub fn boundary_matrix(&self, modulus: u32) -> Result<FieldMatrix> {
        let index: std::collections::HashMap<&Simplex, usize> =
            self.simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = FieldMatrix::new(modulus, self.simplices.len())?;
        for s in &self.simplices {
            let col = s.faces().map(|(i, f)| (index[&f] as u32, if i % 2 == 0 { 1 } else { -1 })).collect();
            m.push_signed_column(col)?;
        }
        Ok(m)
    }
}

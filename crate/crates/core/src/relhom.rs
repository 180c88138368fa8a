//! Relative homology of quotient pairs and ranks of the maps induced by
//! inclusions of nested pairs.
//!
//! Two independent routes compute the same image ranks:
//!
//! * the direct route works on localized quotient chain complexes: it finds
//!   representatives of H(pair₁), pushes them through the chain map (a
//!   simplex survives iff it still meets the smaller ball) and counts how
//!   many stay independent modulo the relative boundaries of pair₂;
//! * the coned route builds `X₁ ∪ ωA₁ ⊆ X₂ ∪ ωA₂` over the whole sample and
//!   counts level-1 classes that survive a two-level column reduction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{
    quotient_pair, ChainBasis, Flavor, QuotientPairComplex, Simplex, SimplicialComplex, TwoLevelFiltration,
};
use crate::error::{Error, Result};
use crate::fieldla::{is_prime, persistent_reduce, rank_and_kernel, Column, Field, Reducer};
use crate::geometry::Point;

macro_rules! with_field {
    ($q:expr, $f:ident => $body:expr) => {
        if $q == 2 {
            let $f = $crate::fieldla::Gf2;
            $body
        } else {
            let $f = $crate::fieldla::Fp::new($q)?;
            $body
        }
    };
}
pub(crate) use with_field;

/// Complex scale and deleted-ball radius of one pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub scale: f64,
    pub radius: f64,
}

impl Level {
    pub fn new(scale: f64, radius: f64) -> Self {
        Self { scale, radius }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuerySpec {
    /// sample index of the ball center
    pub center: usize,
    pub level1: Level,
    pub level2: Level,
    pub flavor: Flavor,
    pub modulus: u32,
    pub max_degree: usize,
}

impl QuerySpec {
    pub fn validate(&self, n_points: usize) -> Result<()> {
        check_levels(self.level1, self.level2)?;
        if self.center >= n_points {
            return Err(Error::InvalidArgument(format!("center {} out of range {n_points}", self.center)));
        }
        if !is_prime(self.modulus) {
            return Err(Error::NonPrimeModulus(self.modulus));
        }
        Ok(())
    }
}

pub(crate) fn check_levels(l1: Level, l2: Level) -> Result<()> {
    if !(l1.scale > 0.0 && l2.scale > 0.0 && l1.radius >= 0.0 && l2.radius >= 0.0) {
        return Err(Error::InvalidArgument(format!("scales must be positive and radii nonnegative: {l1:?}, {l2:?}")));
    }
    if l1.scale > l2.scale || l2.radius > l1.radius {
        return Err(Error::NestingViolation {
            scale1: l1.scale,
            scale2: l2.scale,
            radius1: l1.radius,
            radius2: l2.radius,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    Coned,
}

/// Ranks of the induced map H_ℓ(pair₁) → H_ℓ(pair₂), indexed by ℓ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySignature {
    pub ranks: Vec<usize>,
    pub method: Method,
}

impl HomologySignature {
    pub fn rank(&self, degree: usize) -> usize {
        self.ranks.get(degree).copied().unwrap_or(0)
    }
}

fn chain_betti_in<F: Field>(field: F, chains: &ChainBasis, degree: usize) -> usize {
    let n = chains.basis(degree).len();
    let rank_of = |d: usize| {
        let rows = if d == 0 { 0 } else { chains.basis(d - 1).len() };
        let mut red = Reducer::new(field, rows);
        for col in chains.boundary_columns(field, d) {
            red.push(col);
        }
        red.rank()
    };
    let rank_here = if degree == 0 { 0 } else { rank_of(degree) };
    n - rank_here - rank_of(degree + 1)
}

/// dim H_ℓ of a relative chain complex; degrees above the build cap see a
/// zero boundary map.
pub fn chain_betti(chains: &ChainBasis, degree: usize, modulus: u32) -> Result<usize> {
    Ok(with_field!(modulus, f => chain_betti_in(f, chains, degree)))
}

/// dim H_ℓ(X_a(P), X_a(P - B_b(p))) over F_q.
pub fn relative_betti(q: &QuotientPairComplex, degree: usize, modulus: u32) -> Result<usize> {
    if degree + 1 > q.max_dim {
        return Err(Error::InsufficientDimension { built: q.max_dim, degree });
    }
    chain_betti(&q.chains, degree, modulus)
}

/// Representatives of a basis of H_ℓ of a source pair, for ℓ up to a cap.
/// A chain written out by simplex, independent of any basis ordering.
type SimplexChain<F> = Vec<(Simplex, <F as Field>::Elem)>;

pub(crate) struct SourceClasses<F: Field> {
    /// per degree, homology class representatives
    reps: Vec<Vec<SimplexChain<F>>>,
}

impl<F: Field> SourceClasses<F> {
    pub(crate) fn new(field: F, chains: &ChainBasis, max_degree: usize) -> Self {
        let reps = (0..=max_degree)
            .map(|deg| {
                let basis = chains.basis(deg);
                let cycles: Vec<Column<F>> = if deg == 0 {
                    (0..basis.len() as u32).map(|i| vec![(i, field.one())]).collect()
                } else {
                    let rows = chains.basis(deg - 1).len();
                    rank_and_kernel(field, rows, chains.boundary_columns(field, deg)).1
                };
                let mut boundaries = Reducer::new(field, basis.len());
                for col in chains.boundary_columns(field, deg + 1) {
                    boundaries.push(col);
                }
                let mut out = Vec::new();
                for mut z in cycles {
                    boundaries.reduce(&mut z);
                    if z.is_empty() {
                        continue;
                    }
                    out.push(z.iter().map(|&(i, c)| (basis[i as usize].clone(), c)).collect());
                    boundaries.push(z);
                }
                out
            })
            .collect();
        Self { reps }
    }
}

/// Relative boundaries of a target pair, kept in reduced form.
pub(crate) struct TargetSpace<F: Field> {
    chains: ChainBasis,
    boundaries: Vec<Reducer<F>>,
}

impl<F: Field> TargetSpace<F> {
    pub(crate) fn new(field: F, chains: ChainBasis, max_degree: usize) -> Self {
        let boundaries = (0..=max_degree)
            .map(|deg| {
                let mut red = Reducer::new(field, chains.basis(deg).len());
                for col in chains.boundary_columns(field, deg + 1) {
                    red.push(col);
                }
                red
            })
            .collect();
        Self { chains, boundaries }
    }

    /// Image of a source chain: simplices outside this basis map to zero.
    fn map_chain(&self, chain: &[(Simplex, F::Elem)]) -> Column<F> {
        let mut col: Column<F> =
            chain.iter().filter_map(|(s, c)| self.chains.index_of(s).map(|i| (i as u32, *c))).collect();
        col.sort_unstable_by_key(|e| e.0);
        col
    }

    /// Rank of span(mapped chains) modulo boundaries.
    fn rank_mod_boundaries<'a>(
        &mut self,
        degree: usize,
        chains: impl Iterator<Item = &'a [(Simplex, F::Elem)]>,
    ) -> usize
    where
        F::Elem: 'a,
    {
        let mapped: Vec<Column<F>> = chains.map(|c| self.map_chain(c)).collect();
        let red = &mut self.boundaries[degree];
        let mark = red.checkpoint();
        let count = mapped.into_iter().filter(|c| red.push(c.clone())).count();
        red.rollback(mark);
        count
    }

    pub(crate) fn image_rank(&mut self, source: &SourceClasses<F>, degree: usize) -> usize {
        let reps = &source.reps[degree];
        self.rank_mod_boundaries(degree, reps.iter().map(Vec::as_slice))
    }

    /// Whether two sources have the same image subspace in this target.
    pub(crate) fn same_image(&mut self, a: &SourceClasses<F>, b: &SourceClasses<F>, degree: usize) -> bool {
        let ra = self.image_rank(a, degree);
        let rb = self.image_rank(b, degree);
        if ra != rb {
            return false;
        }
        let both = a.reps[degree].iter().chain(&b.reps[degree]).map(Vec::as_slice);
        self.rank_mod_boundaries(degree, both) == ra
    }
}

fn direct_in<F: Field>(
    field: F,
    points: &[Point],
    center: &Point,
    level1: Level,
    level2: Level,
    flavor: Flavor,
    max_degree: usize,
) -> Vec<usize> {
    let q1 = quotient_pair(points, center, level1.scale, level1.radius, flavor, max_degree + 1);
    let q2 = quotient_pair(points, center, level2.scale, level2.radius, flavor, max_degree + 1);
    let source = SourceClasses::new(field, &q1.chains, max_degree);
    let mut target = TargetSpace::new(field, q2.chains, max_degree);
    (0..=max_degree).map(|d| target.image_rank(&source, d)).collect()
}

/// Direct-route image ranks for a ball centered at an arbitrary point.
pub fn image_rank_at(
    points: &[Point],
    center: &Point,
    level1: Level,
    level2: Level,
    flavor: Flavor,
    modulus: u32,
    max_degree: usize,
) -> Result<Vec<usize>> {
    check_levels(level1, level2)?;
    Ok(with_field!(modulus, f => direct_in(f, points, center, level1, level2, flavor, max_degree)))
}

/// Rank of H_ℓ(pair₁) → H_ℓ(pair₂) via localized quotient complexes.
pub fn image_rank(spec: &QuerySpec, points: &[Point]) -> Result<HomologySignature> {
    spec.validate(points.len())?;
    let ranks = image_rank_at(
        points,
        &points[spec.center],
        spec.level1,
        spec.level2,
        spec.flavor,
        spec.modulus,
        spec.max_degree,
    )?;
    Ok(HomologySignature { ranks, method: Method::Direct })
}

/// Same ranks via two-level persistence of the coned pairs over the whole sample.
pub fn image_rank_oracle(spec: &QuerySpec, points: &[Point]) -> Result<HomologySignature> {
    spec.validate(points.len())?;
    let filt = TwoLevelFiltration::new(
        points,
        &points[spec.center],
        (spec.level1.scale, spec.level1.radius),
        (spec.level2.scale, spec.level2.radius),
        spec.flavor,
        spec.max_degree + 1,
    )?;
    let d = filt.boundary_matrix(spec.modulus)?;
    let counts = persistent_reduce(&d, &filt.dims(), &filt.levels)?;
    let ranks = (0..=spec.max_degree)
        .map(|l| {
            let c = counts.get(l).copied().unwrap_or(0);
            // reduced homology: drop the component that always survives
            if l == 0 {
                c - 1
            } else {
                c
            }
        })
        .collect();
    Ok(HomologySignature { ranks, method: Method::Coned })
}

/// Evaluates queries in parallel; output order matches input order.
pub fn image_rank_batch(specs: &[QuerySpec], points: &[Point]) -> Vec<Result<HomologySignature>> {
    specs.par_iter().map(|s| image_rank(s, points)).collect()
}

/// Sanity checks of the long exact sequence of (X, A) over F_q: the
/// alternating sum of dim H(A) - dim H(X) + dim H(X, A) vanishes and the
/// relative Euler characteristic matches the simplex counts.
pub fn exactness_check(x: &SimplicialComplex, a: &SimplicialComplex, modulus: u32) -> Result<bool> {
    if let Some(s) = a.iter().find(|s| !x.contains(s)) {
        return Err(Error::InvalidArgument(format!("subcomplex simplex {:?} not in X", s.vertices())));
    }
    let top = x.max_dim();
    let rel = ChainBasis::relative(x, a);
    let abs_x = ChainBasis::absolute(x);
    let abs_a = ChainBasis::absolute(a);
    let mut les = 0i64;
    let mut euler_h = 0i64;
    let mut euler_c = 0i64;
    for l in 0..=top {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let bx = chain_betti(&abs_x, l, modulus)? as i64;
        let ba = chain_betti(&abs_a, l, modulus)? as i64;
        let bxa = chain_betti(&rel, l, modulus)? as i64;
        les += sign * (ba - bx + bxa);
        euler_h += sign * bxa;
        euler_c += sign * (x.simplices(l).len() as i64 - a.simplices(l).len() as i64);
    }
    Ok(les == 0 && euler_h == euler_c)
}

/// A query on which the two routes disagreed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub points: Vec<Point>,
    pub spec: QuerySpec,
    pub direct: Vec<usize>,
    pub coned: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub instances: usize,
    pub agreed: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Random small instance: up to `max_points` points in the unit square and
/// a random nested pair of levels.
pub fn random_instance(rng: &mut impl rand::Rng, max_points: usize) -> (Vec<Point>, QuerySpec) {
    let n = rng.random_range(3..=max_points.max(3));
    let points = (0..n).map(|_| Point::xy(rng.random(), rng.random())).collect();
    let scale1 = rng.random_range(0.05..0.35);
    let radius2 = rng.random_range(0.0..0.6);
    let spec = QuerySpec {
        center: rng.random_range(0..n),
        level1: Level::new(scale1, radius2 + rng.random_range(0.0..0.5)),
        level2: Level::new(scale1 + rng.random_range(0.0..0.25), radius2),
        flavor: if rng.random() { Flavor::Rips } else { Flavor::Cech },
        modulus: if rng.random() { 2 } else { 3 },
        max_degree: 1,
    };
    (points, spec)
}

/// Runs both routes on `instances` random instances drawn from `seed`.
pub fn cross_validate(instances: usize, max_points: usize, seed: u64) -> Result<CrossValidation> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let drawn: Vec<_> = (0..instances).map(|_| random_instance(&mut rng, max_points)).collect();
    let mut disagreements = Vec::new();
    for (points, spec) in drawn {
        let direct = image_rank(&spec, &points)?.ranks;
        let coned = image_rank_oracle(&spec, &points)?.ranks;
        if direct != coned {
            disagreements.push(Disagreement { points, spec, direct, coned });
        }
    }
    Ok(CrossValidation { instances, agreed: instances - disagreements.len(), disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{build_complex, quotient_pair_global, rips};
    use crate::fieldla::{rank, FieldMatrix};
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn spec(
        center: usize,
        l1: (f64, f64),
        l2: (f64, f64),
        flavor: Flavor,
        modulus: u32,
        max_degree: usize,
    ) -> QuerySpec {
        QuerySpec {
            center,
            level1: Level::new(l1.0, l1.1),
            level2: Level::new(l2.0, l2.1),
            flavor,
            modulus,
            max_degree,
        }
    }

    fn circle(n: usize) -> Vec<Point> {
        (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                Point::xy(t.cos(), t.sin())
            })
            .collect()
    }

    /// Hollow triangle relative to one of its edges.
    fn triangle_boundary_pair() -> (SimplicialComplex, SimplicialComplex) {
        let s = |v: Vec<u32>| Simplex::new(v).unwrap();
        let x = SimplicialComplex::from_simplices([s(vec![0, 1]), s(vec![0, 2]), s(vec![1, 2])], 1);
        let a = SimplicialComplex::from_simplices([s(vec![1, 2])], 1);
        (x, a)
    }

    #[test]
    fn triangle_boundary_quotient() {
        let (x, a) = triangle_boundary_pair();
        let rel = ChainBasis::relative(&x, &a);
        assert_eq!(rel.basis(0).len(), 1);
        assert_eq!(rel.basis(1).len(), 2);
        assert_eq!(chain_betti(&rel, 0, 2).unwrap(), 0);
        assert_eq!(chain_betti(&rel, 1, 2).unwrap(), 1);
        assert!(exactness_check(&x, &a, 2).unwrap());
        let empty = SimplicialComplex::from_simplices([], 1);
        assert!(exactness_check(&x, &empty, 3).unwrap());
    }

    #[test]
    fn triangle_boundary_via_ball_matches_cone() {
        // equilateral triangle, Rips at a scale joining all pairs but capped at
        // dimension 1 so X is the hollow triangle; the ball removes vertex 0
        let p = vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(0.5, 3f64.sqrt() / 2.0)];
        let q = quotient_pair(&p, &p[0], 0.5, 0.5, Flavor::Rips, 1);
        assert_eq!(q.basis(0).len(), 1);
        assert_eq!(q.basis(1).len(), 2);
        assert_eq!(chain_betti(&q.chains, 1, 2).unwrap(), 1);
        assert_eq!(chain_betti(&q.chains, 0, 2).unwrap(), 0);
        // the cone drops its top-dimensional simplices, so only degrees below
        // the cap agree
        let s = spec(0, (0.5, 0.5), (0.5, 0.5), Flavor::Rips, 2, 0);
        assert_eq!(image_rank_oracle(&s, &p).unwrap().ranks, vec![0]);
    }

    #[test]
    fn relative_betti_examples() {
        let line = vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(2.0, 0.0)];
        let q = quotient_pair(&line, &line[0], 0.6, 0.5, Flavor::Rips, 2);
        assert_eq!(relative_betti(&q, 0, 2).unwrap(), 0);
        assert_eq!(relative_betti(&q, 1, 2).unwrap(), 0);
        let q0 = quotient_pair(&line, &line[0], 0.6, 0.0, Flavor::Rips, 2);
        assert_eq!(relative_betti(&q0, 1, 3).unwrap(), 0);
        assert!(matches!(relative_betti(&q, 2, 2), Err(Error::InsufficientDimension { .. })));
    }

    #[test]
    fn relative_betti_on_circle_matches_oracle() {
        let p = circle(12);
        let q = quotient_pair(&p, &p[0], 0.6, 1.0, Flavor::Rips, 2);
        let direct = relative_betti(&q, 1, 2).unwrap();
        let s = spec(0, (0.6, 1.0), (0.6, 1.0), Flavor::Rips, 2, 1);
        assert_eq!(direct, image_rank_oracle(&s, &p).unwrap().ranks[1]);
    }

    #[test]
    fn image_rank_identity_and_trivial_codomain() {
        let p = circle(16);
        let s = spec(3, (0.3, 0.9), (0.3, 0.9), Flavor::Rips, 2, 1);
        let q = quotient_pair(&p, &p[3], 0.3, 0.9, Flavor::Rips, 2);
        let sig = image_rank(&s, &p).unwrap();
        assert_eq!(sig.ranks, vec![relative_betti(&q, 0, 2).unwrap(), relative_betti(&q, 1, 2).unwrap()]);
        assert_eq!(sig.ranks, vec![0, 1]);

        let s = spec(3, (0.3, 0.9), (0.4, 0.0), Flavor::Rips, 3, 1);
        assert_eq!(image_rank(&s, &p).unwrap().ranks, vec![0, 0]);
        assert_eq!(image_rank_oracle(&s, &p).unwrap().ranks, vec![0, 0]);
    }

    #[test]
    fn nesting_violation_rejected() {
        let p = circle(8);
        let s = spec(0, (0.5, 0.5), (0.4, 0.4), Flavor::Rips, 2, 1);
        assert!(matches!(image_rank(&s, &p), Err(Error::NestingViolation { .. })));
        let s = spec(0, (0.3, 0.4), (0.4, 0.5), Flavor::Rips, 2, 1);
        assert!(matches!(image_rank_oracle(&s, &p), Err(Error::NestingViolation { .. })));
    }

    #[test]
    fn absolute_map_two_edges_into_path() {
        // 0-1 and 2-3 are edges at scale 0.5; at scale 0.75 the gap 1-2 closes
        let p = vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(2.5, 0.0), Point::xy(3.5, 0.0)];
        let s = spec(0, (0.5, 100.0), (0.75, 100.0), Flavor::Rips, 2, 1);
        assert_eq!(image_rank_oracle(&s, &p).unwrap().ranks, vec![1, 0]);
        assert_eq!(image_rank(&s, &p).unwrap().ranks, vec![1, 0]);
        // relative to the empty set: unreduced H0 of the two edges
        let s = spec(0, (0.5, 100.0), (0.5, 100.0), Flavor::Rips, 2, 1);
        assert_eq!(image_rank_oracle(&s, &p).unwrap().ranks, vec![2, 0]);
        assert_eq!(image_rank(&s, &p).unwrap().ranks, vec![2, 0]);
    }

    #[test]
    fn relative_with_empty_subcomplex_is_absolute() {
        let p = circle(10);
        let ids: Vec<usize> = (0..10).collect();
        let x = rips(&p, &ids, 0.35, 2);
        let q = quotient_pair_global(&p, &p[0], 0.35, 10.0, Flavor::Rips, 2);
        let abs = ChainBasis::absolute(&x);
        for l in 0..2 {
            assert_eq!(relative_betti(&q, l, 2).unwrap(), chain_betti(&abs, l, 2).unwrap());
        }
        assert_eq!(chain_betti(&abs, 1, 2).unwrap(), 1);
    }

    #[test]
    fn batch_matches_sequential() {
        let p = circle(20);
        let specs: Vec<QuerySpec> = (0..20).map(|c| spec(c, (0.2, 0.8), (0.3, 0.5), Flavor::Rips, 2, 1)).collect();
        let batch: Vec<_> = image_rank_batch(&specs, &p).into_iter().map(Result::unwrap).collect();
        let seq: Vec<_> = specs.iter().map(|s| image_rank(s, &p).unwrap()).collect();
        assert_eq!(batch, seq);
    }

    fn arb_points(max: usize) -> impl Strategy<Value = Vec<Point>> {
        prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 3..max)
            .prop_map(|v| v.into_iter().map(|(x, y)| Point::xy(x, y)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn direct_equals_coned(p in arb_points(9), a1 in 0.05..0.3f64, da in 0.0..0.2f64,
                               b2 in 0.0..0.5f64, db in 0.0..0.4f64, c in 0usize..9,
                               q in prop::sample::select(vec![2u32, 3]), cech_flavor: bool) {
            let flavor = if cech_flavor { Flavor::Cech } else { Flavor::Rips };
            let s = spec(c % p.len(), (a1, b2 + db), (a1 + da, b2), flavor, q, 1);
            prop_assert_eq!(image_rank(&s, &p).unwrap().ranks, image_rank_oracle(&s, &p).unwrap().ranks);
        }

        #[test]
        fn functoriality_bound(p in arb_points(9), a in 0.05..0.2f64, b in 0.2..0.6f64, c in 0usize..9) {
            let c = c % p.len();
            let l = [(a, b), (a * 1.4, b * 0.8), (a * 1.9, b * 0.6)];
            let r = |i: usize, j: usize| image_rank(&spec(c, l[i], l[j], Flavor::Rips, 2, 1), &p).unwrap().ranks;
            let (r12, r23, r13) = (r(0, 1), r(1, 2), r(0, 2));
            for d in 0..2 {
                prop_assert!(r13[d] <= r12[d].min(r23[d]));
            }
        }

        #[test]
        fn exactness_on_random_pairs(p in arb_points(8), a in 0.1..0.5f64, b in 0.0..0.6f64, q in prop::sample::select(vec![2u32, 3, 5])) {
            let ids: Vec<usize> = (0..p.len()).collect();
            let top = p.len() - 1;
            let x = build_complex(Flavor::Rips, &p, &ids, a, top);
            let kept = crate::complexes::delete_ball(&p, &p[0], b);
            let sub = build_complex(Flavor::Rips, &p, &kept, a, top);
            prop_assert!(exactness_check(&x, &sub, q).unwrap());
        }

        #[test]
        fn single_level_persistence_is_betti(p in arb_points(8), a in 0.1..0.5f64, q in prop::sample::select(vec![2u32, 3])) {
            let ids: Vec<usize> = (0..p.len()).collect();
            let x = rips(&p, &ids, a, 2);
            let order: Vec<Simplex> = x.iter().cloned().collect();
            let index: std::collections::HashMap<&Simplex, usize> = order.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut d = FieldMatrix::new(q, order.len()).unwrap();
            for s in &order {
                d.push_signed_column(s.faces().map(|(i, f)| (index[&f] as u32, if i % 2 == 0 { 1 } else { -1 })).collect()).unwrap();
            }
            let dims: Vec<usize> = order.iter().map(Simplex::dim).collect();
            let counts = persistent_reduce(&d, &dims, &vec![1; order.len()]).unwrap();
            let abs = ChainBasis::absolute(&x);
            for l in 0..2 {
                let ker = abs.basis(l).len() - if l == 0 { 0 } else { rank(&abs.boundary_matrix(l, q).unwrap()) };
                let im = rank(&abs.boundary_matrix(l + 1, q).unwrap());
                prop_assert_eq!(counts.get(l).copied().unwrap_or(0), ker - im);
            }
        }
    }
}

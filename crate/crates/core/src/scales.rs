//! Scale arithmetic and the regimes that turn sampling density plus some
//! knowledge of the shape into a pair of nested (scale, radius) levels.

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complexes::Flavor;
use crate::error::{Error, Result};
use crate::relhom::Level;

/// Ambient metric: Euclidean spaces admit the tighter Rips/Čech sandwich.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambient {
    Euclidean,
    General,
}

/// Noise indicator, ambient type and complex type. The complex type fixes
/// the multiplier `c`: 1 for Čech, the sandwich constant for Rips.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleConstants {
    pub noisy: bool,
    pub ambient: Ambient,
    pub flavor: Flavor,
}

impl ScaleConstants {
    pub fn new(noisy: bool, ambient: Ambient, flavor: Flavor) -> Self {
        Self { noisy, ambient, flavor }
    }

    /// Euclidean constants for the given noise and complex type.
    pub fn euclidean(noisy: bool, flavor: Flavor) -> Self {
        Self::new(noisy, Ambient::Euclidean, flavor)
    }

    pub fn t(&self) -> f64 {
        if self.noisy {
            1.0
        } else {
            0.0
        }
    }

    pub fn s(&self) -> f64 {
        match self.ambient {
            Ambient::Euclidean => SQRT_2,
            Ambient::General => 2.0,
        }
    }

    pub fn c(&self) -> f64 {
        match self.flavor {
            Flavor::Cech => 1.0,
            Flavor::Rips => self.s(),
        }
    }

    /// `c·a + (c + t)·b` for an arbitrary multiplier.
    pub fn g_with(&self, c: f64, a: f64, b: f64) -> f64 {
        c * a + (c + self.t()) * b
    }

    pub fn g(&self, a: f64, b: f64) -> f64 {
        self.g_with(self.c(), a, b)
    }

    /// `(1 + c)·a + (1 + c + 2t)·b`
    pub fn f(&self, a: f64, b: f64) -> f64 {
        let c = self.c();
        (1.0 + c) * a + (1.0 + c + 2.0 * self.t()) * b
    }

    /// Dimensionless `(β, γ)`: `β = c² + (t+1)c + t`, `γ = c² + (t+3)c + 5t + 2`.
    pub fn strong_coefficients(&self) -> (f64, f64) {
        let (c, t) = (self.c(), self.t());
        (c * c + (t + 1.0) * c + t, c * c + (t + 3.0) * c + 5.0 * t + 2.0)
    }

    /// Multiplier of ε for the second complex scale, `1 + c + t`.
    pub fn scale2_factor(&self) -> f64 {
        1.0 + self.c() + self.t()
    }
}

/// Upper bound `r̄(β) ≤ M·β^m` together with `M₀`, a lower bound for `R̄`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeemlinessBound {
    pub coefficient: f64,
    pub exponent: f64,
    pub outer: f64,
}

impl SeemlinessBound {
    pub fn new(coefficient: f64, exponent: f64, outer: f64) -> Result<Self> {
        if !(coefficient > 0.0 && exponent > 0.0 && outer > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "bound parameters must be positive: M={coefficient}, m={exponent}, M0={outer}"
            )));
        }
        Ok(Self { coefficient, exponent, outer })
    }
}

/// Reach of a manifold (for manifolds with boundary, the smaller of the
/// reach of the manifold and of its boundary) and an optional distance `w`
/// from the boundary beyond which interior points are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReachBound {
    pub reach: f64,
    pub boundary_margin: Option<f64>,
}

impl ReachBound {
    pub fn new(reach: f64, boundary_margin: Option<f64>) -> Result<Self> {
        if !(reach > 0.0) || boundary_margin.is_some_and(|w| !(w > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "reach and margin must be positive: {reach}, {boundary_margin:?}"
            )));
        }
        Ok(Self { reach, boundary_margin })
    }
}

/// Pick inside each admissible open interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum Choice {
    Midpoint,
    /// Outer and inner radius. For the strong and bounded regimes these are
    /// the pre-shift values `R′`, `r′`; for the manifold regime the final radii.
    Explicit {
        outer: f64,
        inner: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Strong,
    Bounded,
    Manifold,
    ManifoldWithBoundary,
    Manual,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleWarning {
    pub check: String,
    /// the inequality `actual > required` (or `<` for upper bounds) fails by this much
    pub deficit: f64,
    pub actual: f64,
    pub required: f64,
}

impl fmt::Display for ScaleWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: actual {:.6}, required {:.6} (short by {:.6})",
            self.check, self.actual, self.required, self.deficit
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectedScales {
    pub scale1: f64,
    pub scale2: f64,
    /// deleted-ball radius of the first pair (`R`)
    pub radius1: f64,
    /// deleted-ball radius of the second pair (`r`)
    pub radius2: f64,
    pub regime: Regime,
    pub warnings: Vec<ScaleWarning>,
}

impl SelectedScales {
    fn checked(scale1: f64, scale2: f64, radius1: f64, radius2: f64, regime: Regime) -> Result<Self> {
        let all = [scale1, scale2, radius1, radius2];
        if all.iter().any(|v| !v.is_finite() || *v < 0.0) || scale1 <= 0.0 {
            return Err(Error::InvalidArgument(format!("scales must be finite, positive: {all:?}")));
        }
        if scale1 > scale2 || radius2 > radius1 {
            return Err(Error::NestingViolation { scale1, scale2, radius1, radius2 });
        }
        Ok(Self { scale1, scale2, radius1, radius2, regime, warnings: Vec::new() })
    }

    /// User-supplied scales; theory thresholds are checked separately by
    /// [`validate_manual`].
    pub fn manual(scale1: f64, scale2: f64, radius1: f64, radius2: f64) -> Result<Self> {
        Self::checked(scale1, scale2, radius1, radius2, Regime::Manual)
    }

    pub fn level1(&self) -> Level {
        Level::new(self.scale1, self.radius1)
    }

    pub fn level2(&self) -> Level {
        Level::new(self.scale2, self.radius2)
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")))
    }
}

/// Picks a value in the open interval `(lo, hi)`.
fn pick(lo: f64, hi: f64, explicit: Option<f64>, what: &str) -> Result<f64> {
    if lo >= hi {
        return Err(Error::Infeasible {
            reason: format!("{what} interval ({lo:.6}, {hi:.6}) is empty"),
            deficit: lo - hi,
        });
    }
    match explicit {
        None => Ok(0.5 * (lo + hi)),
        Some(v) if v > lo && v < hi => Ok(v),
        Some(v) => Err(Error::InvalidArgument(format!("{what} = {v} outside ({lo:.6}, {hi:.6})"))),
    }
}

fn explicit_parts(choice: Choice) -> (Option<f64>, Option<f64>) {
    match choice {
        Choice::Midpoint => (None, None),
        Choice::Explicit { outer, inner } => (Some(outer), Some(inner)),
    }
}

/// Scales from the strong regime given `r̄(β)` and `R̄(β)` at `β = βcoef·ε`.
pub fn select_strong(
    cc: ScaleConstants,
    eps: f64,
    rbar: f64,
    rbar_outer: f64,
    choice: Choice,
) -> Result<SelectedScales> {
    strong_impl(cc, eps, rbar, rbar_outer, choice, Regime::Strong)
}

fn strong_impl(
    cc: ScaleConstants,
    eps: f64,
    rbar: f64,
    rbar_outer: f64,
    choice: Choice,
    regime: Regime,
) -> Result<SelectedScales> {
    check_eps(eps)?;
    let (bc, gc) = cc.strong_coefficients();
    let (beta, gamma) = (bc * eps, gc * eps);
    // r̄(α) ≥ α for every α, so a smaller value cannot come from a shape
    if rbar < beta {
        return Err(Error::InvalidArgument(format!("r̄(β) = {rbar} is below β = {beta}")));
    }
    let tau = rbar_outer - rbar;
    if tau <= gamma {
        return Err(Error::Infeasible {
            reason: format!("τ = {tau:.6} must exceed γ = {gamma:.6}"),
            deficit: gamma - tau,
        });
    }
    let (outer, inner) = explicit_parts(choice);
    let big = pick(rbar + gamma, rbar_outer, outer, "R′")?;
    let small = pick(rbar, big - gamma, inner, "r′")?;
    SelectedScales::checked(eps, cc.scale2_factor() * eps, big - (1.0 + cc.t()) * eps, small + beta, regime)
}

/// `M·(βcoef·ε)^m + γcoef·ε`; the bounded regime needs this below `M₀`.
fn bounded_lhs(cc: ScaleConstants, bound: SeemlinessBound, eps: f64) -> f64 {
    let (bc, gc) = cc.strong_coefficients();
    bound.coefficient * (bc * eps).powf(bound.exponent) + gc * eps
}

/// Supremum of the ε for which the bounded regime is feasible.
pub fn bounded_eps_threshold(cc: ScaleConstants, bound: SeemlinessBound) -> f64 {
    let (bc, gc) = cc.strong_coefficients();
    if bound.exponent == 1.0 {
        return bound.outer / (bound.coefficient * bc + gc);
    }
    let mut hi = 1.0;
    while bounded_lhs(cc, bound, hi) < bound.outer {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if bounded_lhs(cc, bound, mid) < bound.outer {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Strong regime with `r̄(β) ≤ M·β^m` and `R̄ ≥ M₀`.
pub fn select_bounded(cc: ScaleConstants, eps: f64, bound: SeemlinessBound, choice: Choice) -> Result<SelectedScales> {
    check_eps(eps)?;
    let lhs = bounded_lhs(cc, bound, eps);
    if lhs >= bound.outer {
        return Err(Error::Infeasible {
            reason: format!("M·β^m + γ = {lhs:.6} must stay below M0 = {:.6}", bound.outer),
            deficit: lhs - bound.outer,
        });
    }
    let (bc, _) = cc.strong_coefficients();
    let rbar = bound.coefficient * (bc * eps).powf(bound.exponent);
    strong_impl(cc, eps, rbar, bound.outer, choice, Regime::Bounded)
}

/// `2ν / (2β + γ)`: the manifold regime needs ε strictly below this.
pub fn manifold_eps_bound(cc: ScaleConstants, reach: f64) -> f64 {
    let (bc, gc) = cc.strong_coefficients();
    2.0 * reach / (2.0 * bc + gc)
}

/// Admissible open interval of the outer radius for a manifold of given reach.
pub fn manifold_outer_interval(cc: ScaleConstants, eps: f64, reach: f64) -> (f64, f64) {
    let (bc, gc) = cc.strong_coefficients();
    let t = cc.t();
    ((bc + gc - t - 1.0) * eps, 2.0 * reach - (bc + t + 1.0) * eps)
}

/// Admissible open interval of the inner radius once the outer one is fixed.
pub fn manifold_inner_interval(cc: ScaleConstants, eps: f64, outer: f64) -> (f64, f64) {
    let (bc, gc) = cc.strong_coefficients();
    (2.0 * bc * eps, outer - (gc - bc) * eps)
}

/// Scales for a sample of a smooth submanifold of known reach; with a
/// boundary margin `w` the outer radius is also kept below `w`.
pub fn select_manifold(cc: ScaleConstants, eps: f64, bound: ReachBound, choice: Choice) -> Result<SelectedScales> {
    check_eps(eps)?;
    let limit = manifold_eps_bound(cc, bound.reach);
    if eps >= limit {
        return Err(Error::Infeasible { reason: format!("ε = {eps} must be below {limit:.6}"), deficit: eps - limit });
    }
    let (bc, gc) = cc.strong_coefficients();
    let (lo, mut hi) = manifold_outer_interval(cc, eps, bound.reach);
    let mut regime = Regime::Manifold;
    if let Some(w) = bound.boundary_margin {
        let (wlo, whi) = ((2.0 * bc + gc) * eps, 2.0 * bound.reach);
        if !(w > wlo && w < whi) {
            return Err(Error::Infeasible {
                reason: format!("margin w = {w} outside ({wlo:.6}, {whi:.6})"),
                deficit: (wlo - w).max(w - whi),
            });
        }
        hi = hi.min(w);
        regime = Regime::ManifoldWithBoundary;
    }
    let (outer, inner) = explicit_parts(choice);
    let big = pick(lo, hi, outer, "R")?;
    let (rlo, rhi) = manifold_inner_interval(cc, eps, big);
    let small = pick(rlo, rhi, inner, "r")?;
    SelectedScales::checked(eps, cc.scale2_factor() * eps, big, small, regime)
}

/// Compares scales with the thresholds the selectors guarantee. Never fails
/// on a threshold; only broken nesting is an error.
pub fn validate_manual(cc: ScaleConstants, eps: f64, scales: &SelectedScales) -> Result<Vec<ScaleWarning>> {
    check_eps(eps)?;
    SelectedScales::checked(scales.scale1, scales.scale2, scales.radius1, scales.radius2, scales.regime)?;
    let (bc, _) = cc.strong_coefficients();
    let c = cc.c();
    let t = cc.t();
    let gap = scales.radius1 - scales.radius2;
    // (name, actual, required): each check asks for actual >= required, the
    // last three strictly
    let checks = [
        ("scale1 >= eps", scales.scale1, eps, false),
        ("scale2 >= (1+c+t)eps", scales.scale2, cc.scale2_factor() * eps, false),
        ("R > f_c(0,eps)", scales.radius1, cc.f(0.0, eps), true),
        ("r > 2*beta", scales.radius2, 2.0 * bc * eps, true),
        ("R - r > (2c+3t+1)eps", gap, (2.0 * c + 3.0 * t + 1.0) * eps, true),
    ];
    let tol = 1e-12 * eps;
    Ok(checks
        .into_iter()
        .filter(|&(_, actual, required, strict)| if strict { actual <= required } else { actual < required - tol })
        .map(|(name, actual, required, _)| ScaleWarning {
            check: name.to_string(),
            deficit: required - actual,
            actual,
            required,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn rips(noisy: bool) -> ScaleConstants {
        ScaleConstants::euclidean(noisy, Flavor::Rips)
    }

    fn cech(noisy: bool) -> ScaleConstants {
        ScaleConstants::euclidean(noisy, Flavor::Cech)
    }

    #[test]
    fn g_and_f_substitutions() {
        let eps = 0.3;
        assert!(close(cech(false).g(0.0, eps), eps, 1e-15));
        assert!(close(cech(false).f(0.0, eps), 2.0 * eps, 1e-15));
        assert!(close(rips(true).g(0.0, eps), (SQRT_2 + 1.0) * eps, 1e-15));
        let general = ScaleConstants::new(true, Ambient::General, Flavor::Rips);
        assert!(close(general.f(0.7, 0.2), 3.0 * 0.7 + 5.0 * 0.2, 1e-15));
    }

    #[test]
    fn strong_coefficient_values() {
        assert_eq!(cech(false).strong_coefficients(), (2.0, 6.0));
        let (b, g) = rips(true).strong_coefficients();
        assert!(close(b, 3.0 + 2.0 * SQRT_2, 1e-12));
        assert!(close(g, 9.0 + 4.0 * SQRT_2, 1e-12));
        assert!(close(2.0 * b + g, 15.0 + 8.0 * SQRT_2, 1e-12));
    }

    #[test]
    fn strong_selection_noise_free_rips() {
        let cc = rips(false);
        let eps = 0.05;
        let beta = cc.strong_coefficients().0 * eps;
        assert!(close(beta, 0.17071, 1e-5));
        let s = select_strong(cc, eps, beta, 2.0 - beta, Choice::Midpoint).unwrap();
        assert!(close(s.scale2, 0.12071, 1e-5));
        assert_eq!(s.scale1, eps);
        assert!(s.scale1 <= s.scale2 && s.radius2 <= s.radius1);
        assert!(validate_manual(cc, eps, &s).unwrap().is_empty());
    }

    #[test]
    fn strong_boundary_cases() {
        let cc = cech(false);
        let eps = 0.1;
        // γ = 0.6: τ exactly γ is infeasible
        let err = select_strong(cc, eps, 0.2, 0.8, Choice::Midpoint).unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
        assert!(select_strong(cc, eps, 0.2, 0.80001, Choice::Midpoint).is_ok());
        // fixed r̄, R̄ become feasible as ε shrinks
        for k in 1..6 {
            let eps = 0.1 / (2f64).powi(k);
            assert!(select_strong(cc, eps, 2.0 * eps, 0.5, Choice::Midpoint).is_ok());
        }
        assert!(select_strong(cc, eps, 0.1, 5.0, Choice::Midpoint).is_err());
    }

    #[test]
    fn bounded_reduces_to_strong_for_linear_bound() {
        let cc = rips(true);
        let eps = 0.005;
        let bound = SeemlinessBound::new(3f64.sqrt(), 1.0, 0.6).unwrap();
        let a = select_bounded(cc, eps, bound, Choice::Midpoint).unwrap();
        let beta = cc.strong_coefficients().0 * eps;
        let b = select_strong(cc, eps, 3f64.sqrt() * beta, 0.6, Choice::Midpoint).unwrap();
        assert_eq!((a.scale1, a.scale2, a.radius1, a.radius2), (b.scale1, b.scale2, b.radius1, b.radius2));
        assert_eq!(a.regime, Regime::Bounded);
    }

    #[test]
    fn bounded_threshold_closed_form() {
        let cc = rips(true);
        let (b, g) = cc.strong_coefficients();
        let bound = SeemlinessBound::new(3f64.sqrt(), 1.0, 1.0).unwrap();
        let eps_star = bounded_eps_threshold(cc, bound);
        assert!(close(eps_star, 1.0 / (3f64.sqrt() * b + g), 1e-15));
        assert!(select_bounded(cc, 0.99 * eps_star, bound, Choice::Midpoint).is_ok());
        assert!(select_bounded(cc, 1.01 * eps_star, bound, Choice::Midpoint).is_err());
        // M0 at or below γ·ε is infeasible whatever M is
        let tight = SeemlinessBound::new(1e-9, 1.0, g * 0.01).unwrap();
        assert!(matches!(select_bounded(cc, 0.01, tight, Choice::Midpoint), Err(Error::Infeasible { .. })));
        let quad = SeemlinessBound::new(2.0, 2.0, 1.0).unwrap();
        let e = bounded_eps_threshold(cc, quad);
        assert!(close(bounded_lhs(cc, quad, e), 1.0, 1e-12));
    }

    #[test]
    fn manifold_circle_intervals() {
        let cc = rips(false);
        let eps = 0.05;
        assert!(close(manifold_eps_bound(cc, 1.0), 2.0 / (8.0 + 5.0 * SQRT_2), 1e-15));
        assert!(close(manifold_eps_bound(cc, 1.0), 0.13270, 1e-5));
        let (lo, hi) = manifold_outer_interval(cc, eps, 1.0);
        assert!(close(lo, 0.53284, 1e-5));
        assert!(close(hi, 1.77929, 1e-5));
        let (rlo, rhi) = manifold_inner_interval(cc, eps, 1.0);
        assert!(close(rlo, 0.34142, 1e-5));
        assert!(close(1.0 - rhi, 0.24142, 1e-5));
        let s =
            select_manifold(cc, eps, ReachBound::new(1.0, None).unwrap(), Choice::Explicit { outer: 1.0, inner: 0.5 })
                .unwrap();
        assert_eq!((s.radius1, s.radius2), (1.0, 0.5));
        assert!(validate_manual(cc, eps, &s).unwrap().is_empty());
        let err = select_manifold(cc, 0.14, ReachBound::new(1.0, None).unwrap(), Choice::Midpoint).unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
    }

    #[test]
    fn manifold_noisy_bound() {
        let cc = rips(true);
        assert!(close(manifold_eps_bound(cc, 0.7), 1.4 / (15.0 + 8.0 * SQRT_2), 1e-15));
    }

    #[test]
    fn manifold_with_boundary_margin() {
        let cc = rips(false);
        let eps = 0.01;
        let s = select_manifold(cc, eps, ReachBound::new(0.5, Some(0.3)).unwrap(), Choice::Midpoint).unwrap();
        assert!(s.radius1 < 0.3);
        assert_eq!(s.regime, Regime::ManifoldWithBoundary);
        assert!(validate_manual(cc, eps, &s).unwrap().is_empty());
        // w must exceed (2β+γ)ε
        assert!(select_manifold(cc, eps, ReachBound::new(0.5, Some(0.1)).unwrap(), Choice::Midpoint).is_err());
    }

    #[test]
    fn outer_radius_too_small_leaves_no_inner_radius() {
        let cc = rips(false);
        let eps = 0.05;
        let (lo, _) = manifold_outer_interval(cc, eps, 1.0);
        let outer = lo + 0.01;
        let err = select_manifold(cc, eps, ReachBound::new(1.0, None).unwrap(), Choice::Explicit { outer, inner: 0.4 })
            .unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
    }

    #[test]
    fn manual_figure_values_warn() {
        let cc = rips(true);
        let s = SelectedScales::manual(0.018, 0.06, 0.175, 0.116).unwrap();
        let w = validate_manual(cc, 0.018, &s).unwrap();
        assert!(!w.is_empty());
        assert!(w.iter().all(|w| w.deficit > 0.0));
        assert!(matches!(SelectedScales::manual(0.018, 0.06, 0.1, 0.116), Err(Error::NestingViolation { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn f_is_sum_of_g(a in 0.0..10.0f64, b in 0.0..10.0f64, noisy: bool, general: bool, cech_flavor: bool) {
            let cc = ScaleConstants::new(
                noisy,
                if general { Ambient::General } else { Ambient::Euclidean },
                if cech_flavor { Flavor::Cech } else { Flavor::Rips },
            );
            let lhs = cc.f(a, b);
            let rhs = cc.g(a, b) + cc.g_with(1.0, a, b);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }

        #[test]
        fn table_identities(eps in 1e-6..10.0f64, noisy: bool, cech_flavor: bool) {
            let cc = ScaleConstants::euclidean(noisy, if cech_flavor { Flavor::Cech } else { Flavor::Rips });
            let (c, t) = (cc.c(), cc.t());
            let tol = 1e-12 * (1.0 + eps);
            let g0 = cc.g(0.0, eps);
            prop_assert!((g0 - (c + t) * eps).abs() <= tol);
            prop_assert!((cc.g(g0, eps) - (c * c + (t + 1.0) * c + t) * eps).abs() <= 10.0 * tol);
            prop_assert!((cc.f(0.0, eps) - (c + 2.0 * t + 1.0) * eps).abs() <= tol);
            prop_assert!((cc.f(g0, eps) - (c * c + (t + 2.0) * c + 3.0 * t + 1.0) * eps).abs() <= 10.0 * tol);
            let (b, g) = cc.strong_coefficients();
            prop_assert!((cc.f(0.0, eps) + cc.f(g0, eps) - g * eps).abs() <= 10.0 * tol);
            prop_assert!((cc.g(g0, eps) - b * eps).abs() <= 10.0 * tol);
        }

        #[test]
        fn selectors_yield_nested_warning_free_scales(eps in 1e-3..0.05f64, noisy: bool, cech_flavor: bool,
                                                      reach in 0.5..3.0f64, slack in 0.0..5.0f64) {
            let cc = ScaleConstants::euclidean(noisy, if cech_flavor { Flavor::Cech } else { Flavor::Rips });
            if let Ok(s) = select_manifold(cc, eps, ReachBound::new(reach, None).unwrap(), Choice::Midpoint) {
                prop_assert!(s.scale1 <= s.scale2 && s.radius2 <= s.radius1);
                prop_assert!(validate_manual(cc, eps, &s).unwrap().is_empty());
            }
            let (b, g) = cc.strong_coefficients();
            let rbar = b * eps * (1.0 + slack);
            if let Ok(s) = select_strong(cc, eps, rbar, rbar + g * eps * (1.0 + slack), Choice::Midpoint) {
                prop_assert!(s.scale1 <= s.scale2 && s.radius2 <= s.radius1);
                prop_assert!(validate_manual(cc, eps, &s).unwrap().is_empty());
            }
        }
    }
}

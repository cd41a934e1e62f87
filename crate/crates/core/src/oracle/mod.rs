//! Brute-force verification that does not trust the closed forms.
//!
//! Grid checks evaluate the copula itself (volumes, margins, Fréchet bounds) or its
//! density over a uniform grid. Quadrature integrates the literal product form of the
//! CDF and its hand-differentiated partials, so agreement with
//! [`crate::copula::rho_closed_form`] and [`crate::copula::tau_closed_form`] is an
//! independent check of those formulas.

mod falsify;
pub mod quadrature;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::copula::{cdf, cdf_product_form, CopulaParams, UnitPoint};
use crate::error::{Error, Result};
use quadrature::GaussLegendre;

pub use falsify::{
    falsify_published_ranges, falsify_with, EmptyRangeCase, FalsificationReport, RhoExcessCase,
};

/// Grid resolution for routine checks.
pub const DEFAULT_GRID: usize = 500;
/// Grid resolution for certification runs.
pub const CERTIFICATION_GRID: usize = 1000;
/// Gauss–Legendre nodes per axis.
pub const DEFAULT_NODES: usize = 16;
/// Sign checks pass when the worst value is at least `-SIGN_TOLERANCE`.
pub const SIGN_TOLERANCE: f64 = 1e-12;
/// Margin checks pass when the worst deviation is at most this.
pub const BOUNDARY_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// C-volume of every grid cell (2-increasing).
    Volume,
    /// Sign of the density on the grid plus analytic candidates.
    DensitySign,
    /// Grounded and uniform margins.
    Boundary,
    /// `max(u + v - 1, 0) <= C <= min(u, v)`.
    Frechet,
}

impl CheckKind {
    pub fn tolerance(self) -> f64 {
        match self {
            CheckKind::Boundary => BOUNDARY_TOLERANCE,
            _ => SIGN_TOLERANCE,
        }
    }

    /// Boundary reports a deviation (smaller is better); the others a signed margin.
    pub fn is_deviation(self) -> bool {
        matches!(self, CheckKind::Boundary)
    }

    fn passes(self, worst: f64) -> bool {
        if self.is_deviation() {
            worst <= self.tolerance()
        } else {
            worst >= -self.tolerance()
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Volume => "volume",
            CheckKind::DensitySign => "density_sign",
            CheckKind::Boundary => "boundary",
            CheckKind::Frechet => "frechet",
        })
    }
}

/// Outcome of one grid check. The tolerance is [`CheckKind::tolerance`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub passed: bool,
    pub worst_value: f64,
    pub worst_u: f64,
    pub worst_v: f64,
    pub grid_n: usize,
    pub check_kind: CheckKind,
}

impl GridReport {
    pub fn tolerance(&self) -> f64 {
        self.check_kind.tolerance()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// `|Q(2n) - Q(n)|`.
    pub abs_error_estimate: f64,
    pub nodes_per_axis: usize,
}

fn check_grid(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain {
            name: "grid n",
            value: n as f64,
            domain: "n >= 2",
        });
    }
    Ok(())
}

fn uniform_axis(n: usize) -> Vec<f64> {
    (0..=n).map(|i| i as f64 / n as f64).collect()
}

#[inline]
fn point(u: f64, v: f64) -> UnitPoint {
    UnitPoint { u, v }
}

/// Tracks the smallest (or largest) value seen; the first occurrence wins ties.
struct Worst {
    value: f64,
    u: f64,
    v: f64,
    maximize: bool,
}

impl Worst {
    fn new(maximize: bool) -> Self {
        Self {
            value: if maximize {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            },
            u: 0.0,
            v: 0.0,
            maximize,
        }
    }

    #[inline]
    fn offer(&mut self, value: f64, u: f64, v: f64) {
        let better = if self.maximize {
            value > self.value
        } else {
            value < self.value
        };
        if better {
            self.value = value;
            self.u = u;
            self.v = v;
        }
    }

    fn into_report(self, kind: CheckKind, grid_n: usize) -> GridReport {
        GridReport {
            passed: kind.passes(self.value),
            worst_value: self.value,
            worst_u: self.u,
            worst_v: self.v,
            grid_n,
            check_kind: kind,
        }
    }
}

/// C-volume of every cell of the uniform `(n+1) × (n+1)` grid.
///
/// The worst location is the lower-left corner of the worst cell.
pub fn volume_check(params: &CopulaParams, n: usize) -> Result<GridReport> {
    check_grid(n)?;
    let axis = uniform_axis(n);
    let mut prev_row: Vec<f64> = axis
        .iter()
        .map(|&v| cdf(point(axis[0], v), params))
        .collect();
    let mut row = vec![0.0; axis.len()];
    let mut worst = Worst::new(false);
    for i in 1..axis.len() {
        for (j, &v) in axis.iter().enumerate() {
            row[j] = cdf(point(axis[i], v), params);
        }
        for j in 1..axis.len() {
            let vol = row[j] - prev_row[j] - row[j - 1] + prev_row[j - 1];
            worst.offer(vol, axis[i - 1], axis[j - 1]);
        }
        std::mem::swap(&mut prev_row, &mut row);
    }
    Ok(worst.into_report(CheckKind::Volume, n))
}

/// Axis points for the density scan: the uniform grid plus `0`, `1` and the
/// stationary point `(1 + b)/(3b)` of `Φ'` clipped to `[0, 1]`.
pub fn density_axis(b: f64, n: usize) -> Vec<f64> {
    let mut axis = uniform_axis(n);
    if b > 0.0 {
        axis.push(((1.0 + b) / (3.0 * b)).clamp(0.0, 1.0));
    }
    axis.sort_by(f64::total_cmp);
    axis.dedup();
    axis
}

/// Minimum of `1 + a Φ'(u) Φ'(v)` over [`density_axis`] squared.
///
/// `Φ'` is recomputed here from the factored `Φ(u) = u(1 - u)(1 - bu)` by the
/// product rule rather than taken from the expanded cubic.
pub fn density_min_scan(params: &CopulaParams, n: usize) -> Result<GridReport> {
    check_grid(n)?;
    let (a, b) = (params.a(), params.b());
    let dphi = |u: f64| (1.0 - u) * (1.0 - b * u) - u * (1.0 - b * u) - b * u * (1.0 - u);
    let axis = density_axis(b, n);
    let slopes: Vec<f64> = axis.iter().map(|&u| dphi(u)).collect();
    let mut worst = Worst::new(false);
    for (&u, &su) in axis.iter().zip(&slopes) {
        for (&v, &sv) in axis.iter().zip(&slopes) {
            worst.offer(1.0 + a * (su * sv), u, v);
        }
    }
    Ok(worst.into_report(CheckKind::DensitySign, n))
}

/// Largest deviation of `C(u,0)`, `C(0,v)`, `C(u,1) - u`, `C(1,v) - v` from zero.
pub fn boundary_check(params: &CopulaParams, n: usize) -> Result<GridReport> {
    check_grid(n)?;
    let mut worst = Worst::new(true);
    worst.value = 0.0;
    for t in uniform_axis(n) {
        worst.offer(cdf(point(t, 0.0), params).abs(), t, 0.0);
        worst.offer(cdf(point(0.0, t), params).abs(), 0.0, t);
        worst.offer((cdf(point(t, 1.0), params) - t).abs(), t, 1.0);
        worst.offer((cdf(point(1.0, t), params) - t).abs(), 1.0, t);
    }
    Ok(worst.into_report(CheckKind::Boundary, n))
}

/// Smallest slack `min(C - W, M - C)` against the Fréchet–Hoeffding bounds.
pub fn frechet_check(params: &CopulaParams, n: usize) -> Result<GridReport> {
    check_grid(n)?;
    let axis = uniform_axis(n);
    let mut worst = Worst::new(false);
    for &u in &axis {
        for &v in &axis {
            let c = cdf(point(u, v), params);
            let lower = (u + v - 1.0).max(0.0);
            let upper = u.min(v);
            worst.offer((c - lower).min(upper - c), u, v);
        }
    }
    Ok(worst.into_report(CheckKind::Frechet, n))
}

fn check_nodes(nodes: usize) -> Result<()> {
    if nodes < 8 {
        return Err(Error::Domain {
            name: "quadrature nodes",
            value: nodes as f64,
            domain: "nodes >= 8",
        });
    }
    Ok(())
}

fn with_doubling<F: Fn(&GaussLegendre) -> f64>(nodes: usize, f: F) -> QuadratureResult {
    let coarse = f(&GaussLegendre::new(nodes));
    let fine = f(&GaussLegendre::new(2 * nodes));
    QuadratureResult {
        value: coarse,
        abs_error_estimate: (fine - coarse).abs(),
        nodes_per_axis: nodes,
    }
}

/// `rho = 12 ∬ C du dv - 3` with the product-form CDF.
pub fn rho_numeric(params: &CopulaParams, nodes: usize) -> Result<QuadratureResult> {
    check_nodes(nodes)?;
    Ok(with_doubling(nodes, |rule| {
        12.0 * rule.integrate_2d(|u, v| cdf_product_form(point(u, v), params)) - 3.0
    }))
}

/// `∂C/∂u` of `uv [1 + a h(u) h(v)]` with `h(t) = (1 - t)(1 - bt)`.
fn partial_u_product_form(u: f64, v: f64, params: &CopulaParams) -> f64 {
    let (a, b) = (params.a(), params.b());
    let h = |t: f64| (1.0 - t) * (1.0 - b * t);
    let dh = |t: f64| -(1.0 - b * t) - b * (1.0 - t);
    v * (1.0 + a * h(u) * h(v)) + u * v * a * dh(u) * h(v)
}

/// `tau = 1 - 4 ∬ (∂C/∂u)(∂C/∂v) du dv` with the product-form partials.
pub fn tau_numeric(params: &CopulaParams, nodes: usize) -> Result<QuadratureResult> {
    check_nodes(nodes)?;
    Ok(with_doubling(nodes, |rule| {
        1.0 - 4.0
            * rule.integrate_2d(|u, v| {
                partial_u_product_form(u, v, params) * partial_u_product_form(v, u, params)
            })
    }))
}

/// Kendall's tau-b by counting every pair, `O(n²)`.
pub fn kendall_tau_pairwise(xs: &[f64], ys: &[f64]) -> Result<f64> {
    assert_eq!(xs.len(), ys.len(), "coordinate slices differ in length");
    let n = xs.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let (mut score, mut ties_x, mut ties_y) = (0i64, 0i64, 0i64);
    for i in 0..n {
        for j in (i + 1)..n {
            let sx = sign(xs[i], xs[j]);
            let sy = sign(ys[i], ys[j]);
            score += sx * sy;
            ties_x += (sx == 0) as i64;
            ties_y += (sy == 0) as i64;
        }
    }
    let total = (n as i64) * (n as i64 - 1) / 2;
    crate::sampler::tau_b_from_counts(score, total, ties_x, ties_y)
}

#[inline]
fn sign(a: f64, b: f64) -> i64 {
    match a.total_cmp(&b) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::{rho_closed_form, tau_closed_form};
    use crate::validity::{corrected_range, extrema_closed_form, is_admissible};
    use rand::{Rng, SeedableRng};

    fn params(a: f64, b: f64) -> CopulaParams {
        CopulaParams::new(a, b).unwrap()
    }

    #[test]
    fn rejects_small_grids_and_rules() {
        let p = params(0.0, 0.0);
        assert!(volume_check(&p, 1).is_err());
        assert!(density_min_scan(&p, 0).is_err());
        assert!(boundary_check(&p, 1).is_err());
        assert!(rho_numeric(&p, 7).is_err());
        assert!(tau_numeric(&p, 4).is_err());
    }

    #[test]
    fn volume_independence_cells_are_equal() {
        let n = 100;
        let r = volume_check(&params(0.0, 1.0), n).unwrap();
        assert!(r.passed);
        assert!((r.worst_value - 1.0 / (n * n) as f64).abs() < 1e-15);
        assert_eq!(r.check_kind, CheckKind::Volume);
    }

    #[test]
    fn volume_boundary_admissible_passes() {
        let r = volume_check(&params(2.0, 0.5), 500).unwrap();
        assert!(r.passed && r.worst_value >= -1e-12, "{r:?}");
    }

    #[test]
    fn volume_beyond_bound_fails() {
        let r = volume_check(&params(3.5, 1.0), 500).unwrap();
        assert!(!r.passed && r.worst_value < 0.0, "{r:?}");
    }

    #[test]
    fn worst_location_is_on_grid() {
        let n = 40;
        let r = volume_check(&params(3.5, 1.0), n).unwrap();
        for c in [r.worst_u, r.worst_v] {
            let k = c * n as f64;
            assert!((k - k.round()).abs() < 1e-9);
        }
        let r = density_min_scan(&params(2.0, 1.3), n).unwrap();
        let axis = density_axis(1.3, n);
        assert!(axis.contains(&r.worst_u) && axis.contains(&r.worst_v));
    }

    #[test]
    fn density_scan_examples() {
        for b in [0.0, 0.2, 0.5, 0.9, 1.0, 1.5, 2.0] {
            let upper = corrected_range(b).unwrap().upper;
            let r = density_min_scan(&params(upper, b), 200).unwrap();
            assert!(r.worst_value.abs() <= 1e-9, "b={b} {r:?}");
        }
        let r = density_min_scan(&params(-1.0, 0.0), 100).unwrap();
        assert!(r.worst_value.abs() <= 1e-12);
        // Φ'(0)² = Φ'(1)² = 1 at b = 0
        assert!((r.worst_u, r.worst_v) == (0.0, 0.0) || (r.worst_u, r.worst_v) == (1.0, 1.0));
        let r = density_min_scan(&params(0.0, 1.3), 50).unwrap();
        assert_eq!(r.worst_value, 1.0);
    }

    #[test]
    fn density_scan_injects_stationary_point() {
        // n = 3 misses 2/3, the argmin of Φ' at b = 1
        let axis = density_axis(1.0, 3);
        assert!(axis.iter().any(|&u| (u - 2.0 / 3.0).abs() < 1e-15));
        let r = density_min_scan(&params(3.0, 1.0), 7).unwrap();
        assert!(r.worst_value.abs() < 1e-12);
    }

    #[test]
    fn density_scan_monotone_under_refinement() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let b = rng.random_range(0.0..=2.0);
            let a = rng.random_range(-2.0..5.0);
            let p = params(a, b);
            let mut prev = f64::INFINITY;
            for n in [10, 20, 40, 80, 160] {
                let w = density_min_scan(&p, n).unwrap().worst_value;
                assert!(w <= prev, "a={a} b={b} n={n}");
                prev = w;
            }
        }
    }

    #[test]
    fn boundary_examples() {
        let r = boundary_check(&params(2.0, 0.5), 200).unwrap();
        assert!(r.passed);
        // margins hold for inadmissible a as well
        let r = boundary_check(&params(5.0, 0.2), 200).unwrap();
        assert!(r.passed, "{r:?}");
        let r = boundary_check(&params(0.0, 1.0), 200).unwrap();
        assert_eq!(r.worst_value, 0.0);
    }

    #[test]
    fn frechet_passes_for_admissible_and_fails_far_outside() {
        for b in [0.0, 0.7, 2.0] {
            let r = corrected_range(b).unwrap();
            for a in [r.lower, r.upper] {
                assert!(frechet_check(&params(a, b), 100).unwrap().passed);
            }
        }
        assert!(!frechet_check(&params(-40.0, 0.0), 100).unwrap().passed);
    }

    #[test]
    fn quadrature_examples() {
        let q = rho_numeric(&params(2.0, 0.5), DEFAULT_NODES).unwrap();
        assert!((q.value - 0.375).abs() < 1e-10);
        assert!(q.abs_error_estimate >= 0.0 && q.abs_error_estimate < 1e-12);
        assert_eq!(q.nodes_per_axis, DEFAULT_NODES);
        let q = rho_numeric(&params(-1.0, 0.0), DEFAULT_NODES).unwrap();
        assert!((q.value + 1.0 / 3.0).abs() < 1e-10);
        let q = rho_numeric(&params(10.0, 0.9), DEFAULT_NODES).unwrap();
        assert!((q.value - 10.0 * 1.21 / 12.0).abs() < 1e-10);

        let q = tau_numeric(&params(2.0, 0.5), DEFAULT_NODES).unwrap();
        assert!((q.value - 0.25).abs() < 1e-10);
        let q = tau_numeric(&params(-1.0, 0.0), DEFAULT_NODES).unwrap();
        assert!((q.value + 2.0 / 9.0).abs() < 1e-10);
        let q = tau_numeric(&params(0.0, 1.4), DEFAULT_NODES).unwrap();
        assert!(q.value.abs() < 1e-12);
    }

    #[test]
    fn quadrature_agrees_with_closed_forms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let b = rng.random_range(0.0..=2.0);
            let r = corrected_range(b).unwrap();
            let p = params(rng.random_range(r.lower..=r.upper), b);
            let rho = rho_numeric(&p, DEFAULT_NODES).unwrap().value;
            let tau = tau_numeric(&p, DEFAULT_NODES).unwrap().value;
            assert!((rho - rho_closed_form(&p)).abs() < 1e-9);
            assert!((tau - tau_closed_form(&p)).abs() < 1e-9);
        }
    }

    #[test]
    fn boundary_sharpness() {
        for i in 0..=20 {
            let b = i as f64 / 10.0;
            let upper = corrected_range(b).unwrap().upper;
            let at = density_min_scan(&params(upper, b), DEFAULT_GRID).unwrap();
            assert!((-1e-9..=1e-6).contains(&at.worst_value), "b={b} {at:?}");
            let beyond = density_min_scan(&params(1.05 * upper, b), DEFAULT_GRID).unwrap();
            assert!(!beyond.passed, "b={b}");
        }
    }

    #[test]
    fn negative_density_implies_negative_volume() {
        for b in [0.0, 0.5, 1.0, 1.7, 2.0] {
            let upper = corrected_range(b).unwrap().upper;
            let p = params(1.05 * upper, b);
            let d = density_min_scan(&p, DEFAULT_GRID).unwrap();
            assert!(d.worst_value < -1e-6);
            assert!(!volume_check(&p, DEFAULT_GRID).unwrap().passed, "b={b}");
        }
    }

    #[test]
    fn density_scan_matches_admissibility_away_from_edges() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let b = rng.random_range(0.0..=2.0);
            let a = rng.random_range(-2.0..4.0);
            let r = corrected_range(b).unwrap();
            if (a - r.lower).abs() < 1e-6 || (a - r.upper).abs() < 1e-6 {
                continue;
            }
            let p = params(a, b);
            let scan = density_min_scan(&p, 100).unwrap();
            assert_eq!(scan.passed, is_admissible(&p), "a={a} b={b}");
            let ex = extrema_closed_form(b).unwrap();
            let corner_min = [ex.alpha * ex.alpha, ex.alpha, 1.0]
                .iter()
                .map(|xy| 1.0 + a * xy)
                .fold(f64::INFINITY, f64::min);
            assert!((scan.worst_value - corner_min).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_report_json_field_names() {
        let r = density_min_scan(&params(1.0, 1.0), 10).unwrap();
        let json = serde_json::to_value(r).unwrap();
        let mut keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "check_kind",
                "grid_n",
                "passed",
                "worst_u",
                "worst_v",
                "worst_value"
            ]
        );
        assert_eq!(json["check_kind"], "density_sign");
    }

    #[test]
    fn pairwise_tau_small_cases() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(kendall_tau_pairwise(&x, &x).unwrap(), 1.0);
        assert_eq!(
            kendall_tau_pairwise(&x, &[4.0, 3.0, 2.0, 1.0]).unwrap(),
            -1.0
        );
        // one discordant pair out of six
        let t = kendall_tau_pairwise(&x, &[1.0, 2.0, 4.0, 3.0]).unwrap();
        assert!((t - 4.0 / 6.0).abs() < 1e-15);
        assert!(kendall_tau_pairwise(&[1.0], &[1.0]).is_err());
    }
}

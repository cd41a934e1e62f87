//! Admissible range of the dependence parameter `a`.
//!
//! A cubic-section copula `uv + a Φ(u) Φ(v)` has density `1 + a Φ'(u) Φ'(v)`, which
//! is non-negative on the unit square exactly when
//!
//! ```text
//! -1 / max(α², β²)  <=  a  <=  -1 / (α β),     α = inf Φ' < 0 < β = sup Φ'.
//! ```
//!
//! For `Φ(u) = u(1 - u)(1 - bu)` this gives `β = 1` and `α = b - 1` for `b < 1/2`,
//! `α = (b - b² - 1)/(3b)` otherwise. The two ranges published before the correction
//! are available through [`published_range`] so they can be falsified.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::copula::{CopulaParams, PhiCubic};
use crate::error::{check_shape, Error, Result};

/// Value of `b` at which the location of `inf Φ'` leaves the right endpoint.
pub const BRANCH_POINT: f64 = 0.5;

/// Infimum and supremum of `Φ'` over `[0, 1]` with their arguments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremaReport {
    pub alpha: f64,
    pub beta: f64,
    pub arg_alpha: f64,
    pub arg_beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeKind {
    /// Piecewise closed form, valid for every `b` in `[0, 2]`.
    Corrected,
    /// Generic bound computed from the extrema of `Φ'`.
    CubicSection,
    /// `-1 <= a <= min{1/(1 - b), 2}` (wrong).
    PublishedMinForm,
    /// `-1 <= a <= 1/(1 - b)` (wrong).
    PublishedOnlineForm,
}

impl RangeKind {
    pub fn is_valid(self) -> bool {
        matches!(self, RangeKind::Corrected | RangeKind::CubicSection)
    }
}

impl fmt::Display for RangeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RangeKind::Corrected => "corrected",
            RangeKind::CubicSection => "cubic-section",
            RangeKind::PublishedMinForm => "published-min-form",
            RangeKind::PublishedOnlineForm => "published-online-form",
        })
    }
}

/// Variants of the previously published (incorrect) range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PublishedVariant {
    MinForm,
    OnlineForm,
}

/// Closed interval `[lower, upper]` for `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleRange {
    pub lower: f64,
    pub upper: f64,
    pub kind: RangeKind,
    pub empty: bool,
}

impl AdmissibleRange {
    fn new(lower: f64, upper: f64, kind: RangeKind) -> Self {
        Self {
            lower,
            upper,
            kind,
            empty: lower > upper,
        }
    }

    /// Both endpoints are included.
    pub fn contains(&self, a: f64) -> bool {
        self.lower <= a && a <= self.upper
    }
}

/// Extrema of `Φ'` for the family, from the piecewise formula.
pub fn extrema_closed_form(b: f64) -> Result<ExtremaReport> {
    check_shape(b)?;
    let (alpha, arg_alpha) = if b < BRANCH_POINT {
        (b - 1.0, 1.0)
    } else {
        ((b - b * b - 1.0) / (3.0 * b), (1.0 + b) / (3.0 * b))
    };
    Ok(ExtremaReport {
        alpha,
        beta: 1.0,
        arg_alpha,
        arg_beta: 0.0,
    })
}

/// Exact extrema of the quadratic `Φ'` of any cubic section.
///
/// Candidates are the two endpoints and the stationary point when it lies inside
/// `[0, 1]`. Ties keep the earliest candidate in the order `0, 1, stationary`.
pub fn extrema_numeric(phi: &PhiCubic) -> ExtremaReport {
    let mut candidates = vec![0.0, 1.0];
    if let Some(s) = phi.derivative_stationary_point() {
        if (0.0..=1.0).contains(&s) {
            candidates.push(s);
        }
    }
    let mut report = ExtremaReport {
        alpha: f64::INFINITY,
        beta: f64::NEG_INFINITY,
        arg_alpha: 0.0,
        arg_beta: 0.0,
    };
    for u in candidates {
        let d = phi.derivative(u);
        if d < report.alpha {
            report.alpha = d;
            report.arg_alpha = u;
        }
        if d > report.beta {
            report.beta = d;
            report.arg_beta = u;
        }
    }
    report
}

/// `[-1/max(α², β²), -1/(αβ)]`, defined only for `α < 0 < β`.
pub fn cubic_section_range(ex: &ExtremaReport) -> Result<AdmissibleRange> {
    let (alpha, beta) = (ex.alpha, ex.beta);
    if !(alpha < 0.0 && beta > 0.0) {
        return Err(Error::Degenerate { alpha, beta });
    }
    let lower = -1.0 / (alpha * alpha).max(beta * beta);
    let upper = -1.0 / (alpha * beta);
    Ok(AdmissibleRange::new(lower, upper, RangeKind::CubicSection))
}

/// The corrected admissible range:
/// `[-1, 1/(1 - b)]` for `b < 1/2`, `[-1, 3b/(b² - b + 1)]` for `1/2 <= b <= 2`.
pub fn corrected_range(b: f64) -> Result<AdmissibleRange> {
    check_shape(b)?;
    let upper = if b < BRANCH_POINT {
        1.0 / (1.0 - b)
    } else {
        3.0 * b / (b * b - b + 1.0)
    };
    Ok(AdmissibleRange::new(-1.0, upper, RangeKind::Corrected))
}

/// The ranges published before the correction. Not valid copula ranges.
///
/// `MinForm` is `[-1, min{1/(1 - b), 2}]`, `OnlineForm` is `[-1, 1/(1 - b)]`. Both
/// are singular at `b = 1`. For `1 < b < 2` they are empty; at `b = 2` they
/// collapse to the single point `-1`.
pub fn published_range(b: f64, variant: PublishedVariant) -> Result<AdmissibleRange> {
    check_shape(b)?;
    if b == 1.0 {
        return Err(Error::SingularAtOne);
    }
    let inv = 1.0 / (1.0 - b);
    Ok(match variant {
        PublishedVariant::MinForm => {
            AdmissibleRange::new(-1.0, inv.min(2.0), RangeKind::PublishedMinForm)
        }
        PublishedVariant::OnlineForm => {
            AdmissibleRange::new(-1.0, inv, RangeKind::PublishedOnlineForm)
        }
    })
}

/// Whether `(a, b)` defines a copula, i.e. `a` lies in [`corrected_range`].
pub fn is_admissible(params: &CopulaParams) -> bool {
    corrected_range(params.b())
        .map(|r| r.contains(params.a()))
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn closed_form_extrema_examples() {
        let e0 = extrema_closed_form(0.0).unwrap();
        assert_eq!(
            (e0.alpha, e0.beta, e0.arg_alpha, e0.arg_beta),
            (-1.0, 1.0, 1.0, 0.0)
        );

        let e1 = extrema_closed_form(1.0).unwrap();
        assert!(close(e1.alpha, -1.0 / 3.0, 1e-15));
        assert_eq!(e1.beta, 1.0);
        assert!(close(e1.arg_alpha, 2.0 / 3.0, 1e-15));

        // both branch formulas give -1/2 at the breakpoint
        let b: f64 = 0.5;
        assert_eq!(b - 1.0, -0.5);
        assert_eq!((b - b * b - 1.0) / (3.0 * b), -0.5);
        assert_eq!(extrema_closed_form(0.5).unwrap().alpha, -0.5);

        assert!(extrema_closed_form(2.1).is_err());
        assert!(extrema_closed_form(-0.1).is_err());
    }

    #[test]
    fn numeric_extrema_examples() {
        let e = extrema_numeric(&PhiCubic::for_shape(0.0).unwrap());
        assert_eq!(
            (e.alpha, e.arg_alpha, e.beta, e.arg_beta),
            (-1.0, 1.0, 1.0, 0.0)
        );

        let e = extrema_numeric(&PhiCubic::for_shape(2.0).unwrap());
        assert_eq!((e.alpha, e.arg_alpha), (-0.5, 0.5));
        assert_eq!((e.beta, e.arg_beta), (1.0, 0.0));

        // stationary point 5/3 lies outside, minimum at the endpoint
        let e = extrema_numeric(&PhiCubic::for_shape(0.25).unwrap());
        assert_eq!((e.alpha, e.arg_alpha), (-0.75, 1.0));
    }

    #[test]
    fn cubic_section_range_examples() {
        let ex = |alpha, beta| ExtremaReport {
            alpha,
            beta,
            arg_alpha: 0.0,
            arg_beta: 0.0,
        };
        let r = cubic_section_range(&ex(-1.0, 1.0)).unwrap();
        assert_eq!((r.lower, r.upper, r.empty), (-1.0, 1.0, false));
        let r = cubic_section_range(&ex(-1.0 / 3.0, 1.0)).unwrap();
        assert!(close(r.lower, -1.0, 1e-15) && close(r.upper, 3.0, 1e-15));
        let r = cubic_section_range(&ex(-2.0, 1.0)).unwrap();
        assert_eq!((r.lower, r.upper), (-0.25, 0.5));

        assert!(matches!(
            cubic_section_range(&ex(0.0, 1.0)),
            Err(Error::Degenerate { .. })
        ));
        assert!(matches!(
            cubic_section_range(&ex(-1.0, 0.0)),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn corrected_range_examples() {
        let r = corrected_range(0.0).unwrap();
        assert_eq!(
            (r.lower, r.upper, r.kind),
            (-1.0, 1.0, RangeKind::Corrected)
        );
        assert_eq!(corrected_range(1.0).unwrap().upper, 3.0);
        assert_eq!(corrected_range(2.0).unwrap().upper, 2.0);
        assert_eq!(corrected_range(0.5).unwrap().upper, 2.0);
        assert!(corrected_range(2.5).is_err());
    }

    #[test]
    fn published_range_examples() {
        let r = published_range(1.1, PublishedVariant::MinForm).unwrap();
        assert_eq!(r.lower, -1.0);
        assert!(close(r.upper, -10.0, 1e-12));
        assert!(r.empty);

        let r = published_range(0.9, PublishedVariant::OnlineForm).unwrap();
        assert!(close(r.upper, 10.0, 1e-12) && !r.empty);

        let r = published_range(0.4, PublishedVariant::MinForm).unwrap();
        assert!(close(r.upper, 5.0 / 3.0, 1e-15));

        for v in [PublishedVariant::MinForm, PublishedVariant::OnlineForm] {
            assert_eq!(published_range(1.0, v), Err(Error::SingularAtOne));
        }
    }

    #[test]
    fn admissibility_examples() {
        let p = |a, b| CopulaParams::new(a, b).unwrap();
        assert!(is_admissible(&p(2.0, 0.5)));
        assert!(!is_admissible(&p(1.5, 0.0)));
        assert!(is_admissible(&p(-1.0, 1.7)));
        assert!(!is_admissible(&p(-1.0 - 1e-12, 1.7)));
        assert!(!is_admissible(&p(10.0, 0.9)));
    }

    #[test]
    fn branch_continuity() {
        let eps = 1e-9;
        let left = corrected_range(0.5 - eps).unwrap().upper;
        let right = corrected_range(0.5 + eps).unwrap().upper;
        assert!((left - right).abs() < 1e-6);
    }

    #[test]
    fn engines_agree_on_sweep() {
        for i in 0..200 {
            let b = 2.0 * i as f64 / 199.0;
            let closed = extrema_closed_form(b).unwrap();
            let numeric = extrema_numeric(&PhiCubic::for_shape(b).unwrap());
            assert!(close(closed.alpha, numeric.alpha, TOL), "b={b}");
            assert!(close(closed.beta, numeric.beta, TOL), "b={b}");

            let generic = cubic_section_range(&numeric).unwrap();
            let corrected = corrected_range(b).unwrap();
            assert!(close(generic.lower, corrected.lower, TOL));
            assert!(close(generic.upper, corrected.upper, TOL));
            assert_eq!(corrected.lower, -1.0);
            assert!(corrected.upper > 0.0 && !corrected.empty);
            assert!(closed.alpha < 0.0 && closed.alpha <= closed.beta);
        }
    }

    #[test]
    fn min_form_is_empty_above_one() {
        for i in 1..100 {
            let b = 1.0 + i as f64 / 100.0;
            assert!(
                published_range(b, PublishedVariant::MinForm).unwrap().empty,
                "b={b}"
            );
        }
        // at b = 2 the interval collapses to the single point {-1}
        let r = published_range(2.0, PublishedVariant::MinForm).unwrap();
        assert_eq!((r.lower, r.upper, r.empty), (-1.0, -1.0, false));
    }

    proptest! {
        // Density is bilinear in (Φ'(u), Φ'(v)), so its minimum over the
        // rectangle [α, β]² sits at a corner.
        #[test]
        fn admissible_iff_density_corners_nonnegative(a in -3.0f64..5.0, b in 0.0f64..=2.0) {
            let r = corrected_range(b).unwrap();
            prop_assume!((a - r.lower).abs() > 1e-9 && (a - r.upper).abs() > 1e-9);
            let ex = extrema_closed_form(b).unwrap();
            let corners = [ex.alpha, ex.beta];
            let min = corners
                .iter()
                .flat_map(|x| corners.iter().map(move |y| 1.0 + a * x * y))
                .fold(f64::INFINITY, f64::min);
            let p = CopulaParams::new(a, b).unwrap();
            prop_assert_eq!(is_admissible(&p), min >= -1e-12);
        }
    }
}

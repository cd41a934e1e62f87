//! Live reproduction of the two counterexamples against the published ranges.
//!
//! 1. At `b = 1.1` the min-form range `[-1, min{1/(1-b), 2}]` is `[-1, -10]`, an
//!    empty interval, while the corrected range is not.
//! 2. At `b = 0.9` the online-form range admits `a = 10`, which gives a formal
//!    Spearman's rho above one and a negative density somewhere in the square.

use serde::{Deserialize, Serialize};

use super::{density_min_scan, rho_numeric, GridReport, CERTIFICATION_GRID, DEFAULT_NODES};
use crate::copula::{density, rho_closed_form, CopulaParams, UnitPoint};
use crate::error::Result;
use crate::validity::{
    corrected_range, extrema_closed_form, published_range, AdmissibleRange, PublishedVariant,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmptyRangeCase {
    pub b: f64,
    pub published: AdmissibleRange,
    pub corrected: AdmissibleRange,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoExcessCase {
    pub a: f64,
    pub b: f64,
    pub published: AdmissibleRange,
    pub corrected: AdmissibleRange,
    pub admitted_by_published: bool,
    pub admitted_by_corrected: bool,
    pub rho_formal: f64,
    pub rho_quadrature: f64,
    pub density_at_origin: f64,
    pub alpha: f64,
    pub arg_alpha: f64,
    pub density_at_arg_alpha: f64,
    pub density_scan: GridReport,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsificationReport {
    pub empty_range: EmptyRangeCase,
    pub rho_excess: RhoExcessCase,
    pub confirmed: bool,
}

/// Both counterexamples at their original parameters.
pub fn falsify_published_ranges() -> Result<FalsificationReport> {
    falsify_with(1.1, 0.9, 10.0)
}

/// Both counterexamples at caller-chosen parameters; a case is confirmed only if
/// every ingredient of the counterexample is recomputed and holds.
pub fn falsify_with(empty_b: f64, excess_b: f64, excess_a: f64) -> Result<FalsificationReport> {
    let published = published_range(empty_b, PublishedVariant::MinForm)?;
    let corrected = corrected_range(empty_b)?;
    let empty_range = EmptyRangeCase {
        b: empty_b,
        published,
        corrected,
        confirmed: published.empty && !corrected.empty,
    };

    let params = CopulaParams::new(excess_a, excess_b)?;
    let published = published_range(excess_b, PublishedVariant::OnlineForm)?;
    let corrected = corrected_range(excess_b)?;
    let ex = extrema_closed_form(excess_b)?;
    let rho_formal = rho_closed_form(&params);
    let rho_quadrature = rho_numeric(&params, DEFAULT_NODES)?.value;
    let density_scan = density_min_scan(&params, CERTIFICATION_GRID)?;
    let admitted_by_published = published.contains(excess_a);
    let admitted_by_corrected = corrected.contains(excess_a);
    let confirmed = admitted_by_published
        && !admitted_by_corrected
        && rho_formal > 1.0
        && rho_quadrature > 1.0
        && !density_scan.passed;
    let rho_excess = RhoExcessCase {
        a: excess_a,
        b: excess_b,
        published,
        corrected,
        admitted_by_published,
        admitted_by_corrected,
        rho_formal,
        rho_quadrature,
        density_at_origin: density(UnitPoint { u: 0.0, v: 0.0 }, &params),
        alpha: ex.alpha,
        arg_alpha: ex.arg_alpha,
        density_at_arg_alpha: density(
            UnitPoint {
                u: ex.arg_alpha,
                v: 0.0,
            },
            &params,
        ),
        density_scan,
        confirmed,
    };

    Ok(FalsificationReport {
        confirmed: empty_range.confirmed && rho_excess.confirmed,
        empty_range,
        rho_excess,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn original_counterexamples_are_confirmed() {
        let r = falsify_published_ranges().unwrap();
        assert!(r.confirmed);

        let e = &r.empty_range;
        assert!(e.published.empty);
        assert!((e.published.upper + 10.0).abs() < 1e-12);
        assert!((e.corrected.upper - 3.3 / 1.11).abs() < 1e-12);

        let x = &r.rho_excess;
        assert!((x.rho_formal - 10.0 * 1.21 / 12.0).abs() < 1e-12);
        assert!((x.rho_quadrature - x.rho_formal).abs() < 1e-9);
        assert_eq!(x.density_at_origin, 11.0);
        assert!((x.alpha - (0.9 - 0.81 - 1.0) / 2.7).abs() < 1e-15);
        assert!(x.density_at_arg_alpha < 0.0);
        assert!((x.corrected.upper - 2.7 / 0.91).abs() < 1e-12);
        assert!(!x.density_scan.passed);
    }

    #[test]
    fn not_confirmed_when_counterexample_does_not_hold() {
        // a = 1 is admissible at b = 0.9
        let r = falsify_with(1.1, 0.9, 1.0).unwrap();
        assert!(r.empty_range.confirmed);
        assert!(!r.rho_excess.confirmed);
        assert!(!r.confirmed);
        // below one the min-form range is not empty
        let r = falsify_with(0.4, 0.9, 10.0).unwrap();
        assert!(!r.empty_range.confirmed && !r.confirmed);
    }
}

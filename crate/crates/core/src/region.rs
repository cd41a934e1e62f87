//! Sweep of the admissible region over `b`.
//!
//! For fixed `b` both measures are linear in `a`, so their extremes over the
//! admissible range sit at the two endpoints.

use serde::{Deserialize, Serialize};

use crate::copula::{rho_closed_form, tau_closed_form, CopulaParams};
use crate::error::{Error, Result};
use crate::validity::corrected_range;

pub const CSV_HEADER: &str = "b,a_lower,a_upper,rho_min,rho_max,tau_min,tau_max";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionRow {
    pub b: f64,
    pub a_lower: f64,
    pub a_upper: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    pub tau_min: f64,
    pub tau_max: f64,
}

/// A global extreme of one measure and the parameters attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extreme {
    pub value: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSummary {
    pub rho_min: Extreme,
    pub rho_max: Extreme,
    pub tau_min: Extreme,
    pub tau_max: Extreme,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSweep {
    pub rows: Vec<RegionRow>,
    pub summary: RegionSummary,
}

/// `steps` equally spaced values of `b` from 0 to 2 inclusive.
pub fn sweep(steps: usize) -> Result<RegionSweep> {
    if steps < 2 {
        return Err(Error::Domain {
            name: "steps",
            value: steps as f64,
            domain: "steps >= 2",
        });
    }
    let last = (steps - 1) as f64;
    let rows = (0..steps)
        .map(|i| region_row(2.0 * i as f64 / last))
        .collect::<Result<Vec<_>>>()?;

    let pick = |value: fn(&RegionRow) -> f64, a: fn(&RegionRow) -> f64, max: bool| {
        // first occurrence wins ties
        let best = rows
            .iter()
            .reduce(|best, r| {
                let better = if max {
                    value(r) > value(best)
                } else {
                    value(r) < value(best)
                };
                if better {
                    r
                } else {
                    best
                }
            })
            .expect("at least two rows");
        Extreme {
            value: value(best),
            a: a(best),
            b: best.b,
        }
    };
    let summary = RegionSummary {
        rho_min: pick(|r| r.rho_min, |r| r.a_lower, false),
        rho_max: pick(|r| r.rho_max, |r| r.a_upper, true),
        tau_min: pick(|r| r.tau_min, |r| r.a_lower, false),
        tau_max: pick(|r| r.tau_max, |r| r.a_upper, true),
    };
    Ok(RegionSweep { rows, summary })
}

pub fn region_row(b: f64) -> Result<RegionRow> {
    let range = corrected_range(b)?;
    let lo = CopulaParams::new(range.lower, b)?;
    let hi = CopulaParams::new(range.upper, b)?;
    Ok(RegionRow {
        b,
        a_lower: range.lower,
        a_upper: range.upper,
        rho_min: rho_closed_form(&lo),
        rho_max: rho_closed_form(&hi),
        tau_min: tau_closed_form(&lo),
        tau_max: tau_closed_form(&hi),
    })
}

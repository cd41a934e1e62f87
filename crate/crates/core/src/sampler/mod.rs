//! Sampling by conditional inversion.
//!
//! Draw `u` and `t` uniformly, then solve `∂C/∂u (u, v) = v + a Φ'(u) Φ(v) = t`
//! for `v`. For admissible parameters the left side is a non-decreasing cubic in
//! `v` running from 0 to 1, so the root is bracketed by `[0, 1]`.

mod estimators;

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::copula::{CopulaParams, UnitPoint};
use crate::error::{check_unit, Error, Result};
use crate::numfmt;
use crate::validity::{corrected_range, is_admissible};

pub(crate) use estimators::tau_b_from_counts;
pub use estimators::{kendall_tau, ks_uniform_statistic, spearman_rho};

/// Convergence threshold on `|g(v) - t|`.
pub const ROOT_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;
/// Newton steps are skipped when the density drops below this.
pub const MIN_NEWTON_SLOPE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub pairs: Vec<UnitPoint>,
    pub seed: u64,
    pub params: CopulaParams,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn us(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.u).collect()
    }

    pub fn vs(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.v).collect()
    }

    /// CSV with header `u,v` and 17 significant digits per value.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(b"u,v\n")?;
        for p in &self.pairs {
            writeln!(out, "{},{}", numfmt::machine(p.u), numfmt::machine(p.v))?;
        }
        out.flush()
    }
}

fn inadmissible(params: &CopulaParams) -> Error {
    let range = corrected_range(params.b()).expect("b validated by CopulaParams");
    Error::InadmissibleParams {
        a: params.a(),
        b: params.b(),
        lower: range.lower,
        upper: range.upper,
    }
}

/// Solves `v + a Φ'(u) Φ(v) = t` for `v ∈ [0, 1]`.
///
/// Newton iterations inside a shrinking bisection bracket. A Newton step is
/// rejected, and the bracket bisected instead, whenever it would leave the bracket
/// or the local slope is below [`MIN_NEWTON_SLOPE`].
pub fn solve_conditional(u: f64, t: f64, params: &CopulaParams) -> Result<f64> {
    if !is_admissible(params) {
        return Err(inadmissible(params));
    }
    check_unit("u", u)?;
    check_unit("t", t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    if t == 1.0 {
        return Ok(1.0);
    }
    let phi = params.phi();
    let slope = params.a() * phi.derivative(u);
    let g = |v: f64| v + slope * phi.eval(v) - t;
    let dg = |v: f64| 1.0 + slope * phi.derivative(v);

    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut v = t;
    for _ in 0..MAX_ITERATIONS {
        let gv = g(v);
        if gv.abs() <= ROOT_TOLERANCE {
            return Ok(v);
        }
        if gv < 0.0 {
            lo = v;
        } else {
            hi = v;
        }
        let d = dg(v);
        let newton = v - gv / d;
        v = if d > MIN_NEWTON_SLOPE && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}

/// `count` pairs from the copula, reproducible from `(params, count, seed)`.
pub fn sample(params: &CopulaParams, count: usize, seed: u64) -> Result<SampleBatch> {
    if !is_admissible(params) {
        return Err(inadmissible(params));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (0..count)
        .map(|_| {
            let u: f64 = rng.random();
            let t: f64 = rng.random();
            Ok(UnitPoint {
                u,
                v: solve_conditional(u, t, params)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleBatch {
        pairs,
        seed,
        params: *params,
    })
}

/// Spearman's rho of the batch with average ranks for ties.
pub fn empirical_rho(batch: &SampleBatch) -> Result<f64> {
    spearman_rho(&batch.us(), &batch.vs())
}

/// Kendall's tau-b of the batch, `O(n log n)`.
pub fn empirical_tau(batch: &SampleBatch) -> Result<f64> {
    kendall_tau(&batch.us(), &batch.vs())
}

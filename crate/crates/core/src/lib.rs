//! Extended Farlie–Gumbel–Morgenstern copula
//!
//! ```text
//! C(u, v) = uv [1 + a (1 - u)(1 - v)(1 - bu)(1 - bv)],   0 <= b <= 2
//! ```
//!
//! The family has cubic sections in both arguments, `C(u, v) = uv + a Φ(u) Φ(v)`
//! with `Φ(u) = u (1 - u)(1 - bu)`, so the set of `a` for which `C` is a genuine
//! copula follows from the extrema of `Φ'` on `[0, 1]`.
//!
//! The crate is organised as:
//!
//! - [`copula`]: exact evaluation of the CDF, density, conditional CDF and the
//!   closed-form Spearman's rho / Kendall's tau.
//! - [`validity`]: extrema of `Φ'`, the generic cubic-section bound, the corrected
//!   piecewise range for `a`, and the previously published ranges that are known to
//!   be wrong (kept so they can be falsified).
//! - [`oracle`]: brute-force grid checks, Gauss–Legendre quadrature of rho/tau and
//!   the counterexample reproductions.
//! - [`sampler`]: conditional-inversion sampling and rank-based estimators.
//! - [`region`]: sweep of the admissible region over `b`.

pub mod copula;
pub mod error;
pub mod numfmt;
pub mod oracle;
pub mod region;
pub mod sampler;
pub mod validity;

pub use copula::{
    cdf, cdf_product_form, conditional_v_given_u, density, fgm_reference_cdf, measures, phi,
    phi_prime, rho_closed_form, tau_closed_form, CopulaParams, DependenceMeasures, PhiCubic,
    UnitPoint,
};
pub use error::{Error, Result};
pub use oracle::{CheckKind, GridReport, QuadratureResult};
pub use sampler::SampleBatch;
pub use validity::{
    corrected_range, cubic_section_range, extrema_closed_form, extrema_numeric, is_admissible,
    published_range, AdmissibleRange, ExtremaReport, PublishedVariant, RangeKind,
};

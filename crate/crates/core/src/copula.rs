//! Exact evaluation of the copula and its closed-form dependence measures.
//!
//! Everything here goes through the expanded cubic `Φ(u) = u - (1+b)u² + bu³`.
//! The literal product form is kept separately in [`cdf_product_form`] so the two
//! can be checked against each other.

use serde::{Deserialize, Serialize};

use crate::error::{check_shape, check_unit, Error, Result};

/// The dependence parameter `a` and shape parameter `b` of the family.
///
/// `b` is restricted to `[0, 2]`. `a` only has to be finite: whether the pair
/// defines a copula is a separate question, see [`crate::validity::is_admissible`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CopulaParams {
    a: f64,
    b: f64,
}

impl CopulaParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Domain {
                name: "a",
                value: a,
                domain: "finite reals",
            });
        }
        check_shape(b)?;
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Same shape, different dependence parameter.
    pub fn with_a(&self, a: f64) -> Result<Self> {
        Self::new(a, self.b)
    }

    #[inline]
    pub fn phi(&self) -> PhiCubic {
        PhiCubic::for_shape_unchecked(self.b)
    }
}

/// A point of the closed unit square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitPoint {
    pub u: f64,
    pub v: f64,
}

impl UnitPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        Ok(Self {
            u: check_unit("u", u)?,
            v: check_unit("v", v)?,
        })
    }

    pub fn swapped(self) -> Self {
        Self {
            u: self.v,
            v: self.u,
        }
    }
}

/// `Φ(u) = c1·u + c2·u² + c3·u³`, a cubic vanishing at 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiCubic {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl PhiCubic {
    /// Largest tolerated `|Φ(1)|` for a user-supplied cubic.
    pub const ENDPOINT_TOLERANCE: f64 = 1e-15;

    /// Builds a general cubic section, rejecting coefficients with `Φ(1) != 0`.
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let phi = Self { c1, c2, c3 };
        let at_one = c1 + c2 + c3;
        if at_one.is_nan() || at_one.abs() > Self::ENDPOINT_TOLERANCE {
            return Err(Error::Domain {
                name: "Φ(1)",
                value: at_one,
                domain: "{0}",
            });
        }
        Ok(phi)
    }

    /// `Φ(u) = u(1 - u)(1 - bu)` in coefficient form.
    pub fn for_shape(b: f64) -> Result<Self> {
        check_shape(b)?;
        Ok(Self::for_shape_unchecked(b))
    }

    #[inline]
    pub(crate) fn for_shape_unchecked(b: f64) -> Self {
        Self {
            c1: 1.0,
            c2: -(1.0 + b),
            c3: b,
        }
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        u * (self.c1 + u * (self.c2 + u * self.c3))
    }

    #[inline]
    pub fn derivative(&self, u: f64) -> f64 {
        self.c1 + u * (2.0 * self.c2 + 3.0 * self.c3 * u)
    }

    /// Stationary point of the quadratic `Φ'`, if `Φ'` is not linear.
    pub fn derivative_stationary_point(&self) -> Option<f64> {
        if self.c3 == 0.0 {
            None
        } else {
            Some(-self.c2 / (3.0 * self.c3))
        }
    }

    /// `∫₀¹ Φ(u) du`.
    pub fn integral(&self) -> f64 {
        self.c1 / 2.0 + self.c2 / 3.0 + self.c3 / 4.0
    }
}

/// Spearman's rho and Kendall's tau of one parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DependenceMeasures {
    pub rho: f64,
    pub tau: f64,
}

/// `Φ(u) = u(1 - u)(1 - bu)`, evaluated through the expanded cubic.
pub fn phi(u: f64, b: f64) -> Result<f64> {
    check_unit("u", u)?;
    Ok(PhiCubic::for_shape(b)?.eval(u))
}

/// `Φ'(u) = 1 - 2(1 + b)u + 3bu²`.
pub fn phi_prime(u: f64, b: f64) -> Result<f64> {
    check_unit("u", u)?;
    Ok(PhiCubic::for_shape(b)?.derivative(u))
}

/// `C(u, v) = uv + a Φ(u) Φ(v)`.
pub fn cdf(p: UnitPoint, params: &CopulaParams) -> f64 {
    let phi = params.phi();
    p.u * p.v + params.a * (phi.eval(p.u) * phi.eval(p.v))
}

/// `C(u, v) = uv [1 + a (1 - u)(1 - v)(1 - bu)(1 - bv)]`, exactly as written.
pub fn cdf_product_form(p: UnitPoint, params: &CopulaParams) -> f64 {
    let (u, v, a, b) = (p.u, p.v, params.a, params.b);
    u * v * (1.0 + a * (1.0 - u) * (1.0 - v) * (1.0 - b * u) * (1.0 - b * v))
}

/// `c(u, v) = 1 + a Φ'(u) Φ'(v)`.
///
/// Negative values are returned as-is; they are how inadmissible parameters show up.
pub fn density(p: UnitPoint, params: &CopulaParams) -> f64 {
    let phi = params.phi();
    1.0 + params.a * (phi.derivative(p.u) * phi.derivative(p.v))
}

/// `∂C/∂u = v + a Φ'(u) Φ(v)`, the CDF of `V` given `U = u`.
pub fn conditional_v_given_u(u: f64, v: f64, params: &CopulaParams) -> f64 {
    let phi = params.phi();
    v + params.a * phi.derivative(u) * phi.eval(v)
}

// 12 a (∫Φ)² with ∫Φ = (2 - b)/12.
#[inline]
fn measure_factor(params: &CopulaParams) -> f64 {
    let s = 2.0 - params.b;
    params.a * s * s
}

/// `rho = a (2 - b)² / 12`. Formal for inadmissible `a`.
pub fn rho_closed_form(params: &CopulaParams) -> f64 {
    measure_factor(params) / 12.0
}

/// `tau = a (2 - b)² / 18`. Formal for inadmissible `a`.
pub fn tau_closed_form(params: &CopulaParams) -> f64 {
    measure_factor(params) / 18.0
}

pub fn measures(params: &CopulaParams) -> DependenceMeasures {
    DependenceMeasures {
        rho: rho_closed_form(params),
        tau: tau_closed_form(params),
    }
}

/// Classical FGM copula `uv [1 + a (1 - u)(1 - v)]`, `|a| <= 1`.
pub fn fgm_reference_cdf(p: UnitPoint, a: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&a) {
        return Err(Error::Domain {
            name: "a",
            value: a,
            domain: "[-1, 1]",
        });
    }
    Ok(p.u * p.v * (1.0 + a * (1.0 - p.u) * (1.0 - p.v)))
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside its mathematical domain.
    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The cubic-section bound needs `alpha < 0 < beta`.
    #[error("degenerate extrema alpha = {alpha}, beta = {beta}: the bound needs alpha < 0 < beta")]
    Degenerate { alpha: f64, beta: f64 },

    /// The published ranges divide by `1 - b`.
    #[error("the published range is singular at b = 1 (division by 1 - b)")]
    SingularAtOne,

    #[error("a = {a} is not admissible for b = {b}; the admissible range is [{lower}, {upper}]")]
    InadmissibleParams {
        a: f64,
        b: f64,
        lower: f64,
        upper: f64,
    },

    #[error("conditional inversion did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("at least 2 samples are required, got {0}")]
    TooFewSamples(usize),

    /// Rank correlation is undefined when one coordinate is constant.
    #[error("rank correlation is undefined for a constant coordinate")]
    ConstantSample,
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            domain: "[0, 1]",
        })
    }
}

pub(crate) fn check_shape(b: f64) -> Result<f64> {
    if (0.0..=2.0).contains(&b) {
        Ok(b)
    } else {
        Err(Error::Domain {
            name: "b",
            value: b,
            domain: "[0, 2]",
        })
    }
}

use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// The input is valid but the quantity is undefined for it
    /// (zero edges, zero L1 norm, clique of size < 2, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("{context}: tolerance not met (achieved {achieved:e}, requested {requested:e})")]
    ToleranceNotMet {
        context: &'static str,
        achieved: f64,
        requested: f64,
        /// Best estimate available when the computation stopped.
        last_estimate: Vec<f64>,
    },

    #[error("work budget exceeded: {what} needs {needed:e} units, budget is {budget:e}; {hint}")]
    Budget {
        what: &'static str,
        needed: f64,
        budget: f64,
        hint: &'static str,
    },

    #[error("unsupported kernel: {0}")]
    UnsupportedKernel(&'static str),

    #[error("insufficient vertices: need {needed}, have {available}")]
    InsufficientVertices { needed: usize, available: usize },

    #[error("computation failed: {0}")]
    Computation(String),
}

macro_rules! bail {
    ($variant:ident, $($fmt:tt)+) => {
        return Err($crate::error::Error::$variant(alloc::format!($($fmt)+)))
    };
}
pub(crate) use bail;

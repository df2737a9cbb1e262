use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Gamma argument past the overflow cap.
    #[error("gamma overflow: argument {0} exceeds 170")]
    GammaOverflow(f64),

    /// Composite quadrature stopped refining before reaching the requested
    /// absolute tolerance.
    #[error("quadrature tolerance not met: |delta| = {achieved:e} > {requested:e} after {refinements} panel doublings")]
    ToleranceNotMet {
        achieved: f64,
        requested: f64,
        refinements: usize,
    },

    /// Root refinement failed to converge within the iteration budget.
    #[error("root refinement for order {order}, index {index} did not converge")]
    RootConvergence { order: f64, index: u32 },

    /// No term count l <= l_max satisfied the threshold inequality.
    #[error("l_max {l_max} exceeded: cumulative sum {achieved:e} still <= threshold {threshold:e}; raise l_max")]
    LMaxExceeded {
        l_max: u32,
        achieved: f64,
        threshold: f64,
    },

    /// Not enough (or degenerate) data for a regression.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("cache parse: {0}")]
    CacheFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the physics and numerics modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("quadrature did not converge after {doublings} panel doublings (last change {last_change:e})")]
    Nonconvergence { doublings: u32, last_change: f64 },

    #[error("integrand not negligible at r_max = {r_max} (|f(r_max)| = {tail:e}, peak {peak:e})")]
    Truncation { r_max: f64, tail: f64, peak: f64 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("degenerate pattern: order-{order} Fourier amplitude {amplitude:e} below threshold")]
    DegeneratePattern { order: u32, amplitude: f64 },

    #[error("degenerate superposition: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

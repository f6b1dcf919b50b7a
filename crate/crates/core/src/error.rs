use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite intermediate value in {0}")]
    NonFinite(&'static str),

    #[error("continued fraction failed to converge for x = {x} after {iterations} iterations")]
    ContinuedFraction { x: f64, iterations: usize },

    #[error(
        "multipole series not converged: n_used = {n_used}, tail estimate = {tail_estimate:e}, partial sum = {partial:e}"
    )]
    SeriesNotConverged {
        n_used: usize,
        tail_estimate: f64,
        partial: f64,
    },

    #[error(
        "quadrature not converged: {panels} panels, estimated error {est_error:e} against target {target:e}"
    )]
    QuadratureNotConverged {
        panels: usize,
        est_error: f64,
        target: f64,
    },

    #[error("oscillator index {index} out of range ({len} oscillators)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error(
        "force magnitude not strictly decreasing: |F({gamma_lo})| = {force_lo:e} <= |F({gamma_hi})| = {force_hi:e}"
    )]
    MonotonicityViolated {
        gamma_lo: f64,
        gamma_hi: f64,
        force_lo: f64,
        force_hi: f64,
    },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

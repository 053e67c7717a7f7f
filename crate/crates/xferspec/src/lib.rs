//! Spectral analysis of weighted transfer operators on the circle.
//!
//! For an integer d >= 2 and a nonnegative 1-periodic weight f, the transfer
//! operator averages over the d preimages of the map t -> d t mod 1:
//!
//! ```text
//! (L u)(t) = (1/d) sum_{i<d} f((t+i)/d) u((t+i)/d)
//! ```
//!
//! This crate computes the iterates h_n = L^n 1 by exact preimage sums,
//! encloses the spectral radius by iterate extrema and Collatz-Wielandt
//! quotients, reduces trigonometric-polynomial weights to finite Fourier
//! truncation matrices, and provides closed forms for the dyadic cosine
//! weight (Hurwitz-zeta eigenfunctions, Bernoulli solutions, normalized
//! limits). On top of these sit operator norms on Lebesgue spaces and the
//! Cantor-measure Fourier-multiplier thresholds.

// negated comparisons like !(x > 0.0) are deliberate NaN guards
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cosine_sum;
pub mod dyadic;
pub mod fourier_matrix;
pub mod lp;
pub mod multiplier;
pub mod special;
pub mod transfer;
pub mod util;
pub mod weights;

pub use transfer::{Method, SpectralInterval};
pub use weights::{PeriodicWeight, TrigPolynomial};

/// Library error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite input: {0}")]
    NonFinite(String),
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("eigenvalue iteration did not converge (last residual {residual:e})")]
    NoConvergence { residual: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
    pub(crate) fn non_finite(what: impl Into<String>) -> Self {
        Error::NonFinite(what.into())
    }
    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceGuard(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

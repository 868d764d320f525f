//! Inter-numerology interference analysis for mixed-numerology OFDM.
//!
//! Two OFDM numerologies multiplexed over one bandwidth lose mutual
//! orthogonality; the leakage between any two of their subcarriers is fully
//! characterized by a closed-form inner product driven by the sinc envelope
//! of the rectangular pulse. This crate provides:
//!
//! * [`model`] — validated numerology parameter sets tied by a power-of-two
//!   scaling factor;
//! * [`basis`] — the rectangular-pulse subcarrier basis in continuous time
//!   and as discrete samples;
//! * [`closed_form`] — reduced-form inner products, the discretization
//!   factor, orthogonality predicates, and full interference tables;
//! * [`oracle`] — independent brute-force evaluations (adaptive quadrature
//!   and compensated direct summation) that certify the reduced forms;
//! * [`sim`] — an end-to-end two-numerology modulate/multiplex/demodulate
//!   chain with analytic interference prediction;
//! * [`reports`] — deterministic CSV/JSON emission backing the `mixnum`
//!   command-line tool.

pub mod basis;
pub mod closed_form;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod quad;
pub mod reports;
pub mod sim;

pub use model::{Numerology, NumerologyPair};

/// Unified error type for validation, numeric-domain, and I/O failures.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("wide spacing must exceed narrow spacing: {delta_f_wide} Hz <= {delta_f_narrow} Hz")]
    OrderViolation {
        delta_f_wide: f64,
        delta_f_narrow: f64,
    },
    #[error("spacing ratio {ratio} is not a power of two in [2, 1024]")]
    RatioNotPowerOfTwo { ratio: f64 },
    #[error("bandwidth {bandwidth_hz} Hz is not an integer multiple of spacing {delta_f_hz} Hz")]
    NonIntegralSubcarrierCount { bandwidth_hz: f64, delta_f_hz: f64 },
    #[error("subcarrier count {count} is not a supported power of two")]
    SubcarrierCountNotPowerOfTwo { count: u64 },
    #[error("{what} must be strictly positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("index {index} out of range [0, {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("numeric domain error: {0}")]
    Domain(String),
    #[error(
        "quadrature tolerance {tol} not reached: estimated error {estimated_error} \
         after {panels} panels"
    )]
    ToleranceNotReached {
        tol: f64,
        estimated_error: f64,
        panels: usize,
    },
    #[error("requested table of {requested} entries exceeds cap {cap}")]
    CapExceeded { requested: u64, cap: u64 },
    #[error("signal lengths differ: {left} vs {right} samples")]
    LengthMismatch { left: usize, right: usize },
    #[error("sampling durations differ: {left} s vs {right} s")]
    SampleRateMismatch { left: f64, right: f64 },
    #[error("insufficient samples: need {needed}, have {available}")]
    InsufficientSamples { needed: usize, available: usize },
    #[error("inconsistent configuration: {0}")]
    InconsistentConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

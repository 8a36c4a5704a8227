//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CurvelastError>;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvelastError {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error in {what}: {value} ({reason})")]
    Domain {
        what: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A model or material record violates its invariants.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A bracketing root finder did not observe a sign change.
    #[error("no sign change of {what} on [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    NoBracket {
        what: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// The two characteristic radial roots coincide and the Bessel mode basis collapses.
    #[error("repeated characteristic roots: q1^2 = {q1sq}, q2^2 = {q2sq}")]
    DegenerateRoots { q1sq: f64, q2sq: f64 },

    /// A supplied radial parameter does not satisfy the incremental equilibrium equations.
    #[error("q^2 = {qsq} is not a characteristic root (relative PDE residual {residual:e})")]
    NotARoot { qsq: f64, residual: f64 },

    /// A finite-difference step was requested outside the supported window.
    #[error("finite-difference step {step:e} outside [{min:e}, {max:e}]")]
    InvalidStep { step: f64, min: f64, max: f64 },

    /// An iterative refinement failed to reach its tolerance.
    #[error("{what} did not converge: {detail}")]
    NoConvergence { what: &'static str, detail: String },
}

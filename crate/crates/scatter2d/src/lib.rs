//! Numerical laboratory for two-dimensional radial quantum scattering.
//!
//! The crate computes partial-wave phase shifts, bound-state counts and
//! zero-energy threshold data for rapidly decaying radial potentials, and
//! cross-checks them through two independent routes: a spectral-shift /
//! winding identity relating the accumulated scattering phase to the number
//! of bound states, and a six-edge boundary-symbol loop whose pointwise
//! determinant winds by the same integer.
//!
//! Modules:
//! - [`specfun`]: Bessel-family special functions (integer order).
//! - [`potentials`]: radial potential models and their plane integrals.
//! - [`radial_engine`]: radial ODE solver, phase shifts, bound states,
//!   threshold classification.
//! - [`threshold_algebra`]: finite-dimensional projection and determinant
//!   identities used by the threshold analysis.
//! - [`hexagon_symbol`]: boundary-symbol edges, their determinants and the
//!   winding of the concatenated determinant loop.
//! - [`levinson`]: spectral shift function, high-energy regularizer, and
//!   verification of the counting identity.

pub mod extrapolate;
pub mod hexagon_symbol;
pub mod interp;
pub mod levinson;
pub mod linalg;
pub mod potentials;
pub mod quadrature;
pub mod radial_engine;
pub mod specfun;
pub mod threshold_algebra;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {context}: {message}")]
    Domain { context: &'static str, message: String },

    #[error("quadrature did not converge: achieved relative error {achieved:.3e}, requested {requested:.3e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    #[error("radial solution underflow at r = {r}: renormalization should have prevented this")]
    SolutionUnderflow { r: f64 },

    #[error("matching degeneracy at lambda = {lambda:.6e} (channel l = {l}): refine the energy")]
    MatchingDegeneracy { lambda: f64, l: u32 },

    #[error("grid refinement budget exhausted near lambda in [{lo:.6e}, {hi:.6e}] (channel l = {l})")]
    RefinementBudget { lo: f64, hi: f64, l: u32 },

    #[error("ill-conditioned exterior fit (condition {cond:.3e} > 1e8); enlarge the cutoff radius")]
    IllConditionedFit { cond: f64 },

    #[error("pseudo-inverse degeneracy: k = {k:.3e} below threshold; fall back to the rank-1 inverse")]
    PseudoInverseDegenerate { k: f64 },

    #[error("spectral shift normalization ambiguous: required constant {offset:.4} is farther than 0.25 from an integer")]
    NormalizationAmbiguity { offset: f64 },

    #[error("extrapolation not convergent: {message}")]
    ExtrapolationFailed { message: String },

    #[error("lambda = {lambda:.6e} outside tabulated range [{lo:.6e}, {hi:.6e}]; extend the phase table")]
    TableRange { lambda: f64, lo: f64, hi: f64 },

    #[error("winding inconclusive: off-integer residual {residual:.4} exceeds 0.1; {detail}")]
    WindingInconclusive { residual: f64, detail: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error taxonomy shared by every module of the library.
//!
//! All numerical routines return [`Result`] rather than panicking: the
//! library is used by a CLI that must map failures to exit codes and by
//! sweep drivers that must tolerate isolated bad grid points (e.g. a band
//! evaluated exactly on a light line).

/// Library-wide error type.
///
/// The variants mirror the failure modes of the physics:
///
/// * [`Error::Domain`] — an argument lies outside the mathematical domain of
///   a function (branch cut, non-positive distance, nome ≥ 1, ...).
/// * [`Error::Resonance`] — a lattice sum was requested exactly on a light
///   line, where the sum genuinely diverges (1D) or crosses a branch cut
///   (complex energies). Callers that sweep momenta catch this and flag the
///   offending row instead of aborting.
/// * [`Error::NonConvergence`] — an iterative scheme (series, continued
///   fraction, sequence acceleration, adaptive quadrature, shell summation,
///   fixed-point refinement) failed to reach its tolerance within its budget.
/// * [`Error::Overflow`] — an intermediate scale exceeded what f64 can carry;
///   this signals a parameter regime outside the supported envelope, not a
///   recoverable rounding issue.
/// * [`Error::Degeneracy`] — eigenvectors were requested at (numerically) an
///   exceptional point where the two-band Hamiltonian is defective.
/// * [`Error::GapClosed`] — a topological invariant was requested for a
///   gapless spectrum, where it is undefined.
/// * [`Error::Config`] — invalid user-facing configuration (CLI / sweep
///   specifications).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resonance (light-line) error: {0}")]
    Resonance(String),
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("degeneracy (exceptional point): {0}")]
    Degeneracy(String),
    #[error("gap closed: {0}")]
    GapClosed(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

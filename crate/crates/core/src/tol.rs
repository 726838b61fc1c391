//! Numerical tolerances shared by the whole crate.
//!
//! Every validation threshold lives here so that implementations and tests
//! agree on a single source of truth.

/// Entrywise Hermiticity tolerance for validated states.
pub const HERMITICITY: f64 = 1e-12;

/// Allowed deviation of a state's trace from one.
pub const UNIT_TRACE: f64 = 1e-12;

/// Eigenvalue floor for positive-semidefiniteness checks on states.
pub const PSD_FLOOR: f64 = -1e-12;

/// Hermiticity deviation accepted by the eigenvalue routines.
pub const EIG_HERMITICITY: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
pub const JACOBI_OFFDIAG_NORM: f64 = 1e-13;

/// Maximum number of cyclic Jacobi sweeps before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Kraus completeness residual allowed when constructing a [`crate::KrausSet`].
pub const KRAUS_COMPLETENESS: f64 = 1e-12;

/// Completeness residual below which a channel verification passes.
///
/// Looser than [`KRAUS_COMPLETENESS`] so that eigensolver noise in the
/// verification path is not mistaken for a genuine violation.
pub const CPTP_RESIDUAL: f64 = 1e-10;

/// Smallest Choi eigenvalue at which complete positivity still passes.
pub const CPTP_CHOI_FLOOR: f64 = -1e-10;

/// Allowed deviation of a population pair from summing to one.
pub const POPULATION_SUM: f64 = 1e-12;

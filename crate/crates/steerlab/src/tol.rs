//! Numerical tolerances used across the crate.
//!
//! Validation thresholds are fixed here so that every module agrees on what
//! "Hermitian", "positive semidefinite" or "trace preserving" means at f64
//! precision.

/// Relative Hermiticity defect accepted by eigensolver and validators.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues above this negative floor count as nonnegative; smaller
/// magnitudes are clipped to zero for downstream use (Jacobi round-off).
pub const PSD_TOL: f64 = 1e-10;

/// Unit-trace defect accepted for density matrices.
pub const TRACE_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm (relative) at which the Jacobi sweep stops.
pub const JACOBI_TOL: f64 = 1e-12;

/// Orthonormality defect accepted for measurement bases and eigenvectors.
pub const ORTHO_TOL: f64 = 1e-10;

/// Measurement weights must sum to one within this.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Assemblage no-signalling checks (trace normalization, equal marginals).
pub const ASSEMBLAGE_TOL: f64 = 1e-9;

/// Trace-preservation defect accepted for quantum channels.
pub const CHANNEL_TP_TOL: f64 = 1e-9;

/// A steering verdict fires only when the margin clears the error budget by
/// this much; criteria stay conservative near the boundary.
pub const VERDICT_TOL: f64 = 1e-9;

/// Rank cutoff: eigenvalues below this are treated as zero when splitting a
/// reduced state into support and null space.
pub const RANK_TOL: f64 = 1e-10;

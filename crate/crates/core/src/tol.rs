//! Numerical tolerances used across the crate.
//!
//! All values are chosen for double precision; generic code converts them
//! with [`Float::of`](crate::Float::of), so an `f32` instantiation inherits
//! the same nominal thresholds.

/// Hermiticity residual `max |a_ij - conj(a_ji)|`.
pub const HERMITIAN: f64 = 1e-10;

/// Unitarity residual `max |U U^dag - 1|`, also used for projector
/// completeness.
pub const UNITARY: f64 = 1e-10;

/// Reconstruction / operator-identity residual.
pub const RECON: f64 = 1e-10;

/// State normalization residual.
pub const NORM: f64 = 1e-10;

/// Trace-one residual for density operators.
pub const TRACE: f64 = 1e-10;

/// Magnitude below which an eigenvalue of a density operator counts as zero;
/// eigenvalues below `-PSD` invalidate the operator.
pub const PSD: f64 = 1e-10;

/// Relative eigenvalue gap (in units of the spectral range) under which
/// neighbouring eigenvalues merge into one degenerate cluster.
pub const DEGENERACY_REL: f64 = 1e-8;

/// Entropy comparison slack.
pub const ENTROPY: f64 = 1e-9;

/// Largest boundary amplitude a grid state may carry.
pub const EDGE: f64 = 1e-12;

/// Norm drift during split-operator propagation that aborts the run.
pub const MAX_NORM_DRIFT: f64 = 1e-6;

/// TPM_p is derived in the ideal-resolution limit; enforce
/// `d_p <= TPM_P_LIMIT_FACTOR * sigma_p`.
pub const TPM_P_LIMIT_FACTOR: f64 = 1e-3;

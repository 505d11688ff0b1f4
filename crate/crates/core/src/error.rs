use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not a projector (idempotency residual {residual:.3e})")]
    NotProjector { residual: f64 },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("state amplitude {amplitude:.3e} at the grid boundary exceeds the edge tolerance")]
    EdgeLeak { amplitude: f64 },

    #[error("norm drifted by {drift:.3e} during propagation; reduce the time step")]
    NormDrift { drift: f64 },

    #[error("degenerate time window (t2 = t1); evolve to a single time instead")]
    DegenerateWindow,

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("u must be even and v odd with v > u >= 0, got u = {u}, v = {v}")]
    ParityViolation { u: i64, v: i64 },

    #[error("moment order {0} unsupported (closed forms cover k = 1..=4)")]
    UnsupportedMoment(u32),

    #[error("first-measurement weight {weight:.3e} vanishes; conditional state undefined")]
    VanishingWeight { weight: f64 },

    #[error("momentum resolution d_p = {d_p:.3e} too coarse; TPM_p formulas hold for d_p <= {max:.3e}")]
    ResolutionTooCoarse { d_p: f64, max: f64 },

    #[error("operator is not the difference h2 - h1 (residual {residual:.3e})")]
    NotEnergyDifference { residual: f64 },

    #[error("unitary does not commute with the generating Hamiltonian (residual {residual:.3e})")]
    NotGeneratedBy { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

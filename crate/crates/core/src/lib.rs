//! Work as a two-time quantum observable.
//!
//! The crate builds Heisenberg-picture work operators for autonomous
//! few-particle systems, extracts their eigensystems and statistics, and
//! contrasts them with two-point-measurement (TPM) protocol statistics.
//! Everything numerical is cross-checked against split-operator grid
//! propagation.
//!
//! All numerics are generic over the scalar type through [`Float`]; the
//! `*64` aliases below pin the double-precision instantiation used by the
//! CLI and the test suites.

pub mod dynamics;
pub mod error;
pub mod grid;
pub mod models;
pub mod operator;
pub mod random;
pub mod scalar;
pub mod tol;
pub mod tpm;
pub mod work_stats;

pub use error::{Error, Result};
pub use scalar::{c, cr, Float, C};

/// Crate version, echoed into every CLI result record.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type Operator64 = operator::Operator<f64>;
pub type DensityOperator64 = operator::DensityOperator<f64>;
pub type Ket64 = operator::Ket<f64>;
pub type GridSpec64 = grid::GridSpec<f64>;
pub type WaveFunction64 = grid::WaveFunction1D<f64>;
pub type GaussianPacket64 = grid::GaussianPacket<f64>;
pub type TwoTimeWindow64 = dynamics::TwoTimeWindow<f64>;
pub type GravityModel64 = models::GravityModel<f64>;
pub type ElasticModel64 = models::ElasticModel<f64>;
pub type SpinModel64 = models::SpinModel<f64>;
pub type GaussianDensity64 = tpm::GaussianDensity<f64>;
pub type WorkDensity64 = tpm::WorkDensity<f64>;

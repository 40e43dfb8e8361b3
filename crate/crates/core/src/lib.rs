//! Polarforming for dual-polarized MIMO links.
//!
//! Each antenna carries a phase-shift-controlled polarization vector, so the
//! effective channel seen by the precoder depends on one phase per antenna
//! at either end. [`polarforming`] jointly tunes those phases and the
//! transmit covariance; [`baselines`] implements the fixed and switched
//! polarization schemes it is compared against; [`experiments`] runs the
//! Monte-Carlo sweeps and writes rate curves to CSV.

pub mod baselines;
pub mod channel;
pub mod error;
pub mod experiments;
pub mod matkit;
pub mod polarforming;

pub use baselines::SchemeId;
pub use channel::{generate, ChannelParams, PolarizedChannel};
pub use error::{Error, Result};
pub use experiments::{run_experiment, ExperimentConfig, RateSample};
pub use matkit::{CMatrix, Complex64, GaussianSource, Mat2, Vec2};
pub use polarforming::{optimize, OptimizeResult, PhaseConfig};

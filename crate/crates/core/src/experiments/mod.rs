//! Monte-Carlo sweeps over channel realizations and their CSV output.

mod catalog;
mod config;
mod csv;
mod gain;
mod runner;

pub use catalog::{describe, panels, EXPERIMENT_IDS};
pub use config::{
    db_to_linear, grid, ExperimentConfig, FixedAntenna, Mode, Sweep, SweepAxis, SweepPoint, DEFAULT_CHI,
    DEFAULT_REALIZATIONS, DEFAULT_SEED, DEFAULT_SNR_DB,
};
pub use csv::{curve, format_g9, read_csv, write_csv, CSV_HEADER};
pub use gain::{snr_at_rate, snr_gain};
pub use runner::{
    convergence_trace, convergence_traces, mean_and_std_error, rates_at, realization, run_experiment, RateSample,
};

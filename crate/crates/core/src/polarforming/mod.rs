//! Polarforming: per-antenna phase-shift control of dual-element antennas,
//! effective channels, closed-form phase updates, water-filling capacity and
//! the alternating optimizers built from them.

mod alternating;
mod capacity;
mod kernel;
mod pfv;
mod waterfill;

pub use alternating::{
    optimize, optimize_mimo, optimize_mimo_with, optimize_miso_simo, optimize_miso_simo_with, relative_increase,
    trace_objective, AlternatingOptions, OptimizeResult, DEFAULT_EPSILON, DEFAULT_MAX_ITERATIONS,
};
pub use capacity::{capacity_bits, capacity_upper_bound, mimo_capacity, MimoCapacity};
pub use kernel::{
    coordinate_sweep, optimize_single_sided, phase_argmax, receive_form, single_sided_vectors, siso_optimal_phase,
    transmit_form, FixedEnd,
};
pub use pfv::{assemble, effective_channel, pfv_rx, pfv_tx, EffectiveChannel, PhaseConfig};
pub use waterfill::{water_fill, WaterFillResult};

//! Shared fixtures for the criterion benches.

use polarform::channel::{generate, ChannelParams, PolarizedChannel};
use polarform::matkit::{CMatrix, GaussianSource};

pub fn fixture_channel(m_rx: usize, n_tx: usize, seed: u64) -> PolarizedChannel {
    generate(&ChannelParams::new(m_rx, n_tx, 0.2), &mut GaussianSource::new(seed)).expect("valid parameters")
}

pub fn fixture_matrix(rows: usize, cols: usize, seed: u64) -> CMatrix {
    GaussianSource::new(seed)
        .sample_cscg(rows, cols, 1.0)
        .expect("unit variance")
}

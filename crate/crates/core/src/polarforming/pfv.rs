use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::channel::PolarizedChannel;
use crate::error::{Error, Result};
use crate::matkit::{wrap_phase, CMatrix, Vec2};

/// Transmit polarforming vector `(1/sqrt 2) [1, e^{j theta}]`, unit norm.
#[inline]
pub fn pfv_tx(theta: f64) -> Vec2 {
    [
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::from_polar(FRAC_1_SQRT_2, theta),
    ]
}

/// Receive polarforming vector `[1, e^{j phi}]`, squared norm 2.
#[inline]
pub fn pfv_rx(phi: f64) -> Vec2 {
    [Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, phi)]
}

/// Per-antenna phase shifts: `theta` at the `N` transmit antennas and `phi`
/// at the `M` receive antennas, each held in `[0, 2pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig {
    theta: Vec<f64>,
    phi: Vec<f64>,
}

impl PhaseConfig {
    pub fn new(theta: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        if theta.iter().chain(&phi).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("phase shifts must be finite".into()));
        }
        Ok(PhaseConfig {
            theta: theta.into_iter().map(wrap_phase).collect(),
            phi: phi.into_iter().map(wrap_phase).collect(),
        })
    }

    /// All-zero phases, i.e. every antenna at +45 degree linear polarization.
    pub fn zeros(m_rx: usize, n_tx: usize) -> Self {
        PhaseConfig {
            theta: vec![0.0; n_tx],
            phi: vec![0.0; m_rx],
        }
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub(crate) fn set_theta(&mut self, n: usize, x: f64) {
        self.theta[n] = wrap_phase(x);
    }

    pub(crate) fn set_phi(&mut self, m: usize, x: f64) {
        self.phi[m] = wrap_phase(x);
    }

    pub fn tx_vectors(&self) -> Vec<Vec2> {
        self.theta.iter().map(|&t| pfv_tx(t)).collect()
    }

    pub fn rx_vectors(&self) -> Vec<Vec2> {
        self.phi.iter().map(|&p| pfv_rx(p)).collect()
    }
}

/// `M x N` channel seen by the RF chains.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveChannel {
    pub h: CMatrix,
}

pub fn effective_channel(p: &PolarizedChannel, cfg: &PhaseConfig) -> Result<EffectiveChannel> {
    if cfg.theta.len() != p.n_tx() || cfg.phi.len() != p.m_rx() {
        return Err(Error::InvalidInput(format!(
            "phase config is {}rx x {}tx but channel is {}x{}",
            cfg.phi.len(),
            cfg.theta.len(),
            p.m_rx(),
            p.n_tx()
        )));
    }
    let h = assemble(p, &cfg.rx_vectors(), &cfg.tx_vectors())?;
    Ok(EffectiveChannel { h })
}

/// Entry `(m, n)` is `rx[m]^H P_mn tx[n]`: any per-antenna polarization
/// vectors, not only polarforming ones.
pub fn assemble(p: &PolarizedChannel, rx: &[Vec2], tx: &[Vec2]) -> Result<CMatrix> {
    if rx.len() != p.m_rx() || tx.len() != p.n_tx() {
        return Err(Error::InvalidInput(format!(
            "{} receive / {} transmit vectors for a {}x{} channel",
            rx.len(),
            tx.len(),
            p.m_rx(),
            p.n_tx()
        )));
    }
    Ok(CMatrix::from_fn(p.m_rx(), p.n_tx(), |m, n| {
        let y = p.block(m, n).mul_vec(&tx[n]);
        rx[m][0].conj() * y[0] + rx[m][1].conj() * y[1]
    }))
}

//! Alternating phase optimization.
//!
//! With one antenna on either side the capacity is `log2(1 + snr ||h||^2)`,
//! so alternating exact maximization of `||h||^2` over the single-antenna
//! phase and the array phases is monotone in capacity. With arrays on both
//! sides the phases instead climb the trace bound `Tr(H H^H)` one antenna at
//! a time, and capacity is re-evaluated by water-filling after every sweep;
//! since that is not monotone in capacity, a sweep that fails to raise
//! capacity by the relative threshold is rolled back.

use crate::channel::PolarizedChannel;
use crate::error::{Error, Result};
use crate::matkit::{gram_trace, CMatrix, Vec2};

use super::capacity::mimo_capacity;
use super::kernel::{argmax_unchecked, coordinate_sweep, receive_form, transmit_form};
use super::pfv::{effective_channel, pfv_rx, pfv_tx, PhaseConfig};

/// Relative capacity increase below which iteration stops.
pub const DEFAULT_EPSILON: f64 = 1e-3;
pub const DEFAULT_MAX_ITERATIONS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternatingOptions {
    pub epsilon: f64,
    pub max_iterations: usize,
}

impl Default for AlternatingOptions {
    fn default() -> Self {
        AlternatingOptions {
            epsilon: DEFAULT_EPSILON,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub config: PhaseConfig,
    /// Transmit covariance `Q`, `N x N`.
    pub covariance: CMatrix,
    pub rate_bits: f64,
    /// Capacity at the all-zero start followed by each accepted iterate;
    /// the last entry equals `rate_bits`.
    pub trace: Vec<f64>,
    /// Iterations executed, including a final rejected one.
    pub iterations: usize,
}

/// `(C_new - C_old) / max(C_old, 1e-12)`.
pub fn relative_increase(old: f64, new: f64) -> f64 {
    (new - old) / old.max(1e-12)
}

/// Alternating optimization for links with a single antenna on at least
/// one side (SISO, MISO, SIMO).
pub fn optimize_miso_simo(p: &PolarizedChannel, snr_linear: f64) -> Result<OptimizeResult> {
    optimize_miso_simo_with(p, snr_linear, AlternatingOptions::default())
}

pub fn optimize_miso_simo_with(
    p: &PolarizedChannel,
    snr_linear: f64,
    opts: AlternatingOptions,
) -> Result<OptimizeResult> {
    check_snr(snr_linear)?;
    if p.m_rx() == 1 {
        miso(p, snr_linear, opts)
    } else if p.n_tx() == 1 {
        // Reciprocity: the SIMO problem is the MISO problem on the reverse
        // link, with the roles of the transmit and receive phases exchanged.
        let r = miso(&p.reverse(), snr_linear, opts)?;
        let config = PhaseConfig::new(r.config.phi().to_vec(), r.config.theta().to_vec())?;
        Ok(OptimizeResult {
            config,
            covariance: CMatrix::from_diag(&[snr_linear]),
            ..r
        })
    } else {
        Err(Error::Unsupported(format!(
            "single-antenna alternation needs M = 1 or N = 1, got {}x{}",
            p.m_rx(),
            p.n_tx()
        )))
    }
}

fn miso(p: &PolarizedChannel, snr: f64, opts: AlternatingOptions) -> Result<OptimizeResult> {
    let n_tx = p.n_tx();
    let mut phi = 0.0;
    let mut theta = vec![0.0; n_tx];
    let mut tx: Vec<Vec2> = theta.iter().map(|&t| pfv_tx(t)).collect();

    let rate = |phi: f64, tx: &[Vec2]| -> f64 {
        let g = pfv_rx(phi);
        let gain: f64 = (0..n_tx)
            .map(|n| {
                let y = p.block(0, n).mul_vec(&tx[n]);
                (g[0].conj() * y[0] + g[1].conj() * y[1]).norm_sqr()
            })
            .sum();
        (1.0 + snr * gain).log2()
    };

    let mut trace = vec![rate(phi, &tx)];
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        iterations += 1;
        phi = argmax_unchecked(receive_form(p, 0, &tx).at(1, 0));
        let g = [pfv_rx(phi)];
        for n in 0..n_tx {
            theta[n] = argmax_unchecked(transmit_form(p, n, &g).at(1, 0));
            tx[n] = pfv_tx(theta[n]);
        }
        let c = rate(phi, &tx);
        let prev = *trace.last().unwrap();
        trace.push(c);
        if relative_increase(prev, c) < opts.epsilon {
            break;
        }
    }

    let config = PhaseConfig::new(theta, vec![phi])?;
    let h = effective_channel(p, &config)?.h;
    let rate_bits = *trace.last().unwrap();
    Ok(OptimizeResult {
        covariance: mrt_covariance(&h, snr),
        config,
        rate_bits,
        trace,
        iterations,
    })
}

/// `Q = P_t h h^H / ||h||^2` for the `1 x N` channel row `h^H`.
fn mrt_covariance(row: &CMatrix, p_total: f64) -> CMatrix {
    let n = row.cols();
    let norm2: f64 = row.as_slice().iter().map(|z| z.norm_sqr()).sum();
    if norm2 == 0.0 {
        return CMatrix::zeros(n, n);
    }
    let k = p_total / norm2;
    CMatrix::from_fn(n, n, |i, j| row[(0, i)].conj() * row[(0, j)] * k)
}

/// Alternating optimization for general `M x N` links, climbing the trace
/// bound with per-antenna closed-form updates and SVD/water-filling
/// covariance.
pub fn optimize_mimo(p: &PolarizedChannel, snr_linear: f64) -> Result<OptimizeResult> {
    optimize_mimo_with(p, snr_linear, AlternatingOptions::default())
}

pub fn optimize_mimo_with(p: &PolarizedChannel, snr_linear: f64, opts: AlternatingOptions) -> Result<OptimizeResult> {
    check_snr(snr_linear)?;
    let mut cfg = PhaseConfig::zeros(p.m_rx(), p.n_tx());
    let first = mimo_capacity(&effective_channel(p, &cfg)?.h, snr_linear, 1.0)?;
    let mut best = (cfg.clone(), first.covariance, first.capacity_bits);
    let mut trace = vec![first.capacity_bits];
    let mut iterations = 0;

    while iterations < opts.max_iterations {
        iterations += 1;
        coordinate_sweep(p, &mut cfg, |_| {});
        let cand = mimo_capacity(&effective_channel(p, &cfg)?.h, snr_linear, 1.0)?;
        if relative_increase(best.2, cand.capacity_bits) < opts.epsilon {
            break;
        }
        trace.push(cand.capacity_bits);
        best = (cfg.clone(), cand.covariance, cand.capacity_bits);
    }

    let (config, covariance, rate_bits) = best;
    Ok(OptimizeResult {
        config,
        covariance,
        rate_bits,
        trace,
        iterations,
    })
}

/// Dispatches to the single-antenna alternation when `min(M, N) = 1` and to
/// the general scheme otherwise.
pub fn optimize(p: &PolarizedChannel, snr_linear: f64) -> Result<OptimizeResult> {
    if p.m_rx() == 1 || p.n_tx() == 1 {
        optimize_miso_simo(p, snr_linear)
    } else {
        optimize_mimo(p, snr_linear)
    }
}

/// Objective of the trace-bound problem, `Tr(H H^H)`, at a configuration.
pub fn trace_objective(p: &PolarizedChannel, cfg: &PhaseConfig) -> Result<f64> {
    gram_trace(&effective_channel(p, cfg)?.h)
}

fn check_snr(snr: f64) -> Result<()> {
    if snr > 0.0 && snr.is_finite() {
        Ok(())
    } else {
        Err(Error::param("snr_linear", snr, "must be positive and finite"))
    }
}

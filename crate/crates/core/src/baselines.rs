//! Benchmark antenna schemes evaluated on the same polarized channels as
//! polarforming.
//!
//! * DPA: dual-polarized antennas, one RF chain per element, so the full
//!   `2M x 2N` channel is used with per-chain receiver noise.
//! * SPRA: switchable antennas choosing between left- and right-hand
//!   circular polarization.
//! * PAA: polarization-agile antennas with a continuously rotatable linear
//!   polarization `[cos a, sin a]`.
//! * CPA / LPA: fixed left-hand circular / vertical polarization.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::PolarizedChannel;
use crate::error::{Error, Result};
use crate::matkit::{CMatrix, Mat2, Vec2};
use crate::polarforming::{
    assemble, capacity_bits, optimize, optimize_single_sided, receive_form, relative_increase, single_sided_vectors,
    transmit_form, FixedEnd, DEFAULT_EPSILON, DEFAULT_MAX_ITERATIONS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SchemeId {
    Polarforming,
    Dpa,
    Spra,
    Paa,
    Cpa,
    Lpa,
}

impl SchemeId {
    pub const ALL: [SchemeId; 6] = [
        SchemeId::Polarforming,
        SchemeId::Dpa,
        SchemeId::Spra,
        SchemeId::Paa,
        SchemeId::Cpa,
        SchemeId::Lpa,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeId::Polarforming => "POLARFORMING",
            SchemeId::Dpa => "DPA",
            SchemeId::Spra => "SPRA",
            SchemeId::Paa => "PAA",
            SchemeId::Cpa => "CPA",
            SchemeId::Lpa => "LPA",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown scheme `{s}`")))
    }
}

/// Polarization vectors applied at every transmit and every receive antenna.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationVectorPair {
    p_tx: Vec2,
    p_rx: Vec2,
}

impl PolarizationVectorPair {
    /// `p_tx` must have unit norm; `p_rx` is used as given.
    pub fn new(p_tx: Vec2, p_rx: Vec2) -> Result<Self> {
        let n = p_tx[0].norm_sqr() + p_tx[1].norm_sqr();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "transmit polarization vector has squared norm {n}, expected 1"
            )));
        }
        Ok(PolarizationVectorPair { p_tx, p_rx })
    }

    /// Left-hand circular at both ends.
    pub fn cpa() -> Self {
        PolarizationVectorPair {
            p_tx: lhcp_tx(),
            p_rx: lhcp_rx(),
        }
    }

    /// Vertical at both ends.
    pub fn lpa() -> Self {
        PolarizationVectorPair {
            p_tx: linear(0.0),
            p_rx: linear(0.0),
        }
    }

    pub fn p_tx(&self) -> Vec2 {
        self.p_tx
    }

    pub fn p_rx(&self) -> Vec2 {
        self.p_rx
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn lhcp_tx() -> Vec2 {
    [c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)]
}

pub fn rhcp_tx() -> Vec2 {
    [c(FRAC_1_SQRT_2, 0.0), c(0.0, -FRAC_1_SQRT_2)]
}

pub fn lhcp_rx() -> Vec2 {
    [c(1.0, 0.0), c(0.0, 1.0)]
}

pub fn rhcp_rx() -> Vec2 {
    [c(1.0, 0.0), c(0.0, -1.0)]
}

/// Linear polarization at angle `a` from vertical.
pub fn linear(a: f64) -> Vec2 {
    [c(a.cos(), 0.0), c(a.sin(), 0.0)]
}

/// Full `2M x 2N` channel with water-filling over all element streams.
pub fn dpa_capacity(p: &PolarizedChannel, p_total: f64, noise: f64) -> Result<f64> {
    capacity_bits(&p.to_cmatrix(), p_total, noise)
}

/// Same fixed polarization at every antenna.
pub fn fpa_rate(p: &PolarizedChannel, pair: &PolarizationVectorPair, p_total: f64, noise: f64) -> Result<f64> {
    PolarizationVectorPair::new(pair.p_tx, pair.p_rx)?;
    let h = assemble(p, &vec![pair.p_rx; p.m_rx()], &vec![pair.p_tx; p.n_tx()])?;
    capacity_bits(&h, p_total, noise)
}

/// Above this many antennas in total SPRA falls back to coordinate ascent.
pub const SPRA_EXHAUSTIVE_LIMIT: usize = 12;
const SPRA_MAX_SWEEPS: usize = 20;

/// Per-antenna SPRA selection; `false` is left-hand, `true` right-hand circular.
#[derive(Debug, Clone, PartialEq)]
pub struct SpraResult {
    pub rx_states: Vec<bool>,
    pub tx_states: Vec<bool>,
    pub capacity_bits: f64,
}

/// Effective gains for the four (receive state, transmit state) combinations
/// of each antenna pair, so state searches only gather entries.
struct SpraTable {
    m_rx: usize,
    n_tx: usize,
    gains: Vec<[Complex64; 4]>,
}

impl SpraTable {
    fn new(p: &PolarizedChannel) -> Self {
        let rx = [lhcp_rx(), rhcp_rx()];
        let tx = [lhcp_tx(), rhcp_tx()];
        let gains = p
            .blocks()
            .iter()
            .map(|b| {
                let mut g = [Complex64::new(0.0, 0.0); 4];
                for (sr, r) in rx.iter().enumerate() {
                    for (st, t) in tx.iter().enumerate() {
                        let y = b.mul_vec(t);
                        g[2 * sr + st] = r[0].conj() * y[0] + r[1].conj() * y[1];
                    }
                }
                g
            })
            .collect();
        SpraTable {
            m_rx: p.m_rx(),
            n_tx: p.n_tx(),
            gains,
        }
    }

    fn channel(&self, rx: &[bool], tx: &[bool]) -> CMatrix {
        CMatrix::from_fn(self.m_rx, self.n_tx, |m, n| {
            self.gains[m * self.n_tx + n][2 * rx[m] as usize + tx[n] as usize]
        })
    }

    fn capacity(&self, rx: &[bool], tx: &[bool], p_total: f64, noise: f64) -> Result<f64> {
        capacity_bits(&self.channel(rx, tx), p_total, noise)
    }
}

pub fn spra_optimize(p: &PolarizedChannel, p_total: f64, noise: f64) -> Result<SpraResult> {
    if p.m_rx() + p.n_tx() <= SPRA_EXHAUSTIVE_LIMIT {
        spra_exhaustive(p, p_total, noise)
    } else {
        spra_coordinate_ascent(p, p_total, noise)
    }
}

/// Best of all `2^(M+N)` state combinations; ties keep the earliest.
pub fn spra_exhaustive(p: &PolarizedChannel, p_total: f64, noise: f64) -> Result<SpraResult> {
    let (m_rx, n_tx) = (p.m_rx(), p.n_tx());
    if m_rx + n_tx > 30 {
        return Err(Error::Unsupported(format!(
            "exhaustive SPRA search over {} antennas",
            m_rx + n_tx
        )));
    }
    let table = SpraTable::new(p);
    let mut rx = vec![false; m_rx];
    let mut tx = vec![false; n_tx];
    let mut best: Option<SpraResult> = None;
    for mask in 0u32..(1u32 << (m_rx + n_tx)) {
        for (i, s) in rx.iter_mut().enumerate() {
            *s = mask >> i & 1 == 1;
        }
        for (i, s) in tx.iter_mut().enumerate() {
            *s = mask >> (m_rx + i) & 1 == 1;
        }
        let cap = table.capacity(&rx, &tx, p_total, noise)?;
        if best.as_ref().is_none_or(|b| cap > b.capacity_bits) {
            best = Some(SpraResult {
                rx_states: rx.clone(),
                tx_states: tx.clone(),
                capacity_bits: cap,
            });
        }
    }
    Ok(best.expect("at least one state combination"))
}

/// Single-antenna flips from the all-left-hand start, receive antennas
/// first, until a full sweep changes nothing.
pub fn spra_coordinate_ascent(p: &PolarizedChannel, p_total: f64, noise: f64) -> Result<SpraResult> {
    let table = SpraTable::new(p);
    let mut rx = vec![false; p.m_rx()];
    let mut tx = vec![false; p.n_tx()];
    let mut cap = table.capacity(&rx, &tx, p_total, noise)?;
    for _ in 0..SPRA_MAX_SWEEPS {
        let mut flipped = false;
        for i in 0..rx.len() + tx.len() {
            let slot = if i < rx.len() {
                &mut rx[i]
            } else {
                &mut tx[i - rx.len()]
            };
            *slot = !*slot;
            let trial = table.capacity(&rx, &tx, p_total, noise)?;
            if trial > cap {
                cap = trial;
                flipped = true;
            } else {
                let slot = if i < rx.len() {
                    &mut rx[i]
                } else {
                    &mut tx[i - rx.len()]
                };
                *slot = !*slot;
            }
        }
        if !flipped {
            break;
        }
    }
    Ok(SpraResult {
        rx_states: rx,
        tx_states: tx,
        capacity_bits: cap,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaaResult {
    /// Transmit polarization angles, `[0, pi)`.
    pub alpha: Vec<f64>,
    /// Receive polarization angles, `[0, pi)`.
    pub beta: Vec<f64>,
    pub capacity_bits: f64,
    pub iterations: usize,
}

/// Angle in `[0, pi)` maximizing `[cos a, sin a] Re(W) [cos a, sin a]^T`.
///
/// With `Re(W) = [[a, c], [c, d]]` the form is
/// `(a + d)/2 + (a - d)/2 cos 2x + c sin 2x`.
pub fn paa_angle(w: &Mat2) -> f64 {
    let a = w.at(0, 0).re;
    let d = w.at(1, 1).re;
    let cr = w.at(1, 0).re;
    let x = 0.5 * (2.0 * cr).atan2(a - d);
    if x < 0.0 {
        x + PI
    } else {
        x
    }
}

/// Alternating closed-form angle updates from the vertical start, climbing
/// the same trace bound as polarforming, with the same stop-and-roll-back
/// rule on capacity.
pub fn paa_optimize(p: &PolarizedChannel, p_total: f64, noise: f64) -> Result<PaaResult> {
    let mut alpha = vec![0.0; p.n_tx()];
    let mut beta = vec![0.0; p.m_rx()];
    let eval = |alpha: &[f64], beta: &[f64]| -> Result<f64> {
        let rx: Vec<Vec2> = beta.iter().map(|&b| linear(b)).collect();
        let tx: Vec<Vec2> = alpha.iter().map(|&a| linear(a)).collect();
        capacity_bits(&assemble(p, &rx, &tx)?, p_total, noise)
    };
    let mut best = (alpha.clone(), beta.clone(), eval(&alpha, &beta)?);
    let mut iterations = 0;
    while iterations < DEFAULT_MAX_ITERATIONS {
        iterations += 1;
        let tx: Vec<Vec2> = alpha.iter().map(|&a| linear(a)).collect();
        for (m, b) in beta.iter_mut().enumerate() {
            *b = paa_angle(&receive_form(p, m, &tx));
        }
        let rx: Vec<Vec2> = beta.iter().map(|&b| linear(b)).collect();
        for (n, a) in alpha.iter_mut().enumerate() {
            *a = paa_angle(&transmit_form(p, n, &rx));
        }
        let cap = eval(&alpha, &beta)?;
        if relative_increase(best.2, cap) < DEFAULT_EPSILON {
            break;
        }
        best = (alpha.clone(), beta.clone(), cap);
    }
    Ok(PaaResult {
        alpha: best.0,
        beta: best.1,
        capacity_bits: best.2,
        iterations,
    })
}

/// Rate of `scheme` with both link ends free, at `snr = P_t / noise` with
/// unit noise.
pub fn evaluate(scheme: SchemeId, p: &PolarizedChannel, snr_linear: f64) -> Result<f64> {
    match scheme {
        SchemeId::Polarforming => Ok(optimize(p, snr_linear)?.rate_bits),
        SchemeId::Dpa => dpa_capacity(p, snr_linear, 1.0),
        SchemeId::Spra => Ok(spra_optimize(p, snr_linear, 1.0)?.capacity_bits),
        SchemeId::Paa => Ok(paa_optimize(p, snr_linear, 1.0)?.capacity_bits),
        SchemeId::Cpa => fpa_rate(p, &PolarizationVectorPair::cpa(), snr_linear, 1.0),
        SchemeId::Lpa => fpa_rate(p, &PolarizationVectorPair::lpa(), snr_linear, 1.0),
    }
}

/// Rate of `scheme` applied only at the side opposite a fixed single antenna.
///
/// Each adjustable antenna then contributes an independent term to the
/// channel power, so every scheme's per-antenna choice is optimal on its own.
pub fn evaluate_single_sided(scheme: SchemeId, p: &PolarizedChannel, fixed: &FixedEnd, snr_linear: f64) -> Result<f64> {
    let count = match fixed {
        FixedEnd::Receiver(_) => p.n_tx(),
        FixedEnd::Transmitter(_) => p.m_rx(),
    };
    let form = |k: usize| match fixed {
        FixedEnd::Receiver(g) => transmit_form(p, k, std::slice::from_ref(g)),
        FixedEnd::Transmitter(f) => receive_form(p, k, std::slice::from_ref(f)),
    };
    let is_tx = matches!(fixed, FixedEnd::Receiver(_));
    let adjustable: Vec<Vec2> = match scheme {
        SchemeId::Polarforming => {
            let phases = optimize_single_sided(p, fixed)?;
            let (rx, tx) = single_sided_vectors(fixed, &phases);
            return capacity_bits(&assemble(p, &rx, &tx)?, snr_linear, 1.0);
        }
        SchemeId::Dpa => {
            return Err(Error::Unsupported("DPA has no single-sided variant".into()));
        }
        SchemeId::Spra => (0..count)
            .map(|k| {
                let w = form(k);
                let (l, r) = if is_tx {
                    (lhcp_tx(), rhcp_tx())
                } else {
                    (lhcp_rx(), rhcp_rx())
                };
                if quad(&w, &r) > quad(&w, &l) {
                    r
                } else {
                    l
                }
            })
            .collect(),
        SchemeId::Paa => (0..count).map(|k| linear(paa_angle(&form(k)))).collect(),
        SchemeId::Cpa => vec![if is_tx { lhcp_tx() } else { lhcp_rx() }; count],
        SchemeId::Lpa => vec![linear(0.0); count],
    };
    let (rx, tx) = match fixed {
        FixedEnd::Receiver(g) => (vec![*g], adjustable),
        FixedEnd::Transmitter(f) => (adjustable, vec![*f]),
    };
    capacity_bits(&assemble(p, &rx, &tx)?, snr_linear, 1.0)
}

/// `x^H W x`, real for Hermitian `W`.
fn quad(w: &Mat2, x: &Vec2) -> f64 {
    let y = w.mul_vec(x);
    (x[0].conj() * y[0] + x[1].conj() * y[1]).re
}

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::baselines::{lhcp_rx, lhcp_tx, linear, SchemeId};
use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::matkit::Vec2;
use crate::polarforming::FixedEnd;

pub const DEFAULT_REALIZATIONS: usize = 10_000;
pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_CHI: f64 = 0.2;
pub const DEFAULT_SNR_DB: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    SnrDb,
    /// `M = N = value`.
    NAntennas,
    Chi,
    /// `mu_t = mu_r = value`.
    Mu,
    /// `nu_t = nu_r = value` (real, non-negative).
    NuMagnitude,
    /// Optimizer iteration index; only produced by convergence runs.
    Iteration,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::SnrDb => "snr_db",
            SweepAxis::NAntennas => "n_antennas",
            SweepAxis::Chi => "chi",
            SweepAxis::Mu => "mu",
            SweepAxis::NuMagnitude => "nu_magnitude",
            SweepAxis::Iteration => "iteration",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SweepAxis::SnrDb,
            SweepAxis::NAntennas,
            SweepAxis::Chi,
            SweepAxis::Mu,
            SweepAxis::NuMagnitude,
            SweepAxis::Iteration,
        ]
        .into_iter()
        .find(|a| a.as_str() == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown sweep axis `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

/// Polarization of a fixed single antenna in the single-sided experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FixedAntenna {
    Lpa,
    Cpa,
}

impl FixedAntenna {
    fn rx_vector(self) -> Vec2 {
        match self {
            FixedAntenna::Lpa => linear(0.0),
            FixedAntenna::Cpa => lhcp_rx(),
        }
    }

    fn tx_vector(self) -> Vec2 {
        match self {
            FixedAntenna::Lpa => linear(0.0),
            FixedAntenna::Cpa => lhcp_tx(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    /// Every scheme adapts at both link ends.
    TwoSided,
    /// Schemes act at the transmitter only; one fixed receive antenna.
    TransmitSide { receiver: FixedAntenna },
    /// Schemes act at the receiver only; one fixed transmit antenna.
    ReceiveSide { transmitter: FixedAntenna },
    /// Per-iteration rate of the polarforming optimizer.
    Convergence,
}

impl Mode {
    pub(crate) fn fixed_end(&self) -> Option<FixedEnd> {
        match *self {
            Mode::TransmitSide { receiver } => Some(FixedEnd::Receiver(receiver.rx_vector())),
            Mode::ReceiveSide { transmitter } => Some(FixedEnd::Transmitter(transmitter.tx_vector())),
            _ => None,
        }
    }
}

/// One panel of a Monte-Carlo sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Label written to the `experiment` CSV column.
    pub experiment_id: String,
    pub schemes: Vec<SchemeId>,
    pub sweep: Sweep,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    pub m_rx: usize,
    pub n_tx: usize,
    #[serde(default = "default_snr")]
    pub snr_db: f64,
    #[serde(default = "default_chi")]
    pub chi: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default)]
    pub nu: f64,
    #[serde(default = "default_realizations")]
    pub realizations: usize,
    #[serde(default = "default_seed")]
    pub master_seed: u64,
}

fn default_mode() -> Mode {
    Mode::TwoSided
}
fn default_snr() -> f64 {
    DEFAULT_SNR_DB
}
fn default_chi() -> f64 {
    DEFAULT_CHI
}
fn default_realizations() -> usize {
    DEFAULT_REALIZATIONS
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// Operating point of one sweep value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub channel: ChannelParams,
    pub snr_linear: f64,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

impl ExperimentConfig {
    pub fn new(experiment_id: impl Into<String>, schemes: Vec<SchemeId>, axis: SweepAxis, values: Vec<f64>) -> Self {
        ExperimentConfig {
            experiment_id: experiment_id.into(),
            schemes,
            sweep: Sweep { axis, values },
            mode: Mode::TwoSided,
            m_rx: 2,
            n_tx: 2,
            snr_db: DEFAULT_SNR_DB,
            chi: DEFAULT_CHI,
            mu: 0.0,
            nu: 0.0,
            realizations: DEFAULT_REALIZATIONS,
            master_seed: DEFAULT_SEED,
        }
    }

    pub fn antennas(mut self, m_rx: usize, n_tx: usize) -> Self {
        self.m_rx = m_rx;
        self.n_tx = n_tx;
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Operating point with no sweep value applied.
    pub fn base_point(&self) -> SweepPoint {
        let mut ch = ChannelParams::new(self.m_rx, self.n_tx, self.chi);
        ch.mu_t = self.mu;
        ch.mu_r = self.mu;
        ch.nu_t = Complex64::new(self.nu, 0.0);
        ch.nu_r = ch.nu_t;
        SweepPoint {
            channel: ch,
            snr_linear: db_to_linear(self.snr_db),
        }
    }

    pub fn point(&self, value: f64) -> SweepPoint {
        let SweepPoint {
            channel: mut ch,
            mut snr_linear,
        } = self.base_point();
        match self.sweep.axis {
            SweepAxis::SnrDb => snr_linear = db_to_linear(value),
            SweepAxis::NAntennas => {
                ch.m_rx = value as usize;
                ch.n_tx = value as usize;
            }
            SweepAxis::Chi => ch.chi = value,
            SweepAxis::Mu => {
                ch.mu_t = value;
                ch.mu_r = value;
            }
            SweepAxis::NuMagnitude => {
                ch.nu_t = Complex64::new(value, 0.0);
                ch.nu_r = ch.nu_t;
            }
            SweepAxis::Iteration => {}
        }
        SweepPoint {
            channel: ch,
            snr_linear,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.experiment_id.is_empty() || self.experiment_id.contains([',', '"', '\n', '\r']) {
            return Err(Error::config(
                "experiment_id",
                "must be non-empty without commas, quotes or newlines",
            ));
        }
        if self.realizations == 0 {
            return Err(Error::config("realizations", "must be at least 1"));
        }
        if self.schemes.is_empty() {
            return Err(Error::config("schemes", "at least one scheme is required"));
        }
        if !self.snr_db.is_finite() {
            return Err(Error::config("snr_db", "must be finite"));
        }
        match self.mode {
            Mode::Convergence => {
                if self.schemes != [SchemeId::Polarforming] {
                    return Err(Error::config("schemes", "convergence runs take exactly POLARFORMING"));
                }
            }
            Mode::TransmitSide { .. } | Mode::ReceiveSide { .. } => {
                if self.schemes.contains(&SchemeId::Dpa) {
                    return Err(Error::config("schemes", "DPA has no single-sided variant"));
                }
            }
            Mode::TwoSided => {}
        }
        if self.mode != Mode::Convergence {
            if self.sweep.values.is_empty() {
                return Err(Error::config("sweep.values", "must not be empty"));
            }
            if self.sweep.axis == SweepAxis::Iteration {
                return Err(Error::config(
                    "sweep.axis",
                    "iteration is only produced by convergence runs",
                ));
            }
        }
        for &v in &self.sweep.values {
            if !v.is_finite() {
                return Err(Error::config("sweep.values", format!("non-finite value {v}")));
            }
            if self.sweep.axis == SweepAxis::NAntennas && (v < 1.0 || v.fract() != 0.0) {
                return Err(Error::config(
                    "sweep.values",
                    format!("antenna count {v} is not a positive integer"),
                ));
            }
            let pt = self.point(v);
            self.check_point(&pt)?;
        }
        if self.mode == Mode::Convergence || self.sweep.values.is_empty() {
            self.check_point(&self.base_point())?;
        }
        Ok(())
    }

    fn check_point(&self, pt: &SweepPoint) -> Result<()> {
        pt.channel.validate().map_err(|e| match e {
            Error::InvalidParameter { name, value, reason } => Error::config(name, format!("value {value} {reason}")),
            other => Error::config("channel", other.to_string()),
        })?;
        let (m, n) = (pt.channel.m_rx, pt.channel.n_tx);
        match self.mode {
            Mode::TransmitSide { .. } if m != 1 => {
                Err(Error::config("m_rx", "transmit-side runs need one receive antenna"))
            }
            Mode::ReceiveSide { .. } if n != 1 => {
                Err(Error::config("n_tx", "receive-side runs need one transmit antenna"))
            }
            _ => Ok(()),
        }
    }

    /// Applies a flat `key=value` override.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.trim()
                .parse()
                .map_err(|_| Error::config(key, format!("cannot parse `{v}`")))
        }
        match key {
            "realizations" => self.realizations = num(key, value)?,
            "seed" | "master_seed" => self.master_seed = num(key, value)?,
            "m" | "m_rx" => self.m_rx = num(key, value)?,
            "n" | "n_tx" => self.n_tx = num(key, value)?,
            "snr_db" => self.snr_db = num(key, value)?,
            "chi" => self.chi = num(key, value)?,
            "mu" => self.mu = num(key, value)?,
            "nu" => self.nu = num(key, value)?,
            "sweep" | "sweep.values" => {
                self.sweep.values = value
                    .split([',', ' ', ';'])
                    .filter(|s| !s.is_empty())
                    .map(|s| num(key, s))
                    .collect::<Result<_>>()?
            }
            "sweep.axis" | "axis" => {
                self.sweep.axis = value
                    .parse()
                    .map_err(|_| Error::config(key, format!("unknown axis `{value}`")))?
            }
            "schemes" => {
                self.schemes = value
                    .split([',', ' ', ';'])
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse()
                            .map_err(|_| Error::config(key, format!("unknown scheme `{s}`")))
                    })
                    .collect::<Result<_>>()?
            }
            _ => return Err(Error::config(key, "unknown override key")),
        }
        Ok(())
    }
}

/// Evenly spaced grid `start, start + step, ...` up to and including `end`,
/// rounded to suppress accumulated floating-point drift.
pub fn grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|i| {
            let v = start + step * i as f64;
            (v * 1e9).round() / 1e9
        })
        .collect()
}

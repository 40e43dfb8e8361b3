use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaterFillResult {
    /// Power per stream, aligned with the input singular values.
    pub powers: Vec<f64>,
    /// `1 / p0`.
    pub water_level: f64,
    /// Streams allocated zero power.
    pub inactive_count: usize,
    pub capacity_bits: f64,
}

impl WaterFillResult {
    pub fn active_count(&self) -> usize {
        self.powers.len() - self.inactive_count
    }
}

/// Capacity-optimal power split `p_s = max(0, level - noise / lambda_s^2)`
/// with `sum p_s = p_total`.
///
/// The level is found by iterative deactivation: fill all streams, and while
/// the weakest active stream would get non-positive power, drop it and
/// re-solve for the level.
pub fn water_fill(singular_values: &[f64], p_total: f64, noise: f64) -> Result<WaterFillResult> {
    if singular_values.is_empty() {
        return Err(Error::InvalidInput("no singular values to fill".into()));
    }
    if !(p_total > 0.0 && p_total.is_finite()) {
        return Err(Error::param("p_total", p_total, "must be positive"));
    }
    if !(noise > 0.0 && noise.is_finite()) {
        return Err(Error::param("noise", noise, "must be positive"));
    }
    if singular_values.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
        return Err(Error::InvalidInput(
            "singular values must be finite and non-negative".into(),
        ));
    }
    if singular_values.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput("singular values must be sorted descending".into()));
    }
    if singular_values[0] == 0.0 {
        return Err(Error::InvalidInput("all singular values are zero".into()));
    }

    // Noise-to-gain ratio of each stream; zero singular values are never active.
    let floor: Vec<f64> = singular_values.iter().map(|&s| noise / (s * s)).collect();
    let mut active = singular_values.iter().take_while(|&&s| s > 0.0).count();
    let mut level;
    loop {
        level = (p_total + floor[..active].iter().sum::<f64>()) / active as f64;
        if level - floor[active - 1] > 0.0 || active == 1 {
            break;
        }
        active -= 1;
    }

    let powers: Vec<f64> = floor
        .iter()
        .enumerate()
        .map(|(s, &f)| if s < active { (level - f).max(0.0) } else { 0.0 })
        .collect();
    let capacity_bits = powers
        .iter()
        .zip(&floor)
        .filter(|(p, _)| **p > 0.0)
        .map(|(p, f)| (1.0 + p / f).log2())
        .sum();
    Ok(WaterFillResult {
        powers,
        water_level: level,
        inactive_count: singular_values.len() - active,
        capacity_bits,
    })
}

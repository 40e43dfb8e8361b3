use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matkit::{gram_trace, svd, CMatrix};

use super::waterfill::{water_fill, WaterFillResult};

#[derive(Debug, Clone)]
pub struct MimoCapacity {
    pub capacity_bits: f64,
    /// Optimal transmit covariance `V diag(p) V^H`.
    pub covariance: CMatrix,
    /// Truncated singular values of the channel.
    pub singular_values: Vec<f64>,
    /// `None` for an all-zero channel.
    pub water_fill: Option<WaterFillResult>,
}

/// Capacity of `h` under a sum-power budget with SVD precoding and
/// water-filling. An all-zero channel has capacity 0 and `Q = 0`.
pub fn mimo_capacity(h: &CMatrix, p_total: f64, noise: f64) -> Result<MimoCapacity> {
    let dec = svd(h)?;
    if dec.rank() == 0 {
        check_budget(p_total, noise)?;
        return Ok(MimoCapacity {
            capacity_bits: 0.0,
            covariance: CMatrix::zeros(h.cols(), h.cols()),
            singular_values: Vec::new(),
            water_fill: None,
        });
    }
    let wf = water_fill(&dec.singular_values, p_total, noise)?;
    let v = &dec.right_vectors;
    let n = h.cols();
    let covariance = CMatrix::from_fn(n, n, |i, j| {
        wf.powers
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .map(|(s, &p)| v[(i, s)] * p * v[(j, s)].conj())
            .sum::<Complex64>()
    });
    Ok(MimoCapacity {
        capacity_bits: wf.capacity_bits,
        covariance,
        singular_values: dec.singular_values,
        water_fill: Some(wf),
    })
}

/// Capacity only, skipping the covariance assembly.
pub fn capacity_bits(h: &CMatrix, p_total: f64, noise: f64) -> Result<f64> {
    let dec = svd(h)?;
    if dec.rank() == 0 {
        check_budget(p_total, noise)?;
        return Ok(0.0);
    }
    Ok(water_fill(&dec.singular_values, p_total, noise)?.capacity_bits)
}

fn check_budget(p_total: f64, noise: f64) -> Result<()> {
    if !(p_total > 0.0 && p_total.is_finite()) {
        return Err(Error::param("p_total", p_total, "must be positive"));
    }
    if !(noise > 0.0 && noise.is_finite()) {
        return Err(Error::param("noise", noise, "must be positive"));
    }
    Ok(())
}

/// Trace-based capacity upper bound
/// `S log2( Tr(H H^H) / (S p0 noise) + S_inactive / S )`, where `S` is the
/// number of streams in `wf` (the numerical rank of `h`).
pub fn capacity_upper_bound(h: &CMatrix, noise: f64, wf: &WaterFillResult) -> Result<f64> {
    if wf.powers.is_empty() {
        return Err(Error::InvalidInput("empty water-filling result".into()));
    }
    if noise.is_nan() || noise <= 0.0 {
        return Err(Error::param("noise", noise, "must be positive"));
    }
    let s = wf.powers.len() as f64;
    let trace = gram_trace(h)?;
    let ratio = trace * wf.water_level / (s * noise) + wf.inactive_count as f64 / s;
    Ok(s * ratio.log2())
}

use rayon::prelude::*;

use super::config::{ExperimentConfig, Mode, SweepAxis};
use crate::baselines::{evaluate, evaluate_single_sided, SchemeId};
use crate::channel::{generate, PolarizedChannel};
use crate::error::Result;
use crate::matkit::GaussianSource;
use crate::polarforming::optimize;

/// One aggregated point of a rate curve, i.e. one CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSample {
    pub experiment: String,
    pub scheme: SchemeId,
    pub sweep_axis: SweepAxis,
    pub sweep_value: f64,
    pub mean_rate_bits: f64,
    pub std_error: f64,
    pub realizations: usize,
    pub master_seed: u64,
}

/// Channel realization `index` of an experiment at a given sweep point;
/// a NaN sweep value selects the unswept base point.
///
/// The stream depends only on `(master_seed, index)`, so every sweep point
/// and every scheme sees the same underlying i.i.d. draws.
pub fn realization(cfg: &ExperimentConfig, sweep_value: f64, index: usize) -> Result<PolarizedChannel> {
    let pt = if sweep_value.is_nan() {
        cfg.base_point()
    } else {
        cfg.point(sweep_value)
    };
    let mut src = GaussianSource::child(cfg.master_seed, index as u64);
    generate(&pt.channel, &mut src)
}

/// Mean and standard error (sample deviation over `sqrt(n)`).
pub fn mean_and_std_error(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Per-realization rates at one sweep point, indexed `[scheme][realization]`.
pub fn rates_at(cfg: &ExperimentConfig, sweep_value: f64) -> Result<Vec<Vec<f64>>> {
    let pt = cfg.point(sweep_value);
    let fixed = cfg.mode.fixed_end();
    let rows: Vec<Vec<f64>> = (0..cfg.realizations)
        .into_par_iter()
        .map(|r| {
            let p = realization(cfg, sweep_value, r)?;
            cfg.schemes
                .iter()
                .map(|&s| match &fixed {
                    Some(f) => evaluate_single_sided(s, &p, f, pt.snr_linear),
                    None => evaluate(s, &p, pt.snr_linear),
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    Ok((0..cfg.schemes.len())
        .map(|s| rows.iter().map(|row| row[s]).collect())
        .collect())
}

/// Runs every sweep point and scheme. Rows come out sweep-major, then in
/// scheme order, and are identical for any thread count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RateSample>> {
    cfg.validate()?;
    if cfg.mode == Mode::Convergence {
        return convergence_samples(cfg);
    }
    let mut out = Vec::with_capacity(cfg.sweep.values.len() * cfg.schemes.len());
    for &v in &cfg.sweep.values {
        let per_scheme = rates_at(cfg, v)?;
        for (&scheme, xs) in cfg.schemes.iter().zip(&per_scheme) {
            let (mean, se) = mean_and_std_error(xs);
            out.push(RateSample {
                experiment: cfg.experiment_id.clone(),
                scheme,
                sweep_axis: cfg.sweep.axis,
                sweep_value: v,
                mean_rate_bits: mean,
                std_error: se,
                realizations: xs.len(),
                master_seed: cfg.master_seed,
            });
        }
    }
    Ok(out)
}

/// Per-realization optimizer traces at the configured operating point,
/// each starting at the all-zero phase configuration.
pub fn convergence_traces(cfg: &ExperimentConfig) -> Result<Vec<Vec<f64>>> {
    let pt = cfg.base_point();
    (0..cfg.realizations)
        .into_par_iter()
        .map(|r| {
            let p = realization(cfg, f64::NAN, r)?;
            Ok(optimize(&p, pt.snr_linear)?.trace)
        })
        .collect()
}

/// Mean rate per iteration. Traces that stop early are padded with their
/// final value up to the longest one.
pub fn convergence_trace(cfg: &ExperimentConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let traces = convergence_traces(cfg)?;
    Ok(padded_columns(&traces)
        .iter()
        .map(|c| mean_and_std_error(c).0)
        .collect())
}

fn padded_columns(traces: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let len = traces.iter().map(Vec::len).max().unwrap_or(0);
    (0..len)
        .map(|i| {
            traces
                .iter()
                .map(|t| *t.get(i).or(t.last()).expect("trace holds the start value"))
                .collect()
        })
        .collect()
}

fn convergence_samples(cfg: &ExperimentConfig) -> Result<Vec<RateSample>> {
    let traces = convergence_traces(cfg)?;
    Ok(padded_columns(&traces)
        .iter()
        .enumerate()
        .map(|(i, col)| {
            let (mean, se) = mean_and_std_error(col);
            RateSample {
                experiment: cfg.experiment_id.clone(),
                scheme: SchemeId::Polarforming,
                sweep_axis: SweepAxis::Iteration,
                sweep_value: i as f64,
                mean_rate_bits: mean,
                std_error: se,
                realizations: col.len(),
                master_seed: cfg.master_seed,
            }
        })
        .collect())
}

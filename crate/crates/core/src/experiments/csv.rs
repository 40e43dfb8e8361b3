//! Rate-curve CSV files consumed by the plotting scripts.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use super::runner::RateSample;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 8] = [
    "experiment",
    "scheme",
    "sweep_axis",
    "sweep_value",
    "mean_rate_bits",
    "std_error",
    "realizations",
    "master_seed",
];

/// Shortest `%.9g`-style rendering: nine significant digits, trailing
/// zeros trimmed, exponent form outside `[1e-4, 1e9)`.
pub fn format_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mant), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::Csv {
            path: path.to_path_buf(),
            reason: format!("{other:?}"),
        },
    }
}

pub fn write_csv(samples: &[RateSample], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file);
    w.write_record(CSV_HEADER).map_err(|e| csv_err(path, e))?;
    for s in samples {
        w.write_record([
            s.experiment.clone(),
            s.scheme.as_str().to_string(),
            s.sweep_axis.as_str().to_string(),
            format_g9(s.sweep_value),
            format_g9(s.mean_rate_bits),
            format_g9(s.std_error),
            s.realizations.to_string(),
            s.master_seed.to_string(),
        ])
        .map_err(|e| csv_err(path, e))?;
    }
    let mut file = w.into_inner().map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e.into_error(),
    })?;
    file.flush().map_err(io_err(path))
}

pub fn read_csv(path: &Path) -> Result<Vec<RateSample>> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut r = csv::Reader::from_reader(file);
    let header = r.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Csv {
            path: path.to_path_buf(),
            reason: format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()),
        });
    }
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let bad = |what: &str| Error::Csv {
            path: path.to_path_buf(),
            reason: format!("row {}: bad {what}", line + 1),
        };
        let f = |i: usize| -> Result<f64> { rec[i].parse().map_err(|_| bad(CSV_HEADER[i])) };
        out.push(RateSample {
            experiment: rec[0].to_string(),
            scheme: rec[1].parse().map_err(|_| bad("scheme"))?,
            sweep_axis: rec[2].parse().map_err(|_| bad("sweep_axis"))?,
            sweep_value: f(3)?,
            mean_rate_bits: f(4)?,
            std_error: f(5)?,
            realizations: rec[6].parse().map_err(|_| bad("realizations"))?,
            master_seed: rec[7].parse().map_err(|_| bad("master_seed"))?,
        });
    }
    Ok(out)
}

/// Convenience filter: `(sweep_value, mean_rate_bits)` pairs of one curve.
pub fn curve(samples: &[RateSample], experiment: Option<&str>, scheme: crate::baselines::SchemeId) -> Vec<(f64, f64)> {
    samples
        .iter()
        .filter(|s| s.scheme == scheme && experiment.is_none_or(|e| s.experiment == e))
        .map(|s| (s.sweep_value, s.mean_rate_bits))
        .collect()
}

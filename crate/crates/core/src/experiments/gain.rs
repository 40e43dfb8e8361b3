use crate::error::{Error, Result};

/// SNR at which a rate curve first reaches `target`, by linear
/// interpolation between neighbouring points. `curve` holds
/// `(snr_db, rate)` pairs in any order.
pub fn snr_at_rate(curve: &[(f64, f64)], target: f64, name: &str) -> Result<f64> {
    if !target.is_finite() {
        return Err(Error::InvalidInput(format!("target rate {target} is not finite")));
    }
    if curve.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::InvalidInput(format!("curve `{name}` has non-finite points")));
    }
    let mut pts = curve.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let out_of_range = || {
        let (low, high) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.1), hi.max(p.1))
        });
        Error::OutOfRange {
            curve: name.to_string(),
            target,
            low,
            high,
        }
    };
    if pts.is_empty() {
        return Err(out_of_range());
    }
    if pts[0].1 == target {
        return Ok(pts[0].0);
    }
    for w in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if (y0 < target && target <= y1) || (y0 > target && target >= y1) {
            return Ok(x0 + (target - y0) * (x1 - x0) / (y1 - y0));
        }
    }
    Err(out_of_range())
}

/// `snr_b - snr_a` at a common target rate: positive when curve `a` needs
/// less SNR than curve `b`.
pub fn snr_gain(curve_a: &[(f64, f64)], curve_b: &[(f64, f64)], target_rate: f64) -> Result<f64> {
    let a = snr_at_rate(curve_a, target_rate, "a")?;
    let b = snr_at_rate(curve_b, target_rate, "b")?;
    Ok(b - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_lines() {
        let a: Vec<_> = (0..10).map(|i| (i as f64, 0.5 * i as f64)).collect();
        let b: Vec<_> = a.iter().map(|&(x, y)| (x + 2.5, y)).collect();
        assert!((snr_gain(&a, &b, 2.2).unwrap() - 2.5).abs() < 1e-12);
        assert!((snr_gain(&b, &a, 2.2).unwrap() + 2.5).abs() < 1e-12);
    }

    #[test]
    fn unsorted_input_and_exact_hits() {
        let c = [(2.0, 4.0), (0.0, 0.0), (1.0, 1.0)];
        assert_eq!(snr_at_rate(&c, 0.0, "c").unwrap(), 0.0);
        assert_eq!(snr_at_rate(&c, 1.0, "c").unwrap(), 1.0);
        assert!((snr_at_rate(&c, 2.5, "c").unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn unbracketed_target_is_an_error() {
        let c = [(0.0, 1.0), (1.0, 2.0)];
        match snr_at_rate(&c, 3.0, "c") {
            Err(Error::OutOfRange { low, high, .. }) => assert_eq!((low, high), (1.0, 2.0)),
            other => panic!("{other:?}"),
        }
        assert!(snr_gain(&c, &[], 1.5).is_err());
    }
}

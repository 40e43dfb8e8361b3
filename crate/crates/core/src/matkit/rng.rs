use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::CMatrix;
use crate::error::{Error, Result};

/// Seedable source of circularly-symmetric complex Gaussian samples.
///
/// Backed by a ChaCha stream cipher, which is counter based: each
/// `(master_seed, stream)` pair is an independent sequence, so Monte-Carlo
/// realizations can be handed their own source without any coordination.
#[derive(Debug, Clone)]
pub struct GaussianSource {
    rng: ChaCha8Rng,
    master_seed: u64,
}

impl GaussianSource {
    pub fn new(master_seed: u64) -> Self {
        Self::child(master_seed, 0)
    }

    /// Independent stream `index` under `master_seed`.
    pub fn child(master_seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(index);
        GaussianSource { rng, master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// One `CN(0, 1)` draw: real and imaginary parts each `N(0, 1/2)`.
    #[inline]
    pub fn unit_cscg(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// `rows x cols` matrix of i.i.d. `CN(0, variance)` entries, drawn row-major.
    pub fn sample_cscg(&mut self, rows: usize, cols: usize, variance: f64) -> Result<CMatrix> {
        if !variance.is_finite() || variance <= 0.0 {
            return Err(Error::param("variance", variance, "must be positive and finite"));
        }
        let scale = variance.sqrt();
        Ok(CMatrix::from_fn(rows, cols, |_, _| self.unit_cscg() * scale))
    }
}

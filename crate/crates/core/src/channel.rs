//! Polarized Rayleigh channel realizations.
//!
//! A link between `N` transmit and `M` receive dual-element antennas is an
//! `M x N` grid of 2x2 blocks, each mapping the (V, H) element excitations at
//! one transmit antenna onto the (V, H) elements of one receive antenna.
//! Blocks are drawn as `Psi (.) H_iid` where `Psi` sets the co-/cross-polar
//! power split, then optionally distorted by antenna cross-polar leakage and
//! by polarization correlation, in that order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matkit::{CMatrix, GaussianSource, Mat2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub m_rx: usize,
    pub n_tx: usize,
    /// Inverse cross-polarization discrimination, `[0, 1]`.
    pub chi: f64,
    /// Inverse cross-polar isolation of the transmit antennas, `[0, 1]`.
    pub mu_t: f64,
    /// Inverse cross-polar isolation of the receive antennas, `[0, 1]`.
    pub mu_r: f64,
    /// Transmit-side polarization correlation coefficient, `|nu| <= 1`.
    pub nu_t: Complex64,
    /// Receive-side polarization correlation coefficient, `|nu| <= 1`.
    pub nu_r: Complex64,
}

impl ChannelParams {
    /// Uncorrelated channel with ideal antennas.
    pub fn new(m_rx: usize, n_tx: usize, chi: f64) -> Self {
        ChannelParams {
            m_rx,
            n_tx,
            chi,
            mu_t: 0.0,
            mu_r: 0.0,
            nu_t: Complex64::new(0.0, 0.0),
            nu_r: Complex64::new(0.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_rx == 0 {
            return Err(Error::param("m_rx", self.m_rx, "need at least one antenna"));
        }
        if self.n_tx == 0 {
            return Err(Error::param("n_tx", self.n_tx, "need at least one antenna"));
        }
        check_unit_interval("chi", self.chi)?;
        check_unit_interval("mu_t", self.mu_t)?;
        check_unit_interval("mu_r", self.mu_r)?;
        check_unit_disk("nu_t", self.nu_t)?;
        check_unit_disk("nu_r", self.nu_r)?;
        Ok(())
    }
}

fn check_unit_interval(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::param(name, x, "must lie in [0, 1]"))
    }
}

fn check_unit_disk(name: &'static str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() && z.norm() <= 1.0 {
        Ok(())
    } else {
        Err(Error::param(name, z, "magnitude must not exceed 1"))
    }
}

/// `M x N` grid of 2x2 polarized blocks, stored row-major by `(m, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizedChannel {
    m_rx: usize,
    n_tx: usize,
    blocks: Vec<Mat2>,
}

impl PolarizedChannel {
    pub fn new(m_rx: usize, n_tx: usize, blocks: Vec<Mat2>) -> Result<Self> {
        if m_rx == 0 || n_tx == 0 {
            return Err(Error::InvalidInput(
                "channel needs at least one antenna per side".into(),
            ));
        }
        if blocks.len() != m_rx * n_tx {
            return Err(Error::InvalidInput(format!(
                "{} blocks for a {m_rx}x{n_tx} antenna grid",
                blocks.len()
            )));
        }
        if !blocks.iter().all(Mat2::is_finite) {
            return Err(Error::InvalidInput("channel block has non-finite entries".into()));
        }
        Ok(PolarizedChannel { m_rx, n_tx, blocks })
    }

    /// Same block everywhere.
    pub fn uniform(m_rx: usize, n_tx: usize, block: Mat2) -> Result<Self> {
        Self::new(m_rx, n_tx, vec![block; m_rx * n_tx])
    }

    #[inline]
    pub fn m_rx(&self) -> usize {
        self.m_rx
    }

    #[inline]
    pub fn n_tx(&self) -> usize {
        self.n_tx
    }

    #[inline]
    pub fn block(&self, m: usize, n: usize) -> &Mat2 {
        &self.blocks[m * self.n_tx + n]
    }

    pub fn blocks(&self) -> &[Mat2] {
        &self.blocks
    }

    pub fn map_blocks(&self, f: impl Fn(&Mat2) -> Mat2) -> PolarizedChannel {
        PolarizedChannel {
            m_rx: self.m_rx,
            n_tx: self.n_tx,
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    /// The reverse link: an `N x M` grid whose `(n, m)` block is `P_mn^H`.
    pub fn reverse(&self) -> PolarizedChannel {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for n in 0..self.n_tx {
            for m in 0..self.m_rx {
                blocks.push(self.block(m, n).adjoint());
            }
        }
        PolarizedChannel {
            m_rx: self.n_tx,
            n_tx: self.m_rx,
            blocks,
        }
    }

    /// Full `2M x 2N` matrix with element order `(V_1, H_1, V_2, H_2, ...)`.
    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_fn(2 * self.m_rx, 2 * self.n_tx, |r, c| {
            self.block(r / 2, c / 2).at(r % 2, c % 2)
        })
    }
}

/// Depolarization mask `Psi`, normalized so each row carries unit power.
pub fn depolarization_mask(chi: f64) -> Mat2 {
    let s = chi.sqrt();
    Mat2::real(1.0, s, s, 1.0).scale((1.0 / (chi + 1.0).sqrt()).into())
}

/// Antenna coupling matrix `X` for inverse cross-polar isolation `mu`.
pub fn coupling_matrix(mu: f64) -> Mat2 {
    let s = mu.sqrt();
    Mat2::real(1.0, s, s, 1.0).scale((1.0 / (mu + 1.0).sqrt()).into())
}

/// Polarization correlation matrix `C` for coefficient `nu`.
pub fn correlation_matrix(nu: Complex64) -> Mat2 {
    let one = Complex64::new(1.0, 0.0);
    Mat2::new(one, nu.conj(), nu, one).scale((1.0 / (nu.norm_sqr() + 1.0).sqrt()).into())
}

pub fn generate(params: &ChannelParams, src: &mut GaussianSource) -> Result<PolarizedChannel> {
    params.validate()?;
    let psi = depolarization_mask(params.chi);
    let mut blocks = Vec::with_capacity(params.m_rx * params.n_tx);
    for _ in 0..params.m_rx * params.n_tx {
        let mut b = Mat2::ZERO;
        for r in 0..2 {
            for c in 0..2 {
                b.0[r][c] = psi.0[r][c] * src.unit_cscg();
            }
        }
        blocks.push(b);
    }
    let mut p = PolarizedChannel::new(params.m_rx, params.n_tx, blocks)?;
    if params.mu_t > 0.0 || params.mu_r > 0.0 {
        p = apply_xpi(&p, params.mu_t, params.mu_r)?;
    }
    if params.nu_t != Complex64::new(0.0, 0.0) || params.nu_r != Complex64::new(0.0, 0.0) {
        p = apply_correlation(&p, params.nu_t, params.nu_r)?;
    }
    Ok(p)
}

/// Cross-polar leakage: `P_mn <- X_r^{1/2} P_mn X_t^{1/2}`.
pub fn apply_xpi(p: &PolarizedChannel, mu_t: f64, mu_r: f64) -> Result<PolarizedChannel> {
    check_unit_interval("mu_t", mu_t)?;
    check_unit_interval("mu_r", mu_r)?;
    let xt = psd_sqrt_2x2(&coupling_matrix(mu_t))?;
    let xr = psd_sqrt_2x2(&coupling_matrix(mu_r))?;
    Ok(p.map_blocks(|b| xr * *b * xt))
}

/// Polarization correlation: `P_mn <- C_r^{1/2} P_mn C_t^{1/2}`.
pub fn apply_correlation(p: &PolarizedChannel, nu_t: Complex64, nu_r: Complex64) -> Result<PolarizedChannel> {
    check_unit_disk("nu_t", nu_t)?;
    check_unit_disk("nu_r", nu_r)?;
    let ct = psd_sqrt_2x2(&correlation_matrix(nu_t))?;
    let cr = psd_sqrt_2x2(&correlation_matrix(nu_r))?;
    Ok(p.map_blocks(|b| cr * *b * ct))
}

/// Hermitian PSD square root of a 2x2 Hermitian PSD matrix.
///
/// Uses the Cayley-Hamilton identity `R = (W + sqrt(det W) I) / sqrt(tr W + 2 sqrt(det W))`.
pub fn psd_sqrt_2x2(w: &Mat2) -> Result<Mat2> {
    if !w.is_finite() {
        return Err(Error::InvalidInput("non-finite matrix".into()));
    }
    let scale = w.frobenius_norm().max(1.0);
    if w.hermitian_defect() > 1e-12 * scale {
        return Err(Error::InvalidInput("matrix is not Hermitian".into()));
    }
    let a = w.at(0, 0).re;
    let d = w.at(1, 1).re;
    let c = w.at(1, 0);
    let half_gap = (((a - d) * 0.5).powi(2) + c.norm_sqr()).sqrt();
    let lambda_min = 0.5 * (a + d) - half_gap;
    if lambda_min < -1e-12 * scale {
        return Err(Error::InvalidInput(format!(
            "matrix is indefinite (smallest eigenvalue {lambda_min:e})"
        )));
    }
    let det = (a * d - c.norm_sqr()).max(0.0);
    let root_det = det.sqrt();
    let denom = a + d + 2.0 * root_det;
    if denom <= 0.0 {
        return Ok(Mat2::ZERO);
    }
    let k = 1.0 / denom.sqrt();
    // Build from the Hermitian part so the result is exactly Hermitian.
    let off = c * k;
    Ok(Mat2::new(
        ((a + root_det) * k).into(),
        off.conj(),
        off,
        ((d + root_det) * k).into(),
    ))
}

//! Closed-form phase updates.
//!
//! Every per-antenna subproblem has the form `max_psi p(psi)^H W p(psi)` with
//! `p(psi) = [1, e^{j psi}]` and `W` a 2x2 Hermitian matrix. Expanding gives
//! `W11 + W22 + 2 |W21| cos(psi - arg W21)`, maximized at `psi = arg W21`.

use crate::channel::PolarizedChannel;
use crate::error::{Error, Result};
use crate::matkit::{angle, Mat2, Vec2};

use super::pfv::{pfv_rx, pfv_tx, PhaseConfig};

/// Optimal receive phase for an effective polarization state `b`: the
/// power gain `|b1 + b2 e^{-j phi}|^2` peaks at `arg b2 - arg b1`.
pub fn siso_optimal_phase(b: &Vec2) -> f64 {
    crate::matkit::wrap_phase(angle(b[1]) - angle(b[0]))
}

/// Maximizer of `p(psi)^H W p(psi)` over `psi` for Hermitian `W`.
pub fn phase_argmax(w: &Mat2) -> Result<f64> {
    if !w.is_finite() {
        return Err(Error::InvalidInput("non-finite form matrix".into()));
    }
    if w.hermitian_defect() > 1e-10 * w.frobenius_norm().max(1.0) {
        return Err(Error::InvalidInput("form matrix is not Hermitian".into()));
    }
    Ok(angle(w.at(1, 0)))
}

/// `arg W21` without validation, for forms that are Hermitian by construction.
#[inline]
pub(crate) fn argmax_unchecked(w21: num_complex::Complex64) -> f64 {
    angle(w21)
}

/// Receive form `A_m = sum_n (P_mn t_n)(P_mn t_n)^H` for given transmit vectors.
pub fn receive_form(p: &PolarizedChannel, m: usize, tx: &[Vec2]) -> Mat2 {
    let mut a = Mat2::ZERO;
    for (n, t) in tx.iter().enumerate() {
        a = a + Mat2::outer(&p.block(m, n).mul_vec(t));
    }
    a
}

/// Transmit form `B_n = sum_m (P_mn^H r_m)(P_mn^H r_m)^H` for given receive vectors.
pub fn transmit_form(p: &PolarizedChannel, n: usize, rx: &[Vec2]) -> Mat2 {
    let mut b = Mat2::ZERO;
    for (m, r) in rx.iter().enumerate() {
        b = b + Mat2::outer(&p.block(m, n).adjoint().mul_vec(r));
    }
    b
}

/// One Gauss-Seidel pass: receive phases `m = 1..M`, then transmit phases
/// `n = 1..N`, each form rebuilt from the freshest phases. `on_update` is
/// called after every single-phase update.
pub fn coordinate_sweep(p: &PolarizedChannel, cfg: &mut PhaseConfig, mut on_update: impl FnMut(&PhaseConfig)) {
    let tx: Vec<Vec2> = cfg.tx_vectors();
    for m in 0..p.m_rx() {
        let a = receive_form(p, m, &tx);
        cfg.set_phi(m, argmax_unchecked(a.at(1, 0)));
        on_update(cfg);
    }
    let rx: Vec<Vec2> = cfg.rx_vectors();
    for n in 0..p.n_tx() {
        cfg.set_theta(n, argmax_unchecked(transmit_form(p, n, &rx).at(1, 0)));
        on_update(cfg);
    }
}

/// Phases for the adjustable side of a single-antenna link end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedEnd {
    /// Single receive antenna with this polarization vector; transmit side adjusts.
    Receiver(Vec2),
    /// Single transmit antenna with this polarization vector; receive side adjusts.
    Transmitter(Vec2),
}

/// One-shot transmit or receive polarforming against a fixed single antenna.
///
/// Each adjustable antenna contributes an independent term to the channel
/// power, so the per-antenna closed form is jointly optimal.
pub fn optimize_single_sided(p: &PolarizedChannel, fixed: &FixedEnd) -> Result<Vec<f64>> {
    match fixed {
        FixedEnd::Receiver(g) => {
            if p.m_rx() != 1 {
                return Err(Error::InvalidInput(format!(
                    "transmit polarforming needs one receive antenna, got {}",
                    p.m_rx()
                )));
            }
            Ok((0..p.n_tx())
                .map(|n| argmax_unchecked(transmit_form(p, n, std::slice::from_ref(g)).at(1, 0)))
                .collect())
        }
        FixedEnd::Transmitter(f) => {
            if p.n_tx() != 1 {
                return Err(Error::InvalidInput(format!(
                    "receive polarforming needs one transmit antenna, got {}",
                    p.n_tx()
                )));
            }
            Ok((0..p.m_rx())
                .map(|m| argmax_unchecked(receive_form(p, m, std::slice::from_ref(f)).at(1, 0)))
                .collect())
        }
    }
}

/// Polarization vectors realized by single-sided phases.
pub fn single_sided_vectors(fixed: &FixedEnd, phases: &[f64]) -> (Vec<Vec2>, Vec<Vec2>) {
    match fixed {
        FixedEnd::Receiver(g) => (vec![*g], phases.iter().map(|&t| pfv_tx(t)).collect()),
        FixedEnd::Transmitter(f) => (phases.iter().map(|&x| pfv_rx(x)).collect(), vec![*f]),
    }
}

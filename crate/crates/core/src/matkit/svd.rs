//! Truncated singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! Column pairs of the working matrix are rotated until every pair is
//! numerically orthogonal. The column norms are then the singular values, the
//! normalized columns the left vectors, and the accumulated rotations the
//! right vectors. Wide inputs are handled through their adjoint so the sweep
//! always runs over the smaller dimension.

use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Singular values below `RANK_TOL * sigma_max` are treated as zero.
pub const RANK_TOL: f64 = 1e-12;

const ORTH_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `rows x S`, orthonormal columns.
    pub left_vectors: CMatrix,
    /// Descending, all strictly above the rank threshold.
    pub singular_values: Vec<f64>,
    /// `cols x S`, orthonormal columns.
    pub right_vectors: CMatrix,
}

impl SvdResult {
    /// Numerical rank `S`.
    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    /// `U diag(s) V^H`.
    pub fn reconstruct(&self) -> CMatrix {
        let u = &self.left_vectors;
        let v = &self.right_vectors;
        CMatrix::from_fn(u.rows(), v.rows(), |i, j| {
            self.singular_values
                .iter()
                .enumerate()
                .map(|(s, &sv)| u[(i, s)] * sv * v[(j, s)].conj())
                .sum()
        })
    }
}

pub fn svd(a: &CMatrix) -> Result<SvdResult> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::InvalidInput("svd of an empty matrix".into()));
    }
    a.check_finite()?;
    if a.rows() >= a.cols() {
        Ok(jacobi_tall(a))
    } else {
        let t = jacobi_tall(&a.adjoint());
        Ok(SvdResult {
            left_vectors: t.right_vectors,
            singular_values: t.singular_values,
            right_vectors: t.left_vectors,
        })
    }
}

fn jacobi_tall(a: &CMatrix) -> SvdResult {
    let m = a.rows();
    let n = a.cols();
    // Column-major working copies: cols[j] is column j.
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let mut norms: Vec<f64> = cols.iter().map(|c| norm_sqr(c)).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= ORTH_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate in the plane of (a_p, e^{-j arg gamma} a_q), which
                // makes the pair's inner product real.
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
                norms[p] = norm_sqr(&cols[p]);
                norms[q] = norm_sqr(&cols[q]);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma_max = norms[order[0]].sqrt();
    let kept: Vec<usize> = order
        .into_iter()
        .filter(|&j| sigma_max > 0.0 && norms[j].sqrt() > RANK_TOL * sigma_max)
        .collect();

    let rank = kept.len();
    let mut u = CMatrix::zeros(m, rank);
    let mut vv = CMatrix::zeros(n, rank);
    let mut values = Vec::with_capacity(rank);
    for (s, &j) in kept.iter().enumerate() {
        let sigma = norms[j].sqrt();
        values.push(sigma);
        for i in 0..m {
            u[(i, s)] = cols[j][i] / sigma;
        }
        for i in 0..n {
            vv[(i, s)] = v[j][i];
        }
    }
    SvdResult {
        left_vectors: u,
        singular_values: values,
        right_vectors: vv,
    }
}

#[inline]
fn norm_sqr(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// `x_p <- c x_p - s conj(w) x_q`, `x_q <- s w x_p + c x_q` with `w = phase`.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let xp = &mut lo[p];
    let xq = &mut hi[0];
    let pc = phase.conj();
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let bq = *b * pc;
        let na = *a * c - bq * s;
        let nb = (*a * s + bq * c) * phase;
        *a = na;
        *b = nb;
    }
}

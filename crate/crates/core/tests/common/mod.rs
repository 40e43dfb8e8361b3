//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use polarform::matkit::{CMatrix, Complex64, GaussianSource, Mat2, Vec2};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `log2 det(A)` for Hermitian positive definite `A` via complex Cholesky.
pub fn cholesky_log2det(a: &CMatrix) -> f64 {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut l = vec![vec![c(0.0, 0.0); n]; n];
    let mut acc = 0.0;
    for j in 0..n {
        let d = a[(j, j)].re - l[j][..j].iter().map(|z| z.norm_sqr()).sum::<f64>();
        assert!(d > 0.0, "matrix is not positive definite");
        let djj = d.sqrt();
        l[j][j] = c(djj, 0.0);
        acc += 2.0 * djj.log2();
        for i in j + 1..n {
            let s: Complex64 = l[i][..j].iter().zip(&l[j][..j]).map(|(x, y)| x * y.conj()).sum();
            l[i][j] = (a[(i, j)] - s) / djj;
        }
    }
    acc
}

/// `log2 det(I + H Q H^H / noise)`.
pub fn logdet_capacity(h: &CMatrix, q: &CMatrix, noise: f64) -> f64 {
    let hq = h.matmul(q).unwrap().matmul(&h.adjoint()).unwrap();
    let m = CMatrix::from_fn(h.rows(), h.rows(), |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        c(id, 0.0) + hq[(i, j)] / noise
    });
    cholesky_log2det(&m)
}

/// `p^H W p` with `p = [1, e^{j psi}]`.
pub fn quad_phase(w: &Mat2, psi: f64) -> f64 {
    let p: Vec2 = [c(1.0, 0.0), Complex64::from_polar(1.0, psi)];
    let wp = w.mul_vec(&p);
    (p[0].conj() * wp[0] + p[1].conj() * wp[1]).re
}

/// Best objective over `points` evenly spaced phases in `[0, 2 pi)`.
pub fn grid_max_phase(w: &Mat2, points: usize) -> f64 {
    (0..points)
        .map(|k| quad_phase(w, 2.0 * PI * k as f64 / points as f64))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Hermitian 2x2 with Gaussian diagonal and CSCG off-diagonal; indefinite
/// about half the time.
pub fn random_hermitian(src: &mut GaussianSource) -> Mat2 {
    let a = src.unit_cscg().re * 2f64.sqrt();
    let b = src.unit_cscg().re * 2f64.sqrt();
    let z = src.unit_cscg();
    Mat2::new(c(a, 0.0), z.conj(), z, c(b, 0.0))
}

/// Eigendecomposition of a Hermitian 2x2 matrix: `(eigenvalues, eigenvectors)`.
pub fn eig_hermitian_2x2(w: &Mat2) -> ([f64; 2], [Vec2; 2]) {
    let a = w.at(0, 0).re;
    let d = w.at(1, 1).re;
    let b = w.at(0, 1);
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d).powi(2) + b.norm_sqr()).sqrt();
    let l = [mean + r, mean - r];
    if b.norm() < 1e-300 {
        let e0: Vec2 = [c(1.0, 0.0), c(0.0, 0.0)];
        let e1: Vec2 = [c(0.0, 0.0), c(1.0, 0.0)];
        return if a >= d { ([a, d], [e0, e1]) } else { ([d, a], [e1, e0]) };
    }
    let vecs = l.map(|li| {
        // (W - l I) v = 0 with v = [b, l - a].
        let v = [b, c(li - a, 0.0)];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    });
    (l, vecs)
}

/// Square root of a PSD 2x2 through its eigendecomposition.
pub fn eig_sqrt(w: &Mat2) -> Mat2 {
    let (l, v) = eig_hermitian_2x2(w);
    let mut out = Mat2::ZERO;
    for k in 0..2 {
        let s = l[k].max(0.0).sqrt();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += v[k][i] * v[k][j].conj() * s;
            }
        }
    }
    out
}

/// Dense block-diagonal matrix with the given 2-vectors as column blocks:
/// `2K x K`.
pub fn blkdiag(vs: &[Vec2]) -> CMatrix {
    let k = vs.len();
    CMatrix::from_fn(
        2 * k,
        k,
        |r, col| if r / 2 == col { vs[col][r % 2] } else { c(0.0, 0.0) },
    )
}

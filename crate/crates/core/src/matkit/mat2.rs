use std::ops::{Add, Mul};

use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Complex 2-vector, `[V, H]` components of a polarization state.
pub type Vec2 = [Complex64; 2];

/// Fixed-size 2x2 complex matrix, row-major.
///
/// Used for the per-antenna-pair polarized blocks and the Hermitian forms of
/// the phase updates, where heap-allocated [`CMatrix`] values would dominate
/// the cost of the inner loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.0[r][c]
    }

    #[inline]
    pub fn adjoint(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    #[inline]
    pub fn mul_vec(&self, x: &Vec2) -> Vec2 {
        let m = &self.0;
        [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]]
    }

    /// `x^H M`, returned as the conjugate-free row.
    #[inline]
    pub fn left_mul_adjoint(&self, x: &Vec2) -> Vec2 {
        let m = &self.0;
        [
            x[0].conj() * m[0][0] + x[1].conj() * m[1][0],
            x[0].conj() * m[0][1] + x[1].conj() * m[1][1],
        ]
    }

    /// Outer product `x x^H`.
    #[inline]
    pub fn outer(x: &Vec2) -> Mat2 {
        Mat2([
            [x[0] * x[0].conj(), x[0] * x[1].conj()],
            [x[1] * x[0].conj(), x[1] * x[1].conj()],
        ])
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn hermitian_defect(&self) -> f64 {
        let m = &self.0;
        (m[0][1] - m[1][0].conj())
            .norm()
            .max(m[0][0].im.abs())
            .max(m[1][1].im.abs())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_rows(&self.0)
    }

    pub fn from_cmatrix(a: &CMatrix) -> Result<Self> {
        if a.rows() != 2 || a.cols() != 2 {
            return Err(Error::InvalidInput(format!(
                "expected a 2x2 matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        a.check_finite()?;
        Ok(Mat2([[a[(0, 0)], a[(0, 1)]], [a[(1, 0)], a[(1, 1)]]]))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    #[inline]
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    #[inline]
    fn add(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

/// `x^H y`.
#[inline]
pub fn inner(x: &Vec2, y: &Vec2) -> Complex64 {
    x[0].conj() * y[0] + x[1].conj() * y[1]
}

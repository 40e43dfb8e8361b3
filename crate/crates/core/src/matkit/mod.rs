//! Small dense complex linear algebra: matrices, SVD and a seedable
//! complex-Gaussian sampler.

mod cmatrix;
mod mat2;
mod rng;
mod svd;

pub use cmatrix::{gram_trace, CMatrix};
pub use mat2::{inner, Mat2, Vec2};
pub use rng::GaussianSource;
pub use svd::{svd, SvdResult, RANK_TOL};

pub use num_complex::Complex64;

/// `arg(z)` in `[0, 2pi)`, with `arg(0) = 0`.
pub fn angle(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        return 0.0;
    }
    wrap_phase(z.im.atan2(z.re))
}

/// Reduces a phase to `[0, 2pi)`.
pub fn wrap_phase(x: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = x.rem_euclid(tau);
    // rem_euclid can round up to exactly tau for tiny negative inputs.
    if r >= tau {
        0.0
    } else {
        r
    }
}

//! `omega_{H,inf}` straight from the Leray form `(4 x2 x4)^{-1} dx0 dx1 dx2`.
//!
//! Eight copies of the positive-orthant integral over `max(x0..x3) <= 1`.
//! For fixed `x0, x1` the admissible `x2` fill `[L, 1]`, where `L` is the
//! larger of `x0 x1` (so `x3 = x0 x1 / x2 <= 1`) and the root of
//! `x2^4 + (x0^2 + x1^2) x2^2 - x0^2 x1^2 = 0` (so `x4^2 >= 0`). The sampler
//! draws `x2 = L^{1 - theta^2}`, which cancels the `1/x2` of the form and
//! spreads the `1/x4` singularity at `x2 = L`.

use super::quad::monte_carlo;
use super::Estimate;
use crate::par::Par;
use rand::Rng;

/// Samples with `x4` below this are dropped.
pub const X4_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerayEstimate {
    pub estimate: Estimate,
    /// Bound for the mass of the dropped set `x4 < X4_FLOOR`.
    pub excluded: f64,
}

fn weight(x0: f64, x1: f64, theta: f64) -> f64 {
    let s = x0 * x0 + x1 * x1;
    let p = x0 * x0 * x1 * x1;
    let root = ((-s + (s * s + 4.0 * p).sqrt()) / 2.0).sqrt();
    let lo = (x0 * x1).max(root);
    if lo <= 0.0 || lo >= 1.0 {
        return 0.0;
    }
    let log_inv = -lo.ln();
    let x2 = lo * (theta * theta * log_inv).exp();
    let x3 = x0 * x1 / x2;
    if x3 > 1.0 {
        return 0.0;
    }
    let x4 = ((x0 * x0 + x1 * x1 + x2 * x2 - x3 * x3) / 2.0).max(0.0).sqrt();
    if x4 < X4_FLOOR {
        return 0.0;
    }
    // dx2 = 2 theta log(1/L) x2 dtheta, and 8 / (4 x2 x4) times that.
    4.0 * theta * log_inv / x4
}

/// Mass of `{x4 < eps}`. Near the root `x4^2` grows like `(x2^2 + x3^2)/x2`
/// times `x2 - L`, so the slice contributes `2 eps / (x2^2 + x3^2)` and
/// `x2^2 + x3^2 >= x0^2 + x1^2` there. Eight orthant copies of
/// `(1/4) int 2 eps / r^2` over `eps <= r <= sqrt 2` in a quarter disc, plus
/// the same bound again for the square `r < eps`.
fn excluded_bound(eps: f64) -> f64 {
    2.0 * 4.0 * eps * std::f64::consts::FRAC_PI_2 * (std::f64::consts::SQRT_2 / eps).ln()
}

/// Monte-Carlo estimate of `omega_{H,inf}` (bar = three standard errors).
pub fn omega_inf_leray(samples: u64, seed: u64, par: Par) -> LerayEstimate {
    let (mean, se) = monte_carlo(samples, seed, par, |rng| weight(rng.random(), rng.random(), rng.random()));
    LerayEstimate { estimate: Estimate::new(mean, 3.0 * se), excluded: excluded_bound(X4_FLOOR) }
}

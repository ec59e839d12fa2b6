//! The Euler product `C* = prod_p (1 - 1/p)^3 sum_nu g(p^{|nu|}) rho_bar(nu)`.

use super::rho::rho_bar_closed_f64;
use super::Estimate;
use crate::arith::primes_up_to;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CStarConfig {
    /// Primes up to this bound enter the product.
    pub pmax: u64,
    /// Each `nu_i` runs over `0..=nucap`.
    pub nucap: u32,
}

impl Default for CStarConfig {
    fn default() -> Self {
        CStarConfig { pmax: 10_000, nucap: 6 }
    }
}

fn g_f64(p: u64, nu: u32) -> f64 {
    if p == 2 {
        (nu as f64 - 1.0).max(1.0)
    } else {
        let p = p as f64;
        1.0 + nu as f64 * (p - 1.0) / (p + 1.0)
    }
}

/// `sum_{nu in [0, cap]^3} g(p^{|nu|}) rho_bar(nu)` in floating point.
pub fn local_sum_f64(p: u64, cap: u32) -> f64 {
    let mut acc = 0.0;
    for n1 in 0..=cap {
        for n2 in 0..=cap {
            for n3 in 0..=cap {
                let rho = rho_bar_closed_f64(p, n1, n2, n3);
                if rho != 0.0 {
                    acc += g_f64(p, n1 + n2 + n3) * rho;
                }
            }
        }
    }
    acc
}

/// `(1 - 1/p)^3` times [`local_sum_f64`].
pub fn local_factor(p: u64, cap: u32) -> f64 {
    (1.0 - 1.0 / p as f64).powi(3) * local_sum_f64(p, cap)
}

fn partial_product(pmax: u64, cap: u32) -> f64 {
    primes_up_to(pmax).into_iter().map(|p| local_factor(p, cap)).product()
}

/// Truncated product with the gap to the `pmax / 2` truncation as error bar.
pub fn c_star(cfg: CStarConfig) -> Estimate {
    let full = partial_product(cfg.pmax, cfg.nucap);
    let half = partial_product(cfg.pmax / 2, cfg.nucap);
    Estimate::new(full, (full - half).abs())
}

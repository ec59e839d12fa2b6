//! Assembly of the leading constant along two routes.
//!
//! Route A is the Tamagawa form `alpha beta omega_inf prod_p (1 - 1/p)^5 omega_{H,p}`
//! with `omega_{H,p} = kappa_p (1 - 1/p)^-1 (1 + 1/p) sum_nu g rho_bar`, so that
//! each factor is `kappa_p (1 - 1/p)^3 (1 - 1/p^2) sum_nu g rho_bar`.
//! Route B is `16 C* sigma_inf / (27 zeta(2))`. They agree because
//! `prod_p kappa_p = 4/3`, `prod_p (1 - 1/p^2) = 1/zeta(2)` and
//! `omega_inf = 16 sigma_inf`.

use super::cstar::{c_star, local_sum_f64, CStarConfig};
use super::leray::omega_inf_leray;
use super::sigma::{sigma_infinity, QuadratureConfig};
use super::{Estimate, ZETA_2};
use crate::arith::primes_up_to;
use crate::error::Result;
use crate::nefcone::action::h1_cyclic_order;
use crate::nefcone::{alpha, GroupAction, PicLattice};
use crate::par::Par;
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeyreConfig {
    pub cstar: CStarConfig,
    pub quadrature: QuadratureConfig,
    /// Monte-Carlo samples for `omega_inf` from the Leray form.
    pub leray_samples: u64,
    pub seed: u64,
    pub par: Par,
}

impl Default for PeyreConfig {
    fn default() -> Self {
        PeyreConfig {
            cstar: CStarConfig::default(),
            quadrature: QuadratureConfig::default(),
            leray_samples: 1 << 22,
            seed: 1,
            par: Par::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeyreBreakdown {
    pub alpha: Q,
    pub beta: u128,
    pub c_star: Estimate,
    pub sigma_inf: Estimate,
    pub omega_inf: Estimate,
    /// `prod_{p <= pmax} (1 - 1/p)^5 omega_{H,p}`.
    pub tamagawa_product: Estimate,
    /// Route A.
    pub c_xh_tamagawa: Estimate,
    /// Route B.
    pub c_xh: Estimate,
    /// Route A over route B.
    pub ratio: f64,
    pub routes_agree: bool,
}

/// `(1 - 1/p)^5 omega_{H,p}` from the truncated series.
pub fn tamagawa_factor(p: u64, cap: u32) -> f64 {
    let x = 1.0 / p as f64;
    let kappa = if p == 2 { 4.0 / 3.0 } else { 1.0 };
    let omega_h = kappa * (1.0 + x) / (1.0 - x) * local_sum_f64(p, cap);
    (1.0 - x).powi(5) * omega_h
}

fn tamagawa_product(pmax: u64, cap: u32) -> f64 {
    primes_up_to(pmax).into_iter().map(|p| tamagawa_factor(p, cap)).product()
}

pub fn peyre_assemble(cfg: PeyreConfig) -> Result<PeyreBreakdown> {
    let pic = PicLattice::new(4)?;
    let conj = GroupAction::conj_q_i(&pic)?;
    let alpha = alpha(&conj, 4)?.alpha;
    let beta = h1_cyclic_order(&conj, &pic, &pic.lines())?;

    let cs = c_star(cfg.cstar);
    let sigma = sigma_infinity(cfg.quadrature);
    let omega = omega_inf_leray(cfg.leray_samples, cfg.seed, cfg.par).estimate;

    let full = tamagawa_product(cfg.cstar.pmax, cfg.cstar.nucap);
    let half = tamagawa_product(cfg.cstar.pmax / 2, cfg.cstar.nucap);
    let tp = Estimate::new(full, (full - half).abs());

    let a = crate::q_to_f64(alpha) * beta as f64;
    let route_a =
        Estimate::new(a * omega.value * tp.value, a * (omega.error_bar * tp.value + omega.value * tp.error_bar));
    let k = 16.0 / (27.0 * ZETA_2);
    let route_b =
        Estimate::new(k * cs.value * sigma.value, k * (cs.error_bar * sigma.value + cs.value * sigma.error_bar));
    Ok(PeyreBreakdown {
        alpha,
        beta,
        c_star: cs,
        sigma_inf: sigma,
        omega_inf: omega,
        tamagawa_product: tp,
        c_xh_tamagawa: route_a,
        c_xh: route_b,
        ratio: route_a.value / route_b.value,
        routes_agree: route_a.agrees_with(&route_b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::local::{kappa, omega_h_from_star, omega_p_series};
    use crate::constants::sigma::QuadratureMethod;

    fn to_f64(q: Q) -> f64 {
        *q.numer() as f64 / *q.denom() as f64
    }

    #[test]
    fn local_factor_wiring() {
        for p in [3u64, 5, 7] {
            let pf = p as f64;
            let omega_h = to_f64(omega_h_from_star(p, omega_p_series(p, 6).unwrap()));
            let lhs = (1.0 - 1.0 / pf).powi(5) * omega_h;
            let rhs = to_f64(kappa(p)) * (1.0 - 1.0 / pf).powi(3) * (1.0 - 1.0 / (pf * pf)) * local_sum_f64(p, 6);
            assert!(((lhs - rhs) / rhs).abs() < 1e-10, "p = {p}: {lhs} vs {rhs}");
            assert!((tamagawa_factor(p, 6) - lhs).abs() < 1e-12 * lhs);
        }
    }

    #[test]
    fn assembled_constant() {
        let cfg = PeyreConfig {
            cstar: CStarConfig { pmax: 2000, nucap: 6 },
            quadrature: QuadratureConfig {
                method: QuadratureMethod::AdaptiveGrid { tolerance: 1e-6 },
                par: Par::Rayon,
            },
            leray_samples: 1 << 20,
            seed: 2,
            par: Par::Rayon,
        };
        let b = peyre_assemble(cfg).unwrap();
        assert_eq!(b.alpha, Q::new(1, 36));
        assert_eq!(b.beta, 1);
        let direct = 16.0 * b.c_star.value * b.sigma_inf.value / (27.0 * ZETA_2);
        assert!((b.c_xh.value - direct).abs() <= 1e-15 * direct);
        assert!(b.routes_agree, "{b:?}");
        assert!((b.ratio - 1.0).abs() < 0.05, "{b:?}");
    }
}

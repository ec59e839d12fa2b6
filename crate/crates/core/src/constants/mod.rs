//! The factors of the leading constant: local densities, the Euler product
//! `C*`, the archimedean integrals and the main-term evaluator.

pub mod cstar;
pub mod leray;
pub mod local;
pub mod mainterm;
pub mod peyre;
pub(crate) mod quad;
pub mod rho;
pub mod sigma;

pub use cstar::{c_star, local_factor, CStarConfig};
pub use leray::{omega_inf_leray, LerayEstimate};
pub use local::{
    d_full, d_star_closed, d_star_direct, kappa, local_sum, n_mu_check, n_mu_count, n_star_fibered, n_star_raw,
    omega_h_from_star, omega_p_direct, omega_p_series, s_count, t_count, DStarClosed, LocalDensityReport, LocalEngine,
};
pub use mainterm::{h0, main_term_h, main_term_predict, sigma_sum, MainTermReport};
pub use peyre::{peyre_assemble, PeyreBreakdown, PeyreConfig};
pub use rho::{rho_bar_brute, rho_bar_closed, rho_bar_closed_f64, rho_dagger, rho_dagger_lifted, RhoCaps};
pub use sigma::{area_s, f_weight, in_region, sigma_infinity, QuadratureConfig, QuadratureMethod};

/// A floating-point value with an error bar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_bar: f64,
}

impl Estimate {
    pub fn new(value: f64, error_bar: f64) -> Self {
        Estimate { value, error_bar }
    }

    /// Whether `|self - other| <= self.bar + other.bar`.
    pub fn agrees_with(&self, other: &Estimate) -> bool {
        (self.value - other.value).abs() <= self.error_bar + other.error_bar
    }

    pub fn scale(&self, k: f64) -> Estimate {
        Estimate::new(self.value * k, self.error_bar * k.abs())
    }
}

/// `zeta(2) = pi^2 / 6`.
pub const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

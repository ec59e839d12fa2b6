//! The archimedean integral `sigma_inf`.
//!
//! With `w = sqrt|1 - u^2|` and `e = sign(1 - u^2)`:
//! `p_u = -2s^2 - e t^2 + 4st/w`, `q_u = 2s^2 - e t^2`,
//! `r_u = 2s^2 - 2ewst + e t^2`, and `S_u = {t > 0 : 0 < p_u, q_u <= 1, r_u > 0}`.
//! Then `sigma_inf = int_0^1 (|S_u| + |S_{1/u}|) / sqrt(1 - u^2) du`; after
//! `u = 1 - v^2` the integrand becomes `2 / sqrt(2 - v^2)` times the two areas
//! and is bounded. Every `S_u` lies in `|s| <= sqrt(3/2)`, `0 < t <= sqrt 2`.

use super::quad::{integrate, monte_carlo};
use super::Estimate;
use crate::par::Par;
use rand::Rng;

const S_MAX: f64 = 1.224_744_871_391_589; // sqrt(3/2)
const T_MAX: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureMethod {
    MonteCarlo { samples: u64, seed: u64 },
    AdaptiveGrid { tolerance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub method: QuadratureMethod,
    pub par: Par,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { method: QuadratureMethod::AdaptiveGrid { tolerance: 1e-7 }, par: Par::default() }
    }
}

struct Forms {
    e: f64,
    w: f64,
}

impl Forms {
    fn new(u: f64) -> Self {
        let d = 1.0 - u * u;
        Forms { e: d.signum(), w: d.abs().sqrt() }
    }

    fn pqr(&self, s: f64, t: f64) -> (f64, f64, f64) {
        let (e, w) = (self.e, self.w);
        (
            -2.0 * s * s - e * t * t + 4.0 * s * t / w,
            2.0 * s * s - e * t * t,
            2.0 * s * s - 2.0 * e * w * s * t + e * t * t,
        )
    }
}

/// Membership in the integration region: `t, u > 0`, `u != 1`,
/// `0 < max(1, u) p_u <= 1`, `0 < max(1, u) q_u <= 1`, `r_u > 0`.
pub fn in_region(s: f64, t: f64, u: f64) -> bool {
    if t <= 0.0 || u <= 0.0 || u == 1.0 {
        return false;
    }
    let (p, q, r) = Forms::new(u).pqr(s, t);
    let m = u.max(1.0);
    0.0 < m * p && m * p <= 1.0 && 0.0 < m * q && m * q <= 1.0 && r > 0.0
}

fn in_s(f: &Forms, s: f64, t: f64) -> bool {
    let (p, q, r) = f.pqr(s, t);
    t > 0.0 && 0.0 < p && p <= 1.0 && 0.0 < q && q <= 1.0 && r > 0.0
}

type Intervals = Vec<(f64, f64)>;

/// `{s in [lo, hi] : a s^2 + b s + c >= 0}`; strictness is irrelevant for length.
fn nonneg_set(a: f64, b: f64, c: f64, lo: f64, hi: f64) -> Intervals {
    let disc = b * b - 4.0 * a * c;
    if a == 0.0 {
        if b == 0.0 {
            return if c >= 0.0 { vec![(lo, hi)] } else { vec![] };
        }
        let root = -c / b;
        return if b > 0.0 { clip(&[(root, hi)], lo, hi) } else { clip(&[(lo, root)], lo, hi) };
    }
    if disc <= 0.0 {
        return if a > 0.0 { vec![(lo, hi)] } else { vec![] };
    }
    let sq = disc.sqrt();
    // Stable roots.
    let k = -0.5 * (b + b.signum() * sq);
    let (mut r1, mut r2) = if k == 0.0 {
        let r = (-c / a).abs().sqrt();
        (-r, r)
    } else {
        (k / a, c / k)
    };
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    if a > 0.0 {
        clip(&[(lo, r1), (r2, hi)], lo, hi)
    } else {
        clip(&[(r1, r2)], lo, hi)
    }
}

fn clip(parts: &[(f64, f64)], lo: f64, hi: f64) -> Intervals {
    parts.iter().map(|&(a, b)| (a.max(lo), b.min(hi))).filter(|(a, b)| a < b).collect()
}

fn intersect(x: &Intervals, y: &Intervals) -> Intervals {
    let mut out = Vec::new();
    for &(a, b) in x {
        for &(c, d) in y {
            let (lo, hi) = (a.max(c), b.min(d));
            if lo < hi {
                out.push((lo, hi));
            }
        }
    }
    out
}

/// The slice `{s : (s, t) in S_u}` as intervals, clipped to `[lo, hi]`.
fn slice(f: &Forms, t: f64, lo: f64, hi: f64) -> Intervals {
    let (e, w) = (f.e, f.w);
    let constraints = [
        (-2.0, 4.0 * t / w, -e * t * t),      // p >= 0
        (2.0, -4.0 * t / w, e * t * t + 1.0), // 1 - p >= 0
        (2.0, 0.0, -e * t * t),               // q >= 0
        (-2.0, 0.0, e * t * t + 1.0),         // 1 - q >= 0
        (2.0, -2.0 * e * w * t, e * t * t),   // r >= 0
    ];
    let mut set = vec![(lo, hi)];
    for (a, b, c) in constraints {
        set = intersect(&set, &nonneg_set(a, b, c, lo, hi));
        if set.is_empty() {
            break;
        }
    }
    set
}

fn slice_len(f: &Forms, t: f64) -> f64 {
    slice(f, t, -S_MAX, S_MAX).iter().map(|(a, b)| b - a).sum()
}

/// `(|S_u|, error bound)` by adaptive quadrature of the exact slice lengths.
pub fn area_s(u: f64, tol: f64) -> (f64, f64) {
    let f = Forms::new(u);
    integrate(|t| slice_len(&f, t), 0.0, T_MAX, tol, 50)
}

/// `f(u) = (|S_u| + |S_{1/u}|) / sqrt(1 - u^2)` for `0 < u < 1`.
pub fn f_weight(u: f64, tol: f64) -> f64 {
    (area_s(u, tol).0 + area_s(1.0 / u, tol).0) / (1.0 - u * u).sqrt()
}

fn v_integrand(v: f64, tol: f64) -> (f64, f64) {
    let u = 1.0 - v * v;
    let (a, ea) = area_s(u, tol);
    let (b, eb) = area_s(1.0 / u, tol);
    let k = 2.0 / (2.0 - v * v).sqrt();
    (k * (a + b), k * (ea + eb))
}

/// `sigma_inf` by the configured method. Monte-Carlo bars are three
/// standard errors; grid bars add the outer disagreement bound to the
/// accumulated inner bounds.
pub fn sigma_infinity(cfg: QuadratureConfig) -> Estimate {
    match cfg.method {
        QuadratureMethod::MonteCarlo { samples, seed } => {
            let vol = 2.0 * S_MAX * T_MAX;
            let (mean, se) = monte_carlo(samples, seed, cfg.par, |rng| {
                let v: f64 = rng.random();
                let s = (2.0 * rng.random::<f64>() - 1.0) * S_MAX;
                let t = rng.random::<f64>() * T_MAX;
                let u = 1.0 - v * v;
                let hits = in_s(&Forms::new(u), s, t) as u8 + in_s(&Forms::new(1.0 / u), s, t) as u8;
                vol * 2.0 / (2.0 - v * v).sqrt() * hits as f64
            });
            Estimate::new(mean, 3.0 * se)
        }
        QuadratureMethod::AdaptiveGrid { tolerance } => {
            let inner = tolerance / 10.0;
            let mut inner_err = 0.0f64;
            let (value, outer_err) = integrate(
                |v| {
                    let (x, e) = v_integrand(v, inner);
                    inner_err = inner_err.max(e);
                    x
                },
                0.0,
                1.0,
                tolerance,
                40,
            );
            Estimate::new(value, outer_err + inner_err)
        }
    }
}

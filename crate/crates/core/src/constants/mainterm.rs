//! Finite sums that bridge raw counts and the Euler product.

use super::sigma::f_weight;
use super::{Estimate, ZETA_2};
use crate::arith::{factorize, gcd_i128, MultFun};
use crate::error::{domain, Result};
use crate::fibration::Fiber;
use crate::nefcone::vol_w0;
use crate::par::Par;
use crate::Q;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Membership of `(t1, t2)` in `V_{a,b}(R)`, `m = max(a, b)`.
fn chi(m: i128, t1: i128, t2: i128, r: Q) -> bool {
    let (rn, rd) = (*r.numer(), *r.denom());
    t1 >= 1
        && t2 >= 1
        && m * t1 * rd <= rn * t2
        && m * t2 * rd <= rn * t1
        && m * m * m * rd <= rn * t1 * t2
        && t1 * t2 * rd <= m * rn
}

/// Prime factorisation of `|a^4 - b^4|` assembled from its three factors.
fn factor_quartic(f: &Fiber) -> Result<Vec<(u128, u32)>> {
    let (a, b) = (f.a() as i128, f.b() as i128);
    let mut exps: BTreeMap<u128, u32> = BTreeMap::new();
    for part in [(a - b).abs(), a + b, a * a + b * b] {
        for (p, e) in factorize(part as u128)? {
            *exps.entry(p).or_default() += e;
        }
    }
    Ok(exps.into_iter().collect())
}

/// Divisors `n` of `|a^4 - b^4|` paired with `(1 * h)(n)`.
fn divisors_with_weight(f: &Fiber) -> Result<Vec<(i128, Q)>> {
    let mut out = vec![(1i128, Q::one())];
    for (p, e) in factor_quartic(f)? {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for &(n, w) in &out {
            let mut pk = 1i128;
            for k in 0..=e {
                let wk = MultFun::OneStarH.at_prime_power(p, k);
                if !wk.is_zero() {
                    next.push((n * pk, w * wk));
                }
                pk *= p as i128;
            }
        }
        out = next;
    }
    Ok(out)
}

/// `h(a, b; Y) = sum_{n | a^4 - b^4} (1 * h)(n) chi_{d1 d2, d3}(Y)` with
/// `d1 = (n, a - b)`, `d2 = (n, a + b)`, `d3 = (n, a^2 + b^2)`.
pub fn main_term_h(f: &Fiber, y: Q) -> Result<Q> {
    if y <= Q::zero() {
        return domain("Y must be positive");
    }
    let (a, b) = (f.a() as i128, f.b() as i128);
    let m = a.max(b);
    let mut acc = Q::zero();
    for (n, w) in divisors_with_weight(f)? {
        let d1 = gcd_i128(n, a - b);
        let d2 = gcd_i128(n, a + b);
        let d3 = gcd_i128(n, a * a + b * b);
        if chi(m, d1 * d2, d3, y) {
            acc += w;
        }
    }
    Ok(acc)
}

/// `h0(a, b; Y) = delta_{a,b} sum_{m | odd(a^2 - b^2)} sum_{m3 | odd(a^2 + b^2)}
/// (phi*/phi+)(m) (phi*/phi+)(m3) chi_{m, m3}(Y)` with
/// `delta_{a,b} = max(1, v2(a^2 - b^2))`.
pub fn h0(f: &Fiber, y: Q) -> Result<Q> {
    let (a, b) = (f.a() as i128, f.b() as i128);
    let m = a.max(b);
    let lo = (a * a - b * b).abs();
    let hi = a * a + b * b;
    let delta = Q::from_integer(lo.trailing_zeros().max(1) as i128);
    let weighted = |n: i128| -> Result<Vec<(i128, Q)>> {
        let odd = n >> n.trailing_zeros();
        let mut out = Vec::new();
        for d in crate::arith::divisors(odd as u128)? {
            let w = MultFun::PhiStar.eval(d)? / MultFun::PhiDagger.eval(d)?;
            out.push((d as i128, w));
        }
        Ok(out)
    };
    let (left, right) = (weighted(lo)?, weighted(hi)?);
    let mut acc = Q::zero();
    for &(m1, w1) in &left {
        for &(m3, w3) in &right {
            if chi(m, m1, m3, y) {
                acc += w1 * w3;
            }
        }
    }
    Ok(delta * acc)
}

/// `delta_{a,b} = max(1, v2(a^2 - b^2))`.
pub fn delta(f: &Fiber) -> u32 {
    let (a, b) = (f.a() as i128, f.b() as i128);
    (a * a - b * b).abs().trailing_zeros().max(1)
}

/// `Sigma_{theta1,theta2}(Y) = sum h(a, b; Y) / a^2` over coprime `a < sqrt B`,
/// `theta1 a <= b <= (1 - theta2) a`.
pub fn sigma_sum(bound: u64, theta1: f64, theta2: f64, y: Q, par: Par) -> Result<f64> {
    let a_max = a_limit(bound);
    let terms = par.map_indexed(a_max as usize + 1, |a| -> Result<f64> {
        let a = a as i64;
        if a == 0 {
            return Ok(0.0);
        }
        let mut acc = 0.0;
        for b in b_range(a, theta1, 1.0 - theta2) {
            if let Ok(f) = Fiber::new(a, b) {
                acc += crate::q_to_f64(main_term_h(&f, y)?);
            }
        }
        Ok(acc / (a * a) as f64)
    });
    terms.into_iter().sum()
}

/// Largest `a` with `a^2 < B`.
fn a_limit(bound: u64) -> i64 {
    let r = (bound as f64).sqrt() as i64;
    (r - 2..=r + 1).filter(|&a| a >= 0 && (a * a) < bound as i64).max().unwrap_or(0)
}

/// Integers `b >= 1` with `lo * a <= b <= hi * a`.
fn b_range(a: i64, lo: f64, hi: f64) -> impl Iterator<Item = i64> {
    let first = ((lo * a as f64).ceil() as i64).max(1);
    let last = (hi * a as f64).floor() as i64;
    first..=last
}

/// Evaluations of the main-term sums at one bound.
#[derive(Debug, Clone, PartialEq)]
pub struct MainTermReport {
    pub bound: u64,
    pub theta1: f64,
    pub theta2: f64,
    pub k: f64,
    /// `Sigma_{theta1,theta2}(B/K)` summed directly.
    pub sigma_direct: f64,
    /// `2 C* (1 - theta1 - theta2) vol(W0) (log B)^4`.
    pub sigma_closed: f64,
    pub vol_w0: Q,
    /// Lower and upper sums for `N_1(B)` with `f(b/a)` weights.
    pub n1_lower: f64,
    pub n1_upper: f64,
}

/// Tabulated `f` on `[lo, hi]` with linear interpolation.
struct FTable {
    lo: f64,
    step: f64,
    values: Vec<f64>,
}

impl FTable {
    fn new(lo: f64, hi: f64, n: usize, par: Par) -> Self {
        let step = (hi - lo) / n as f64;
        let values = par.map_indexed(n + 1, |i| f_weight(lo + step * i as f64, 1e-8));
        FTable { lo, step, values }
    }

    fn at(&self, u: f64) -> f64 {
        let x = ((u - self.lo) / self.step).max(0.0);
        let i = (x.floor() as usize).min(self.values.len() - 2);
        let frac = (x - i as f64).min(1.0);
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }
}

/// The main-term evaluator at `B`: the direct and closed-form `Sigma`, and
/// the lower and upper sums predicting `N_1(B)` with `Y = B/K` and
/// `Y = B 2^{Z2 + 1} / K`, `Z2 = log log B`.
pub fn main_term_predict(
    bound: u64,
    theta1: f64,
    theta2: f64,
    k: f64,
    c_star: Estimate,
    par: Par,
) -> Result<MainTermReport> {
    if !(16..=10_000_000).contains(&bound) {
        return domain("main-term bound must lie in [16, 10^7]");
    }
    if theta1 <= 0.0 || theta2 <= 0.0 || theta1 + theta2 >= 1.0 {
        return domain("need theta1, theta2 > 0 with theta1 + theta2 < 1");
    }
    if k < 1.0 {
        return domain("K must be at least 1");
    }
    let b = bound as f64;
    let log_b = b.ln();
    let y_low = rational_floor(b / k);
    let sigma_direct = sigma_sum(bound, theta1, theta2, y_low, par)?;
    let w0 = vol_w0();
    let w0f = crate::q_to_f64(w0);
    let sigma_closed = 2.0 * c_star.value * (1.0 - theta1 - theta2) * w0f * log_b.powi(4);

    let z2 = log_b.ln();
    let (lo, hi) = (1.0 / (z2 * z2), 1.0 - 1.0 / (z2 * z2));
    let table = FTable::new(lo, hi, 2048, par);
    let y_high = rational_floor(b * 2f64.powf(z2 + 1.0) / k);
    let a_max = a_limit(bound);
    let sums = par.map_indexed(a_max as usize + 1, |a| -> Result<(f64, f64)> {
        let a = a as i64;
        let (mut l, mut u) = (0.0, 0.0);
        if a == 0 {
            return Ok((l, u));
        }
        for bb in b_range(a, lo, hi) {
            if let Ok(f) = Fiber::new(a, bb) {
                let w = table.at(bb as f64 / a as f64);
                l += w * crate::q_to_f64(main_term_h(&f, y_low)?);
                u += w * crate::q_to_f64(main_term_h(&f, y_high)?);
            }
        }
        let a2 = (a * a) as f64;
        Ok((l / a2, u / a2))
    });
    let (mut l, mut u) = (0.0, 0.0);
    for s in sums {
        let (x, y) = s?;
        l += x;
        u += y;
    }
    let scale = 8.0 * b / (3.0 * ZETA_2);
    Ok(MainTermReport {
        bound,
        theta1,
        theta2,
        k,
        sigma_direct,
        sigma_closed,
        vol_w0: w0,
        n1_lower: scale * l,
        n1_upper: scale * u,
    })
}

fn rational_floor(x: f64) -> Q {
    Q::from_integer(x.floor().max(1.0) as i128)
}

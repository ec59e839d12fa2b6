//! Local densities of the triple `(x1 - x2, x1 + x2, x1^2 + x2^2)`.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::Q;
use num_traits::Zero;

/// Limits on the brute-force counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RhoCaps {
    /// Largest admissible `nu1 + nu2 + nu3`.
    pub nu_sum: u32,
    /// Largest admissible prime.
    pub p_max: u64,
    /// Largest number of pairs the counter may visit.
    pub work: u64,
}

impl Default for RhoCaps {
    fn default() -> Self {
        RhoCaps { nu_sum: 8, p_max: 13, work: 1 << 30 }
    }
}

fn exact_valuation(x: u64, p: u64, nu: u32, q: u64) -> bool {
    let x = x % q;
    let pn = p.pow(nu);
    x.is_multiple_of(pn) && !(x / pn).is_multiple_of(p)
}

fn rho_count_at(p: u64, nu: [u32; 3], level: u32) -> u64 {
    let q = p.pow(level);
    let mut count = 0;
    for x1 in 0..q {
        for x2 in 0..q {
            if x1 % p == 0 && x2 % p == 0 {
                continue;
            }
            if exact_valuation(x1 + q - x2, p, nu[0], q)
                && exact_valuation(x1 + x2, p, nu[1], q)
                && exact_valuation(x1 * x1 + x2 * x2, p, nu[2], q)
            {
                count += 1;
            }
        }
    }
    count
}

fn check(p: u64, nu: [u32; 3], level: u32, caps: RhoCaps) -> Result<()> {
    if !is_prime(p as u128) {
        return Err(Error::NotPrime(p as u128));
    }
    let sum: u32 = nu.iter().sum();
    if sum > caps.nu_sum || p > caps.p_max {
        return Err(Error::CapExceeded(format!(
            "p = {p}, nu sum = {sum} beyond caps p <= {}, nu sum <= {}",
            caps.p_max, caps.nu_sum
        )));
    }
    let work = p.checked_pow(2 * level).filter(|&w| w <= caps.work);
    if work.is_none() {
        return Err(Error::CapExceeded(format!("{p}^{} pairs", 2 * level)));
    }
    Ok(())
}

/// `rho+_p(nu)`: pairs modulo `p^{|nu| + 1}`, not both divisible by `p`,
/// with `p^{nu_i}` exactly dividing each of the three forms.
pub fn rho_dagger(p: u64, nu1: u32, nu2: u32, nu3: u32, caps: RhoCaps) -> Result<u64> {
    let nu = [nu1, nu2, nu3];
    let level = nu1 + nu2 + nu3 + 1;
    check(p, nu, level, caps)?;
    Ok(rho_count_at(p, nu, level))
}

/// The same count taken modulo `p^{|nu| + 1 + extra}`.
pub fn rho_dagger_lifted(p: u64, nu: [u32; 3], extra: u32, caps: RhoCaps) -> Result<u64> {
    let level = nu.iter().sum::<u32>() + 1 + extra;
    check(p, nu, level, caps)?;
    Ok(rho_count_at(p, nu, level))
}

/// `rho_bar = rho+ / p^{2(|nu| + 1)}` from the brute-force count.
pub fn rho_bar_brute(p: u64, nu1: u32, nu2: u32, nu3: u32, caps: RhoCaps) -> Result<Q> {
    let count = rho_dagger(p, nu1, nu2, nu3, caps)?;
    let level = nu1 + nu2 + nu3 + 1;
    Ok(Q::new(count as i128, (p as i128).pow(2 * level)))
}

/// Closed form of `rho_bar`.
///
/// Odd `p`: at most one valuation is positive, `(1 - 1/p)^2 p^{-nu}` on each
/// linear axis and `(1 + chi(-1))` times that on the quadratic axis, with the
/// complement at the origin. `p = 2`: `1/2` at the origin, `2^{-k-2}` at
/// `(1, k, 1)` and `(k, 1, 1)` for `k >= 2`, zero elsewhere.
pub fn rho_bar_closed(p: u64, nu1: u32, nu2: u32, nu3: u32) -> Result<Q> {
    if !is_prime(p as u128) {
        return Err(Error::NotPrime(p as u128));
    }
    let pi = p as i128;
    let pow = |e: u32| pi.checked_pow(e).ok_or_else(|| Error::Overflow(format!("{p}^{e}")));
    if p == 2 {
        return Ok(match (nu1, nu2, nu3) {
            (0, 0, 0) => Q::new(1, 2),
            (1, k, 1) | (k, 1, 1) if k >= 2 => Q::new(1, pow(k + 2)?),
            _ => Q::zero(),
        });
    }
    let split = if p % 4 == 1 { 2 } else { 0 };
    let unit = |e: u32| -> Result<Q> { Ok(Q::new((pi - 1) * (pi - 1), pi * pi * pow(e)?)) };
    Ok(match (nu1, nu2, nu3) {
        (0, 0, 0) => Q::new(pi * pi - 1 - 2 * (pi - 1) - split * (pi - 1), pi * pi),
        (e, 0, 0) | (0, e, 0) => unit(e)?,
        (0, 0, e) => unit(e)? * Q::from_integer(split),
        _ => Q::zero(),
    })
}

/// [`rho_bar_closed`] in floating point, for primes too large for exact powers.
pub fn rho_bar_closed_f64(p: u64, nu1: u32, nu2: u32, nu3: u32) -> f64 {
    let pf = p as f64;
    if p == 2 {
        return match (nu1, nu2, nu3) {
            (0, 0, 0) => 0.5,
            (1, k, 1) | (k, 1, 1) if k >= 2 => 0.5f64.powi(k as i32 + 2),
            _ => 0.0,
        };
    }
    let split = if p % 4 == 1 { 2.0 } else { 0.0 };
    let unit = |e: u32| (1.0 - 1.0 / pf).powi(2) * pf.powi(-(e as i32));
    match (nu1, nu2, nu3) {
        (0, 0, 0) => 1.0 - (1.0 + 2.0 * (pf - 1.0) + split * (pf - 1.0)) / (pf * pf),
        (e, 0, 0) | (0, e, 0) => unit(e),
        (0, 0, e) => split * unit(e),
        _ => 0.0,
    }
}

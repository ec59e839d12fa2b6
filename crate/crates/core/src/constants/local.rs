//! Solution counts modulo prime powers.
//!
//! Ternary counts `#{(x, y, z) mod q : A x^2 + C y^2 = E z^2}` are computed by
//! grouping residues into orbits under multiplication by unit squares: the
//! number of `(y, z)` completing a given `A x^2` only depends on that orbit.

use super::rho::rho_bar_closed;
use crate::arith::{g_value, is_prime};
use crate::error::{domain, Error, Result};
use crate::Q;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Largest modulus accepted by the convolution counters.
pub const CONV_CAP: u64 = 10_000_000;
/// Largest modulus accepted by the raw five-variable counter.
pub const RAW_CAP: u64 = 256;

/// `Z / p^n` with the data needed to classify residues.
#[derive(Debug, Clone)]
pub(crate) struct Ring {
    p: u64,
    n: u32,
    q: u64,
    /// `is_square[u]` for `u mod p` (odd `p` only).
    is_square: Vec<bool>,
}

/// Orbit of a residue under unit squares: valuation plus a square-class key.
type Class = (u32, u64);

impl Ring {
    pub(crate) fn new(p: u64, n: u32, cap: u64) -> Result<Self> {
        if !is_prime(p as u128) {
            return Err(Error::NotPrime(p as u128));
        }
        if n == 0 {
            return domain("exponent n must be positive");
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= cap)
            .ok_or_else(|| Error::CapExceeded(format!("{p}^{n} exceeds {cap}")))?;
        let mut is_square = vec![false; if p == 2 { 0 } else { p as usize }];
        if p != 2 {
            for x in 1..p {
                is_square[(x * x % p) as usize] = true;
            }
        }
        Ok(Ring { p, n, q, is_square })
    }

    fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.q as i128) as u64
    }

    fn is_unit(&self, x: u64) -> bool {
        !x.is_multiple_of(self.p)
    }

    fn class(&self, r: u64) -> Class {
        if r == 0 {
            return (self.n, 0);
        }
        let (mut v, mut u) = (0, r);
        while u % self.p == 0 {
            u /= self.p;
            v += 1;
        }
        let key =
            if self.p == 2 { u % (1 << (self.n - v).min(3)) } else { self.is_square[(u % self.p) as usize] as u64 };
        (v, key)
    }

    /// `table[r] = #{z : e z^2 = r}`.
    fn square_table(&self, e: u64) -> Vec<u32> {
        let mut t = vec![0u32; self.q as usize];
        for z in 0..self.q {
            t[(e * (z * z % self.q) % self.q) as usize] += 1;
        }
        t
    }
}

/// Which `(x, y)` a ternary count admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Restrict {
    None,
    /// `p` does not divide both `x` and `y`.
    PrimitiveXY,
    /// `p` does not divide `x`.
    UnitX,
}

/// `#{(x, y, z) mod q : a x^2 + c y^2 = e z^2}` under `restrict`.
pub(crate) fn ternary_count(ring: &Ring, a: i128, c: i128, e: i128, restrict: Restrict) -> u128 {
    let q = ring.q;
    let (a, c, e) = (ring.reduce(a), ring.reduce(c), ring.reduce(e));
    let table = ring.square_table(e);
    // Orbit -> (representative, #unit x, #non-unit x).
    let mut orbits: BTreeMap<Class, (u64, u128, u128)> = BTreeMap::new();
    for x in 0..=q / 2 {
        let weight = if x == 0 || 2 * x == q { 1 } else { 2 };
        let r = a * (x * x % q) % q;
        let entry = orbits.entry(ring.class(r)).or_insert((r, 0, 0));
        if ring.is_unit(x) {
            entry.1 += weight;
        } else {
            entry.2 += weight;
        }
    }
    // c y^2 for y <= q / 2; y and -y give the same square.
    let half: Vec<(u64, u128, bool)> = (0..=q / 2)
        .map(|y| {
            let weight = if y == 0 || 2 * y == q { 1 } else { 2 };
            (c * (y * y % q) % q, weight, ring.is_unit(y))
        })
        .collect();
    // #{(y, z) : e z^2 = r + c y^2}, y over all residues or units only.
    let completions = |r: u64, units_only: bool| -> u128 {
        half.iter()
            .filter(|&&(_, _, unit)| !units_only || unit)
            .map(|&(s, weight, _)| {
                let t = r + s;
                let t = if t >= q { t - q } else { t };
                weight * table[t as usize] as u128
            })
            .sum()
    };
    orbits
        .values()
        .map(|&(r, unit, non_unit)| {
            let all = completions(r, false);
            match restrict {
                Restrict::None => (unit + non_unit) * all,
                Restrict::UnitX => unit * all,
                Restrict::PrimitiveXY => {
                    let rest = if non_unit > 0 { completions(r, true) } else { 0 };
                    unit * all + non_unit * rest
                }
            }
        })
        .sum()
}

fn check_coprime(p: u64, c: i128, d: i128) -> Result<()> {
    if c.rem_euclid(p as i128) == 0 || d.rem_euclid(p as i128) == 0 {
        return domain(format!("c = {c} and d = {d} must be coprime to {p}"));
    }
    Ok(())
}

fn scaled(p: u64, c: i128, mu: u32) -> Result<i128> {
    (p as i128).checked_pow(mu).and_then(|m| m.checked_mul(c)).ok_or_else(|| Error::Overflow(format!("{c} * {p}^{mu}")))
}

/// `D*_{mu,nu}(p^n)`: primitive solutions of `c p^mu x^2 + d p^nu y^2 = 2 z^2`
/// modulo `p^n`, divided by `p^{2n}`.
pub fn d_star_direct(p: u64, n: u32, mu: u32, nu: u32, c: i128, d: i128) -> Result<Q> {
    d_count(p, n, mu, nu, c, d, Restrict::PrimitiveXY)
}

/// As [`d_star_direct`] without the primitivity condition.
pub fn d_full(p: u64, n: u32, mu: u32, nu: u32, c: i128, d: i128) -> Result<Q> {
    if n == 0 {
        return Ok(Q::one());
    }
    d_count(p, n, mu, nu, c, d, Restrict::None)
}

fn d_count(p: u64, n: u32, mu: u32, nu: u32, c: i128, d: i128, restrict: Restrict) -> Result<Q> {
    let ring = Ring::new(p, n, CONV_CAP)?;
    check_coprime(p, c, d)?;
    let count = ternary_count(&ring, scaled(p, c, mu)?, scaled(p, d, nu)?, 2, restrict);
    let q = ring.q as i128;
    Ok(Q::new(count as i128, q * q))
}

/// Closed forms for `D*_{mu,nu}(p^n)` that do not depend on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DStarClosed {
    /// Exact for every admissible `n`.
    Exact(Q),
    /// Main term; the error is `O(p^{-(n - mu - 2)})`.
    MainTerm(Q),
}

impl DStarClosed {
    pub fn value(self) -> Q {
        match self {
            DStarClosed::Exact(q) | DStarClosed::MainTerm(q) => q,
        }
    }
}

/// The closed form for `D*_{mu,nu}` in the cases where one is known:
/// odd `p` with `mu = nu = 0`, or `nu = 0 < mu` and `2d` a square mod `p`;
/// `p = 2` with `mu = nu = 0`, `c + d = 0, 2 mod 8`, or `mu >= 3`, `nu = 1`,
/// `2^{mu-1} c + d = 1 mod 8`.
pub fn d_star_closed(p: u64, mu: u32, nu: u32, c: i128, d: i128) -> Result<DStarClosed> {
    if !is_prime(p as u128) {
        return Err(Error::NotPrime(p as u128));
    }
    check_coprime(p, c, d)?;
    let pi = p as i128;
    let inv = Q::new(1, pi);
    if p == 2 {
        if mu == 0 && nu == 0 && matches!((c + d).rem_euclid(8), 0 | 2) {
            return Ok(DStarClosed::Exact(Q::one()));
        }
        if mu >= 3 && nu == 1 && (scaled(2, c, mu - 1)? + d).rem_euclid(8) == 1 {
            return Ok(DStarClosed::Exact(Q::from_integer(mu as i128)));
        }
        return Err(Error::Hypothesis(format!("no closed form at p = 2 for mu = {mu}, nu = {nu}, c = {c}, d = {d}")));
    }
    if mu == 0 && nu == 0 {
        return Ok(DStarClosed::Exact(Q::one() - inv * inv));
    }
    let two_d = (2 * d).rem_euclid(pi) as u64;
    let residue = (1..p).any(|x| x * x % p == two_d);
    if mu >= 1 && nu == 0 && residue {
        let m = Q::from_integer(mu as i128);
        return Ok(DStarClosed::MainTerm((Q::one() - inv) * (m * (Q::one() - inv) + Q::one() + inv)));
    }
    Err(Error::Hypothesis(format!("no closed form at p = {p} for mu = {mu}, nu = {nu}, d = {d}")))
}

/// The count `N_mu` arising for `D*_{mu,1}(2^n)`: with `m = n - 3`,
/// `2^{1-2m} #{(x, y, z) mod 2^m : x odd, 2^{mu-3} c x^2 + d y^2 = z^2}`.
pub fn n_mu_count(mu: u32, m: u32, c: i128, d: i128) -> Result<Q> {
    if mu < 3 {
        return domain("mu must be at least 3");
    }
    check_coprime(2, c, d)?;
    let lhs = (scaled(2, c, mu - 1)? + d).rem_euclid(8);
    if lhs != 1 {
        return Err(Error::Hypothesis(format!("2^(mu-1) c + d = {lhs} mod 8, expected 1")));
    }
    let ring = Ring::new(2, m, CONV_CAP)?;
    let count = ternary_count(&ring, scaled(2, c, mu - 3)?, d, 1, Restrict::UnitX);
    Ok(Q::new(2 * count as i128, 1i128 << (2 * m)))
}

/// `N_mu` at a modulus large enough for the count to have stabilised.
pub fn n_mu_check(mu: u32, c: i128, d: i128) -> Result<Q> {
    n_mu_count(mu, mu + 6, c, d)
}

/// `#{x mod 2^m : x(x + 1) = a}`.
pub fn s_count(a: i64, m: u32) -> u64 {
    let q = 1i64 << m;
    (0..q).filter(|&x| (x * (x + 1) - a).rem_euclid(q) == 0).count() as u64
}

/// `#{x mod 2^m : x^2 = a}`.
pub fn t_count(a: i64, m: u32) -> u64 {
    let q = 1i64 << m;
    (0..q).filter(|&x| (x * x - a).rem_euclid(q) == 0).count() as u64
}

/// `N*(p^n)`: vectors mod `p^n`, not all divisible by `p`, on both quadrics.
/// Computed by fibering over the conic bundle: every such vector arises from
/// exactly `phi(p^n)` tuples `(a, b, x, y, z)`, and unit scaling of `(a, b)`
/// leaves the conic count unchanged, so one of `a, b` can be taken to be 1.
pub fn n_star_fibered(p: u64, n: u32) -> Result<u128> {
    let ring = Ring::new(p, n, CONV_CAP)?;
    let q = ring.q as i128;
    let mut cache: BTreeMap<(Class, Class), u128> = BTreeMap::new();
    let mut conic = |a2: i128, b2: i128| {
        let (lo, hi) = (ring.reduce(a2 - b2), ring.reduce(a2 + b2));
        *cache
            .entry((ring.class(lo), ring.class(hi)))
            .or_insert_with(|| ternary_count(&ring, lo as i128, hi as i128, 2, Restrict::PrimitiveXY))
    };
    let mut total = 0u128;
    for b in 0..q {
        total += conic(1, b * b % q);
    }
    for a in (0..q).step_by(p as usize) {
        total += conic(a * a % q, 1);
    }
    // Vectors with x0..x3 all divisible by p lie on no conic; a unit x4 then
    // needs 2 x4^2 = 0 mod p^n, which happens only modulo 2 (x4 = 1).
    if (p, n) == (2, 1) {
        total += 1;
    }
    Ok(total)
}

/// `N*(p^n)` by enumerating `x0, x1, x2`, solving `x2 x3 = x0 x1` for `x3`
/// and counting `x4` from a table.
pub fn n_star_raw(p: u64, n: u32) -> Result<u128> {
    let ring = Ring::new(p, n, RAW_CAP)?;
    let q = ring.q;
    let mut all = vec![0u32; q as usize];
    let mut units = vec![0u32; q as usize];
    for z in 0..q {
        let r = (2 * z * z % q) as usize;
        all[r] += 1;
        if ring.is_unit(z) {
            units[r] += 1;
        }
    }
    let mut total = 0u128;
    for x0 in 0..q {
        for x1 in 0..q {
            let prod = x0 * x1 % q;
            for x2 in 0..q {
                let g = gcd_pow(p, x2, q);
                if prod % g != 0 {
                    continue;
                }
                let step = q / g;
                let base = (prod / g) * inverse(x2 / g % step, step) % step;
                for k in 0..g {
                    let x3 = base + k * step;
                    let r = (x0 * x0 + x1 * x1 + x2 * x2 + q * q - x3 * x3) % q;
                    let free = [x0, x1, x2, x3].iter().any(|&x| ring.is_unit(x));
                    total += if free { all[r as usize] } else { units[r as usize] } as u128;
                }
            }
        }
    }
    Ok(total)
}

/// `gcd(x, p^n)` for `x mod p^n`.
fn gcd_pow(p: u64, x: u64, q: u64) -> u64 {
    if x == 0 {
        return q;
    }
    let mut g = 1;
    let mut x = x;
    while x.is_multiple_of(p) {
        x /= p;
        g *= p;
    }
    g
}

fn inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    t0.rem_euclid(m as i128) as u64
}

/// Which counter backs [`omega_p_direct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LocalEngine {
    Raw,
    #[default]
    Fibered,
}

/// `N*(p^n) / p^{3n}`, an approximation of `omega*_{H,p}`.
pub fn omega_p_direct(p: u64, n: u32, engine: LocalEngine) -> Result<Q> {
    let count = match engine {
        LocalEngine::Raw => n_star_raw(p, n)?,
        LocalEngine::Fibered => n_star_fibered(p, n)?,
    };
    let denom = (p as i128).checked_pow(3 * n).ok_or_else(|| Error::Overflow(format!("{p}^{}", 3 * n)))?;
    Ok(Q::new(count as i128, denom))
}

/// `omega_{H,p} = omega*_{H,p} / (1 - 1/p)`.
pub fn omega_h_from_star(p: u64, star: Q) -> Q {
    star * Q::new(p as i128, p as i128 - 1)
}

/// `kappa_p`.
pub fn kappa(p: u64) -> Q {
    if p == 2 {
        Q::new(4, 3)
    } else {
        Q::one()
    }
}

/// `sum_{nu in [0, cap]^3} g(p^{|nu|}) rho_bar(nu)`.
pub fn local_sum(p: u64, cap: u32) -> Result<Q> {
    let mut acc = Q::zero();
    for n1 in 0..=cap {
        for n2 in 0..=cap {
            for n3 in 0..=cap {
                let rho = rho_bar_closed(p, n1, n2, n3)?;
                if !rho.is_zero() {
                    acc += g_value(p as u128, n1 + n2 + n3)? * rho;
                }
            }
        }
    }
    Ok(acc)
}

/// Truncated series for `omega*_{H,p}`: `kappa_p (1 + 1/p)` times [`local_sum`].
pub fn omega_p_series(p: u64, cap: u32) -> Result<Q> {
    Ok(kappa(p) * Q::new(p as i128 + 1, p as i128) * local_sum(p, cap)?)
}

/// Both evaluations of `omega*_{H,p}` side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalDensityReport {
    pub p: u64,
    pub n: u32,
    pub truncation: u32,
    pub direct: Q,
    pub series: Q,
}

impl LocalDensityReport {
    pub fn compute(p: u64, n: u32, truncation: u32) -> Result<Self> {
        Ok(LocalDensityReport {
            p,
            n,
            truncation,
            direct: omega_p_direct(p, n, LocalEngine::Fibered)?,
            series: omega_p_series(p, truncation)?,
        })
    }

    pub fn gap(&self) -> f64 {
        let d = self.direct - self.series;
        (*d.numer() as f64 / *d.denom() as f64).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_ternary(p: u64, n: u32, a: i128, c: i128, e: i128, restrict: Restrict) -> u128 {
        let q = p.pow(n) as i128;
        let mut count = 0;
        for x in 0..q {
            for y in 0..q {
                let keep = match restrict {
                    Restrict::None => true,
                    Restrict::UnitX => x % p as i128 != 0,
                    Restrict::PrimitiveXY => x % p as i128 != 0 || y % p as i128 != 0,
                };
                if !keep {
                    continue;
                }
                for z in 0..q {
                    if (a * x * x + c * y * y - e * z * z).rem_euclid(q) == 0 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn ternary_matches_brute_force() {
        for (p, n) in [(2, 1), (2, 3), (2, 5), (3, 1), (3, 3), (5, 2), (7, 2)] {
            let ring = Ring::new(p, n, CONV_CAP).unwrap();
            for (a, c, e) in [(1, 1, 2), (3, 5, 2), (6, 1, 2), (4, 9, 1), (0, 3, 2), (12, 7, 1)] {
                for r in [Restrict::None, Restrict::PrimitiveXY, Restrict::UnitX] {
                    assert_eq!(
                        ternary_count(&ring, a, c, e, r),
                        brute_ternary(p, n, a, c, e, r),
                        "p^n = {p}^{n}, ({a}, {c}, {e}), {r:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn fibered_matches_raw() {
        for (p, n) in [(2, 1), (2, 2), (2, 4), (2, 6), (3, 1), (3, 3), (5, 2), (7, 2), (11, 1)] {
            assert_eq!(n_star_fibered(p, n).unwrap(), n_star_raw(p, n).unwrap(), "{p}^{n}");
        }
    }

    #[test]
    fn raw_counter_refuses_large_moduli() {
        assert!(matches!(n_star_raw(3, 6), Err(Error::CapExceeded(_))));
        assert!(matches!(n_star_fibered(2, 40), Err(Error::CapExceeded(_))));
        assert_eq!(n_star_raw(4, 2), Err(Error::NotPrime(4)));
    }

    #[test]
    fn local_densities_plateau() {
        let two: Vec<Q> = (4..=8).map(|n| omega_p_direct(2, n, LocalEngine::Fibered).unwrap()).collect();
        assert!(two.iter().all(|&w| w == Q::from_integer(3)), "{two:?}");
        let three: Vec<Q> = (2..=8).map(|n| omega_p_direct(3, n, LocalEngine::Fibered).unwrap()).collect();
        assert!(three.iter().all(|&w| w == Q::new(44, 27)), "{three:?}");
        assert_eq!(omega_h_from_star(3, Q::new(44, 27)), Q::new(22, 9));
        assert_eq!(omega_h_from_star(2, Q::from_integer(3)), Q::from_integer(6));
    }

    #[test]
    fn series_converges_to_direct_values() {
        let gap = |p: u64, cap: u32| {
            let d = omega_p_series(p, cap).unwrap() - omega_p_direct(p, 6, LocalEngine::Fibered).unwrap();
            (*d.numer() as f64 / *d.denom() as f64).abs()
        };
        assert!(gap(2, 30) < 1e-6);
        assert!(gap(3, 20) < 1e-6);
        assert!(gap(5, 14) < 1e-6);
        assert!(gap(3, 6) < gap(3, 4));
    }

    #[test]
    fn kappa_is_applied_at_two() {
        let series = omega_p_series(2, 6).unwrap();
        let bare = Q::new(3, 2) * local_sum(2, 6).unwrap();
        assert_eq!(series / bare, Q::new(4, 3));
    }

    #[test]
    fn series_is_monotone_in_cap() {
        for p in [2, 3, 5, 13] {
            let vals: Vec<Q> = (0..8).map(|c| omega_p_series(p, c).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "p = {p}");
        }
    }

    #[test]
    fn d_star_unit_case() {
        for p in [3u64, 5, 7] {
            for n in 1..=6 {
                for (c, d) in [(1, 1), (1, 2), (2, 3), (3, 5)] {
                    if (c as u64).is_multiple_of(p) || (d as u64).is_multiple_of(p) {
                        continue;
                    }
                    let v = d_star_direct(p, n, 0, 0, c, d).unwrap();
                    let p = p as i128;
                    assert_eq!(v, Q::new(p * p - 1, p * p));
                }
            }
        }
    }

    #[test]
    fn d_star_closed_forms() {
        for p in [3u64, 5, 7] {
            for n in 1..=8 {
                if p.pow(n) > CONV_CAP {
                    continue;
                }
                for (c, d) in [(1, 1), (1, 2), (2, 3)] {
                    if (c * d) % p as i128 == 0 {
                        continue;
                    }
                    let closed = d_star_closed(p, 0, 0, c, d).unwrap();
                    assert_eq!(d_star_direct(p, n, 0, 0, c, d).unwrap(), closed.value(), "p = {p}, n = {n}");
                }
            }
        }
        for n in 3..=10 {
            for (c, d) in [(1, 1), (3, 7), (5, 5), (1, 7), (3, 5)] {
                assert_eq!(d_star_direct(2, n, 0, 0, c, d).unwrap(), Q::one(), "n = {n}, c = {c}, d = {d}");
            }
        }
        for mu in 3..=5u32 {
            let d = (1 - (1i128 << (mu - 1))).rem_euclid(8);
            let n = mu + 6;
            let direct = d_star_direct(2, n, mu, 1, 1, d).unwrap();
            assert_eq!(d_star_closed(2, mu, 1, 1, d).unwrap(), DStarClosed::Exact(direct), "mu = {mu}");
        }
        for p in [3u64, 5, 7] {
            let d = (1..p as i128).find(|&d| (1..p as i128).any(|x| (x * x - 2 * d) % p as i128 == 0)).unwrap();
            for mu in 1..=4 {
                let closed = d_star_closed(p, mu, 0, 1, d).unwrap();
                assert!(matches!(closed, DStarClosed::MainTerm(_)));
                let direct = d_star_direct(p, 8, mu, 0, 1, d).unwrap();
                let gap = num_traits::Signed::abs(&(direct - closed.value()));
                let scale = Q::new(1, (p as i128).pow(8 - mu - 2));
                assert!(gap <= scale * Q::from_integer(10), "p = {p}, mu = {mu}: {direct} vs {}", closed.value());
            }
        }
        assert!(d_star_closed(2, 1, 1, 1, 1).is_err());
        assert!(d_star_closed(2, 0, 0, 3, 3).is_err());
        assert!(d_star_closed(3, 0, 0, 3, 1).is_err());
    }

    #[test]
    fn d_star_recursion() {
        for (p, c, d) in [(2u64, 1, 3), (2, 3, 5), (3, 1, 2), (5, 2, 3), (7, 1, 1)] {
            for n in 2..=6 {
                for mu in 0..=3 {
                    for nu in 0..=2 {
                        let full = d_full(p, n, mu, nu, c, d).unwrap();
                        let prev = d_full(p, n - 2, mu, nu, c, d).unwrap();
                        let star = d_star_direct(p, n, mu, nu, c, d).unwrap();
                        assert_eq!(full - prev / Q::from_integer(p as i128), star, "{p}^{n} {mu} {nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn d_star_rejects_non_units() {
        assert!(d_star_direct(3, 4, 0, 0, 3, 1).is_err());
        assert!(d_star_direct(2, 4, 0, 0, 1, 2).is_err());
    }

    #[test]
    fn n_mu_values() {
        // (c, d) chosen so that 2^{mu-1} c + d = 1 mod 8.
        let want = [(3, 1), (4, 0), (5, 1), (6, 2), (7, 3), (8, 4)];
        for (mu, expect) in want {
            for c in [1i128, 3, 5, 7] {
                let d = (1 - (c << (mu - 1))).rem_euclid(8);
                let v = n_mu_check(mu, c, d).unwrap();
                assert_eq!(v, Q::from_integer(expect), "mu = {mu}, c = {c}, d = {d}");
                assert_eq!(n_mu_count(mu, mu + 7, c, d).unwrap(), v);
            }
        }
        assert!(matches!(n_mu_check(3, 1, 1), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn two_adic_root_counts() {
        for m in 3..=10 {
            for a in -20..20 {
                assert_eq!(s_count(a, m), if a % 2 == 0 { 2 } else { 0 });
                if a % 2 != 0 {
                    assert_eq!(t_count(a, m), if a.rem_euclid(8) == 1 { 4 } else { 0 });
                }
            }
        }
    }
}

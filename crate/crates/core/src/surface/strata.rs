//! Exact O(B) counts of the degenerate strata, from the parametrisations of
//! `x^2 + y^2 = 2z^2` and `x^2 = y^2 + 2z^2`.

use crate::arith::{gcd_i128, gcd_i64, is_square_u128};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StrataCounts {
    pub zero: u64,
    pub x4: u64,
}

/// Primitive positive `x^2 + y^2 = 2z^2`, `x != y`, `max{x, y} <= B`.
///
/// With `u = (x+y)/2`, `v = |x-y|/2` these are primitive Pythagorean pairs
/// with leg sum `<= B`, each giving two ordered `(x, y)`.
fn plus_conic(b: i64) -> u64 {
    let mut n = 0;
    // The leg sum m^2 - k^2 + 2mk increases with k, so k = 1 is the smallest.
    let mut m = 2i64;
    while m * m + 2 * m - 1 <= b {
        for k in 1..m {
            if (m - k) % 2 == 1 && gcd_i64(m, k) == 1 && m * m - k * k + 2 * m * k <= b {
                n += 2;
            }
        }
        m += 1;
    }
    n
}

/// Primitive positive `x^2 = y^2 + 2z^2`, `x <= B`:
/// `x = n^2 + 2m^2`, `y = |n^2 - 2m^2|`, `z = 2mn`, `n` odd, `gcd(m, n) = 1`.
fn minus_conic(b: i64) -> u64 {
    let mut c = 0;
    let mut n = 1i64;
    while n * n + 2 <= b {
        let mut m = 1i64;
        while n * n + 2 * m * m <= b {
            if gcd_i64(m, n) == 1 {
                c += 1;
            }
            m += 1;
        }
        n += 2;
    }
    c
}

/// Points of `U` (mod sign) with some `x_i = 0`, `i <= 3`.
///
/// Such a point has exactly two zero coordinates, one from each side of
/// `x0 x1 = x2 x3`, leaving `x^2 +- y^2 = 2z^2` with all of `x, y, z` nonzero:
/// eight sign patterns, four up to sign, and two strata of each kind.
pub fn stratum_zero_fast(bound: i64) -> u64 {
    8 * (plus_conic(bound) + minus_conic(bound))
}

/// For a fiber `(a, b)` with `a < b`, the coprime positive `(x, y)` with
/// `(a^2 - b^2) x^2 + (a^2 + b^2) y^2 = 0`, if any.
fn zero_z_point(a: i64, b: i64) -> Option<(i64, i64)> {
    if a >= b {
        return None;
    }
    let (a, b) = (a as i128, b as i128);
    let (dm, dp) = (b * b - a * a, a * a + b * b);
    let g = gcd_i128(dm, dp);
    let x = is_square_u128((dp / g) as u128)?;
    let y = is_square_u128((dm / g) as u128)?;
    Some((x as i64, y as i64))
}

/// Points of `U` (mod sign) with `x4 = 0` and `x0 x1 x2 x3 != 0`.
///
/// In fiber coordinates one of `max{a, b}`, `max{x, y}` is at most `sqrt B`;
/// the other side is recovered from the swap `(x, y, z) in C_{a,b}` iff
/// `(b, a, z) in C_{y,x}`.
pub fn stratum_x4_fast(bound: i64) -> u64 {
    let s = (bound as u64).isqrt() as i64;
    let mut positive = 0u64;
    for c in 1..=s {
        for d in 1..=s {
            if gcd_i64(c, d) != 1 {
                continue;
            }
            if let Some((u, v)) = zero_z_point(c, d) {
                let m = c.max(d);
                // (a, b) = (c, d) small.
                if c * d != 1 && u * v != 1 && m * u.max(v) <= bound {
                    positive += 1;
                }
                // (y, x) = (c, d) small, (b, a) = (u, v) large.
                if u.max(v) > s && c * d != 1 && u * v != 1 && m * u.max(v) <= bound {
                    positive += 1;
                }
            }
        }
    }
    4 * positive
}

pub fn strata_fast(bound: i64) -> StrataCounts {
    StrataCounts { zero: stratum_zero_fast(bound), x4: stratum_x4_fast(bound) }
}

use super::point::in_u_unchecked;
use crate::arith::{gcd_i64, is_square_u128};
use crate::error::{domain, Result};
use crate::par::Par;
use num_integer::Integer;
use std::ops::Add;

/// Points of height at most `bound`, counted modulo `x ~ -x`.
///
/// `n_u = n_generic + stratum_zero + stratum_x4`, where `n_generic` counts
/// points of `U` with all five coordinates nonzero, `stratum_zero` those
/// with a vanishing coordinate among `x0..x3`, and `stratum_x4` those with
/// only `x4 = 0`. `line_points` are the discarded points on lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CountReport {
    pub bound: i64,
    pub n_u: u64,
    pub n_generic: u64,
    pub stratum_zero: u64,
    pub stratum_x4: u64,
    pub line_points: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    generic: u64,
    zero: u64,
    x4: u64,
    lines: u64,
}

impl Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            generic: self.generic + o.generic,
            zero: self.zero + o.zero,
            x4: self.x4 + o.x4,
            lines: self.lines + o.lines,
        }
    }
}

impl Tally {
    fn visit(&mut self, x0: i64, x1: i64, x2: i64, x3: i64) {
        if x0.gcd(&x1).gcd(&x2).gcd(&x3) != 1 {
            return;
        }
        let s = [x0, x1, x2].iter().map(|v| (*v as i128).pow(2)).sum::<i128>() - (x3 as i128).pow(2);
        if s < 0 || s % 2 != 0 {
            return;
        }
        let Some(r) = is_square_u128((s / 2) as u128) else {
            return;
        };
        let signs: &[i64] = if r == 0 { &[0] } else { &[1, -1] };
        for &e in signs {
            let x = [x0, x1, x2, x3, e * r as i64];
            if !in_u_unchecked(&x) {
                self.lines += 1;
            } else if x[..4].contains(&0) {
                self.zero += 1;
            } else if x[4] == 0 {
                self.x4 += 1;
            } else {
                self.generic += 1;
            }
        }
    }
}

/// Brute-force count of `N_U(B)` by enumerating `x0, x1, x2` in `[-B, B]`
/// with `x3 = x0 x1 / x2` (plus the `x2 = 0` family over `x0, x1, x3`) and
/// solving for `x4`. Intended as an oracle for `B <= 2000`.
pub fn count_naive(bound: i64, par: Par) -> Result<CountReport> {
    if !(1..=2000).contains(&bound) {
        return domain(format!("count_naive: bound {bound} outside 1..=2000"));
    }
    let b = bound;
    let t = par.sum_range(-b, b + 1, |x0| {
        let mut t = Tally::default();
        for x2 in -b..=b {
            if x2 == 0 {
                let x1s: Vec<i64> = if x0 == 0 { (-b..=b).collect() } else { vec![0] };
                for x1 in x1s {
                    for x3 in -b..=b {
                        t.visit(x0, x1, 0, x3);
                    }
                }
                continue;
            }
            let step = x2.abs() / gcd_i64(x0, x2);
            let mut x1 = -(b / step) * step;
            while x1 <= b {
                let x3 = x0 * x1 / x2;
                if x3.abs() <= b {
                    t.visit(x0, x1, x2, x3);
                }
                x1 += step;
            }
        }
        t
    });
    let halve = |v: u64| {
        debug_assert!(v.is_multiple_of(2));
        v / 2
    };
    let (g, z, x4) = (halve(t.generic), halve(t.zero), halve(t.x4));
    Ok(CountReport {
        bound,
        n_u: g + z + x4,
        n_generic: g,
        stratum_zero: z,
        stratum_x4: x4,
        line_points: halve(t.lines),
    })
}

/// Brute-force `N1(B)`: quadruples `(a, b, x, y)` of positive integers with
/// `gcd(a, b) = gcd(x, y) = 1`, `ab != 1`, `xy != 1`,
/// `max{a, b} max{x, y} <= B` and `(a^2 - b^2) x^2 + (a^2 + b^2) y^2 = 2 z^2`
/// for some positive `z`. Oracle for `B <= 10^4`.
pub fn count_n1_naive(bound: i64, par: Par) -> Result<u64> {
    if !(1..=10_000).contains(&bound) {
        return domain(format!("count_n1_naive: bound {bound} outside 1..=10000"));
    }
    let b = bound;
    Ok(par.sum_range(1, b / 2 + 1, |a| {
        let mut n = 0u64;
        for bb in 1..=b / 2 {
            if a * bb == 1 || gcd_i64(a, bb) != 1 {
                continue;
            }
            let h = b / a.max(bb);
            let dm = (a as i128).pow(2) - (bb as i128).pow(2);
            let dp = (a as i128).pow(2) + (bb as i128).pow(2);
            for x in 1..=h {
                let cx = dm * (x as i128).pow(2);
                for y in 1..=h {
                    if x * y == 1 || gcd_i64(x, y) != 1 {
                        continue;
                    }
                    let v = cx + dp * (y as i128).pow(2);
                    if v > 0 && v % 2 == 0 && is_square_u128((v / 2) as u128).is_some() {
                        n += 1;
                    }
                }
            }
        }
        n
    }))
}

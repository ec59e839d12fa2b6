use super::cells::{for_each_param_point, Filter};
use super::forms::Fiber;
use crate::arith::{gcd_i64, is_square_u128};
use crate::error::{domain, Result};
use crate::par::Par;

#[inline]
fn is_twice_square(v: i128) -> bool {
    // 2 z^2 mod 16 lies in {0, 2, 8}.
    v > 0 && matches!(v & 15, 0 | 2 | 8) && is_square_u128((v / 2) as u128).is_some()
}

/// Quadruples with `max{a, b} = max{x, y} = m <= sqrt B`.
///
/// The four cases `b = m` or `a = m` against `y = m` or `x = m` are disjoint
/// because `a != b` and `x != y`; for `b = y = m` the equation reads
/// `m^4 + x^2 a^2 + m^2 (a^2 - x^2) = 2 z^2`.
pub fn count_n1_diagonal(bound: i64, par: Par) -> u64 {
    let root = (bound as u64).isqrt() as i64;
    par.sum_range(2, root + 1, |m| {
        let mi = m as i128;
        let m2 = mi * mi;
        let coprime: Vec<i128> = (1..m).filter(|&k| gcd_i64(k, m) == 1).map(|k| k as i128).collect();
        let mut n = 0u64;
        for &o in &coprime {
            let o2 = o * o;
            for &v in &coprime {
                let v2 = v * v;
                // b = m, other = a; then y = m or x = m.
                n += is_twice_square((o2 - m2) * v2 + (o2 + m2) * m2) as u64;
                n += is_twice_square((o2 - m2) * m2 + (o2 + m2) * v2) as u64;
                // a = m, other = b.
                n += is_twice_square((m2 - o2) * v2 + (m2 + o2) * m2) as u64;
                n += is_twice_square((m2 - o2) * m2 + (m2 + o2) * v2) as u64;
            }
        }
        n
    })
}

/// `N1(B) = 2 sum_{max{a,b} < sqrt B} M~_{a,b}(B) + N1'(B)`.
///
/// The factor 2 is the swap `(a, b, x, y) -> (y, x, b, a)`, which exchanges
/// `max{a, b}` and `max{x, y}`; `N1'` is the diagonal where they are equal.
pub fn count_n1_fast(bound: i64, par: Par) -> Result<u64> {
    if !(1..=100_000_000).contains(&bound) {
        return domain(format!("count_n1_fast: bound {bound} outside 1..=10^8"));
    }
    let root = (bound as u64).isqrt() as i64;
    let below = |m: i64| m * m < bound;
    let off_diagonal: Result<u64> = par
        .sum_range(1, root + 1, |a| -> ResultSum {
            let mut n = 0u64;
            for b in 1..=root {
                if !below(a.max(b)) || gcd_i64(a, b) != 1 || a * b == 1 {
                    continue;
                }
                let f = Fiber::new(a, b).expect("checked");
                let h = bound / f.m();
                let r = for_each_param_point(&f, h, |p| {
                    if Filter::MTilde.keep(&f, &p) {
                        n += 1;
                    }
                });
                if let Err(e) = r {
                    return ResultSum(Err(e));
                }
            }
            ResultSum(Ok(n))
        })
        .0;
    Ok(2 * off_diagonal? + count_n1_diagonal(bound, par))
}

/// Summable `Result<u64>` keeping the first error.
struct ResultSum(Result<u64>);

impl Default for ResultSum {
    fn default() -> Self {
        ResultSum(Ok(0))
    }
}

impl std::ops::Add for ResultSum {
    type Output = ResultSum;
    fn add(self, o: ResultSum) -> ResultSum {
        ResultSum(match (self.0, o.0) {
            (Ok(a), Ok(b)) => Ok(a + b),
            (Err(e), _) | (_, Err(e)) => Err(e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::count_n1_naive;

    #[test]
    fn fast_equals_naive() {
        for b in [1, 2, 10, 37, 100, 256, 500, 1000] {
            assert_eq!(count_n1_fast(b, Par::Rayon).unwrap(), count_n1_naive(b, Par::Rayon).unwrap(), "B = {b}");
        }
    }

    #[test]
    fn sequential_equals_parallel() {
        assert_eq!(count_n1_fast(3000, Par::Sequential).unwrap(), count_n1_fast(3000, Par::Rayon).unwrap());
    }
}

use crate::error::{domain, Result};
use num_integer::Integer;

const TRIAL_LIMIT: u128 = 1_000_000;
const MAX_N: u128 = 1 << 127;

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // m < 2^127, so a + b never overflows.
    let (mut a, mut b) = (a % m, b % m);
    let mut r = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            r += a;
            if r >= m {
                r -= m;
            }
        }
        a += a;
        if a >= m {
            a -= m;
        }
        b >>= 1;
    }
    r
}

fn powmod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

// Deterministic for n < 3.3e24 with the first thirteen primes; the extra
// bases cover the rest of the 127-bit range with no known counterexample.
const MR_BASES: [u128; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    let bases: &[u128] = if n < 3_317_044_064_679_887_385_961_981 { &MR_BASES[..13] } else { &MR_BASES };
    'outer: for &a in bases {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; `n` odd composite.
fn rho(n: u128) -> u128 {
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, m) = (2u128, 1u64, 1u128, 128u64);
        let mut g = 1u128;
        let (mut x, mut ys) = (0u128, 0u128);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    split(d, out);
    split(n / d, out);
}

/// Prime factorisation `[(p, e)]` in increasing order of `p`.
///
/// Trial division up to 10^6, then Pollard rho with Miller-Rabin.
/// Accepts `1 <= n <= 2^127`.
pub fn factorize(n: u128) -> Result<Vec<(u128, u32)>> {
    if n == 0 || n > MAX_N {
        return domain(format!("factorize: {n} outside 1..=2^127"));
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut push = |p: u128, n: &mut u128| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut d = 3u128;
    while d <= TRIAL_LIMIT && d * d <= n {
        push(d, &mut n);
        d += 2;
    }
    if n > 1 {
        if d * d > n {
            out.push((n, 1));
        } else {
            let mut ps = Vec::new();
            split(n, &mut ps);
            ps.sort_unstable();
            for p in ps {
                match out.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => out.push((p, 1)),
                }
            }
        }
    }
    Ok(out)
}

/// All positive divisors, sorted.
pub fn divisors(n: u128) -> Result<Vec<u128>> {
    let f = factorize(n)?;
    let mut ds = vec![1u128];
    for (p, e) in f {
        let len = ds.len();
        let mut pk = 1u128;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial(mut n: u128) -> Vec<(u128, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn matches_trial_division() {
        for n in 1u128..5000 {
            assert_eq!(factorize(n).unwrap(), trial(n));
        }
    }

    #[test]
    fn large_semiprimes() {
        let p: u128 = 1_000_000_007;
        let q: u128 = 998_244_353;
        assert_eq!(factorize(p * q).unwrap(), vec![(q, 1), (p, 1)]);
        let r: u128 = 18_446_744_073_709_551_557; // largest prime below 2^64
        assert!(is_prime(r));
        assert_eq!(factorize(r * 3).unwrap(), vec![(3, 1), (r, 1)]);
        let (p1, p2) = (10_000_000_019u128, 100_000_000_003u128);
        assert!(is_prime(p1) && is_prime(p2));
        assert_eq!(factorize(p1 * p2 * 49).unwrap(), vec![(7, 2), (p1, 1), (p2, 1)]);
    }

    #[test]
    fn mersenne_127() {
        let m = (1u128 << 127) - 1;
        assert!(is_prime(m));
        assert_eq!(factorize(m).unwrap(), vec![(m, 1)]);
        assert_eq!(factorize(1 << 127).unwrap(), vec![(2, 127)]);
        assert!(factorize(0).is_err());
        assert!(factorize((1 << 127) + 1).is_err());
    }

    #[test]
    fn carmichael_numbers_are_composite() {
        for n in [561u128, 1105, 1729, 2465, 2821, 6601, 8911, 3_215_031_751] {
            assert!(!is_prime(n));
        }
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
    }

    proptest! {
        #[test]
        fn product_reconstructs(n in 1u128..(1u128 << 64)) {
            let f = factorize(n).unwrap();
            let mut prod = 1u128;
            for &(p, e) in &f {
                prop_assert!(is_prime(p));
                prod *= p.pow(e);
            }
            prop_assert_eq!(prod, n);
            prop_assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }
}

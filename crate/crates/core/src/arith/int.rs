use num_integer::Integer;

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// 2-adic valuation; `None` for zero.
pub fn v2(n: i128) -> Option<u32> {
    if n == 0 {
        None
    } else {
        Some(n.trailing_zeros())
    }
}

/// p-adic valuation; `None` for zero.
pub fn v_p(mut n: i128, p: i128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// `|n|` with every factor 2 removed. `odd_part(0) = 0`.
pub fn odd_part(n: i128) -> i128 {
    if n == 0 {
        0
    } else {
        let m = n.unsigned_abs();
        (m >> m.trailing_zeros()) as i128
    }
}

/// Greatest common divisor with all powers of 2 removed.
///
/// `odd_gcd(0, 0) = 0`; otherwise the result is a positive odd integer.
pub fn odd_gcd(a: i128, b: i128) -> i128 {
    odd_part(gcd_i128(a, b))
}

pub fn isqrt_u128(n: u128) -> u128 {
    n.isqrt()
}

pub fn is_square_u128(n: u128) -> Option<u128> {
    // Quadratic residues mod 64 reject most candidates cheaply.
    const QR64: u64 = 0x0202_0212_0203_0213;
    if (QR64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Primes `<= n` by an Eratosthenes sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_gcd_examples() {
        assert_eq!(odd_gcd(12, 18), 3);
        assert_eq!(odd_gcd(8, 16), 1);
        assert_eq!(odd_gcd(0, 45), 45);
        assert_eq!(odd_gcd(-30, 0), 15);
        assert_eq!(odd_gcd(0, 0), 0);
    }

    #[test]
    fn square_test_agrees_with_isqrt() {
        for n in 0u128..20_000 {
            let r = n.isqrt();
            assert_eq!(is_square_u128(n).is_some(), r * r == n, "n = {n}");
        }
    }

    #[test]
    fn sieve_counts() {
        assert_eq!(primes_up_to(100).len(), 25);
        assert_eq!(primes_up_to(10_000).len(), 1229);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn valuations() {
        assert_eq!(v2(48), Some(4));
        assert_eq!(v2(0), None);
        assert_eq!(v_p(-250, 5), Some(3));
        assert_eq!(odd_part(-96), 3);
    }
}

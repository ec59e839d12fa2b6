use super::forms::Fiber;
use crate::arith::gcd_i128;
use crate::error::{domain, Result};
use num_integer::Integer;

// Divisors below are always positive.
fn floor_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

/// `{(s, t): [k1 lambda1, ell] | s, k2 lambda2 | s - at, ell | t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    pub k1: i128,
    pub k2: i128,
    pub lambda1: i128,
    pub lambda2: i128,
    pub ell: i128,
}

impl Lattice {
    pub fn contains(&self, f: &Fiber, s: i128, t: i128) -> bool {
        let a = f.a() as i128;
        let m1 = (self.k1 * self.lambda1).lcm(&self.ell);
        s % m1 == 0 && (s - a * t) % (self.k2 * self.lambda2) == 0 && t % self.ell == 0
    }
}

/// Index of the lattice in `Z^2`:
/// `k1 k2 lambda1 lambda2 ell^2 / gcd(k1 k2 lambda1 lambda2, ell)`.
///
/// All parameters must be odd and positive, `k1 k2 lambda1 lambda2` coprime
/// to `ab`, and `k1 lambda1` coprime to `k2 lambda2` (as when they divide
/// `a^2 - b^2` and `a^2 + b^2` respectively).
pub fn lattice_det(l: &Lattice, f: &Fiber) -> Result<i128> {
    let ps = [l.k1, l.k2, l.lambda1, l.lambda2, l.ell];
    if ps.iter().any(|v| *v <= 0 || v % 2 == 0) {
        return domain(format!("lattice parameters must be odd and positive: {ps:?}"));
    }
    let k = l.k1 * l.k2 * l.lambda1 * l.lambda2;
    if gcd_i128(k, (f.a() * f.b()) as i128) != 1 {
        return domain("k1 k2 lambda1 lambda2 must be coprime to ab");
    }
    if gcd_i128(l.k1 * l.lambda1, l.k2 * l.lambda2) != 1 {
        return domain("k1 lambda1 and k2 lambda2 must be coprime");
    }
    Ok(k * l.ell * l.ell / gcd_i128(k, l.ell))
}

/// Lattice points `i u + j w` in the box `s_lo..=s_hi`, `t_lo..=t_hi`.
///
/// `u`, `w` is Gauss-reduced first so the number of scanned lines is about
/// `diameter * |u| / det + 1`.
#[cfg(test)]
pub(crate) fn for_each_in_box(
    u: (i128, i128),
    w: (i128, i128),
    (s_lo, s_hi): (i128, i128),
    (t_lo, t_hi): (i128, i128),
    visit: impl FnMut(i128, i128),
) {
    for_each_in_box_shifted((0, 0), u, w, (s_lo, s_hi), (t_lo, t_hi), visit)
}

/// Points of the coset `offset + lattice(u, w)` in the box.
pub(crate) fn for_each_in_box_shifted(
    offset: (i128, i128),
    mut u: (i128, i128),
    mut w: (i128, i128),
    (s_lo, s_hi): (i128, i128),
    (t_lo, t_hi): (i128, i128),
    mut visit: impl FnMut(i128, i128),
) {
    let (s_lo, s_hi) = (s_lo - offset.0, s_hi - offset.0);
    let (t_lo, t_hi) = (t_lo - offset.1, t_hi - offset.1);
    if s_lo > s_hi || t_lo > t_hi {
        return;
    }
    let norm = |v: (i128, i128)| v.0 * v.0 + v.1 * v.1;
    loop {
        if norm(w) < norm(u) {
            std::mem::swap(&mut u, &mut w);
        }
        let dot = u.0 * w.0 + u.1 * w.1;
        let nu = norm(u);
        // Nearest integer to dot / nu.
        let m = (2 * dot + nu).div_euclid(2 * nu);
        if m == 0 {
            break;
        }
        w = (w.0 - m * u.0, w.1 - m * u.1);
    }
    let det = u.0 * w.1 - u.1 * w.0;
    debug_assert!(det != 0);
    // j = (u_s p_t - u_t p_s) / det; extreme values are taken at corners.
    let corners = [(s_lo, t_lo), (s_lo, t_hi), (s_hi, t_lo), (s_hi, t_hi)];
    let jn: Vec<i128> = corners.iter().map(|&(s, t)| u.0 * t - u.1 * s).collect();
    let (jmin, jmax) = (*jn.iter().min().unwrap(), *jn.iter().max().unwrap());
    let (j_lo, j_hi) = if det > 0 {
        (ceil_div(jmin, det), floor_div(jmax, det))
    } else {
        let d = -det;
        (ceil_div(-jmax, d), floor_div(-jmin, d))
    };
    for j in j_lo..=j_hi {
        let (bs, bt) = (j * w.0, j * w.1);
        let mut lo = i128::MIN;
        let mut hi = i128::MAX;
        let mut ok = true;
        for (c, base, l, h) in [(u.0, bs, s_lo, s_hi), (u.1, bt, t_lo, t_hi)] {
            // l <= base + i c <= h
            if c == 0 {
                if base < l || base > h {
                    ok = false;
                }
            } else if c > 0 {
                lo = lo.max(ceil_div(l - base, c));
                hi = hi.min(floor_div(h - base, c));
            } else {
                let c = -c;
                lo = lo.max(ceil_div(base - h, c));
                hi = hi.min(floor_div(base - l, c));
            }
        }
        if !ok {
            continue;
        }
        let mut i = lo;
        while i <= hi {
            visit(offset.0 + bs + i * u.0, offset.1 + bt + i * u.1);
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_index(l: &Lattice, f: &Fiber) -> i128 {
        let m1 = (l.k1 * l.lambda1).lcm(&l.ell);
        let modulus = m1.lcm(&(l.k2 * l.lambda2)).lcm(&l.ell);
        let mut count = 0i128;
        for s in 0..modulus {
            for t in 0..modulus {
                if l.contains(f, s, t) {
                    count += 1;
                }
            }
        }
        modulus * modulus / count
    }

    #[test]
    fn det_matches_brute_force() {
        let f = Fiber::new(4, 1).unwrap();
        let mut checked = 0;
        for k1 in [1, 3, 5] {
            for k2 in [1, 3] {
                for l1 in [1, 3, 5] {
                    for l2 in [1, 5, 7] {
                        for ell in [1, 3, 9, 5] {
                            let l = Lattice { k1, k2, lambda1: l1, lambda2: l2, ell };
                            if let Ok(d) = lattice_det(&l, &f) {
                                assert_eq!(d, brute_index(&l, &f), "{l:?}");
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn det_rejects_even_or_shared_factors() {
        let f = Fiber::new(3, 1).unwrap();
        let l = Lattice { k1: 3, k2: 1, lambda1: 1, lambda2: 1, ell: 1 };
        assert!(lattice_det(&l, &f).is_err());
        let l = Lattice { k1: 1, k2: 1, lambda1: 2, lambda2: 1, ell: 1 };
        assert!(lattice_det(&l, &f).is_err());
    }

    proptest! {
        #[test]
        fn shifted_box_enumeration_is_exact(
            m in 1i128..30, c in 0i128..30, o in (-20i128..20, -20i128..20),
            s_lo in -40i128..10, sw in 0i128..60, t_lo in -5i128..10, tw in 0i128..30,
        ) {
            // Coset o + {(s, t): s = c t mod m, t even}.
            let mut got = Vec::new();
            for_each_in_box_shifted(o, (m, 0), (2 * c, 2), (s_lo, s_lo + sw), (t_lo, t_lo + tw), |s, t| got.push((s, t)));
            got.sort();
            let mut want = Vec::new();
            for t in t_lo..=t_lo + tw {
                for s in s_lo..=s_lo + sw {
                    let (ds, dt) = (s - o.0, t - o.1);
                    if dt.rem_euclid(2) == 0 && (ds - c * dt).rem_euclid(m) == 0 {
                        want.push((s, t));
                    }
                }
            }
            want.sort();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn box_enumeration_is_exact(
            l1 in 1i128..40, l2 in 1i128..40, c in 0i128..40,
            s_lo in -60i128..10, sw in 0i128..80, t_lo in -5i128..10, tw in 0i128..40,
        ) {
            // Lattice {(s, t): s = c t mod L} with L = l1 l2.
            let big = l1 * l2;
            let mut got = Vec::new();
            for_each_in_box((big, 0), (c, 1), (s_lo, s_lo + sw), (t_lo, t_lo + tw), |s, t| got.push((s, t)));
            got.sort();
            let mut want = Vec::new();
            for t in t_lo..=t_lo + tw {
                for s in s_lo..=s_lo + sw {
                    if (s - c * t).rem_euclid(big) == 0 {
                        want.push((s, t));
                    }
                }
            }
            want.sort();
            prop_assert_eq!(got, want);
        }
    }
}

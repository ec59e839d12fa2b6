use super::forms::{conic_forms, lambda_profile, Fiber};
use super::lattice::for_each_in_box_shifted;
use crate::arith::{divisors, gcd_i128, gcd_i64, is_square_u128, odd_part, v2};
use crate::error::{domain, Result};
use num_integer::Integer;

/// Positive `(x, y, z)` with `gcd(x, y) = 1` on `C_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberPoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

/// `M`: all points with `max{x, y} <= H`; `MHat`: also `xy != 1`;
/// `MTilde`: also `max{a, b} < max{x, y}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    M,
    MHat,
    MTilde,
}

impl Filter {
    pub fn keep(self, f: &Fiber, p: &FiberPoint) -> bool {
        match self {
            Filter::M => true,
            Filter::MHat => p.x * p.y != 1,
            Filter::MTilde => p.x * p.y != 1 && f.m() < p.x.max(p.y),
        }
    }
}

/// Every `(x, y)` in `[1, H]^2` with a square test for `z`.
pub fn fiber_count_naive(f: &Fiber, h: i64, filter: Filter) -> Result<Vec<FiberPoint>> {
    if h < 1 {
        return domain("H must be positive");
    }
    let (dm, dp) = (f.d_minus(), f.d_plus());
    let mut out = Vec::new();
    for x in 1..=h {
        for y in 1..=h {
            if gcd_i64(x, y) != 1 {
                continue;
            }
            let v = dm * (x as i128).pow(2) + dp * (y as i128).pow(2);
            if v <= 0 || v % 2 != 0 {
                continue;
            }
            if let Some(z) = is_square_u128((v / 2) as u128) {
                let p = FiberPoint { x, y, z: z as i64 };
                if filter.keep(f, &p) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Values of `nu` that `lambda_profile` can produce on this fiber.
fn nu_values(f: &Fiber) -> Vec<u32> {
    if (f.a() * f.b()) % 2 == 0 {
        vec![0, 1]
    } else {
        let vd = v2(f.d_minus()).expect("a != b");
        std::iter::once(1).chain(3..=vd).collect()
    }
}

/// Box containing `R(X)`.
///
/// For `a < b`, `-Q2 = 2s^2 + (b^2-a^2) t^2 <= X` bounds both coordinates.
///
/// For `a > b` put `D = a^2 - b^2`, `t' = sqrt(D) t`, `k = a / sqrt(D) >= 1`,
/// so `-Q2 = 2s^2 - t'^2` and `-Q1 = -2s^2 + 4k s t' - t'^2`. Both in
/// `(0, X]` forces `s > 0` and `s` between `t'/sqrt 2` and
/// `s_1 = sqrt((X + t'^2)/2)`. `-Q1` is concave in `s`, so its minimum on
/// that interval is at an endpoint; at `t'/sqrt 2` it is at least
/// `(2 sqrt 2 - 2) t'^2` and at `s_1` at least
/// `-X - 2t'^2 + 2 sqrt 2 sqrt(t'^2 (X + t'^2))`, which is increasing in
/// `t'^2` and exceeds `X` at `t'^2 = 2X`. So `D t^2 <= 2X` and
/// `2 s^2 <= X + D t^2 <= 3X`.
fn region_box(f: &Fiber, x: i128) -> ((i128, i128), (i128, i128)) {
    let d = f.d_minus();
    if d > 0 {
        let t_max = ((2 * x / d) as u128).isqrt() as i128;
        let s_max = ((3 * x / 2) as u128).isqrt() as i128;
        ((1, s_max), (1, t_max))
    } else {
        let t_max = ((x / -d) as u128).isqrt() as i128;
        let s_max = ((x / 2) as u128).isqrt() as i128;
        ((-s_max, s_max), (1, t_max))
    }
}

/// `c` with `c = 0 mod 2^e lambda1` and `c = a 2^f mod lambda2`.
fn crt_offset(a: i128, e: u32, f: u32, l1: i128, l2: i128) -> i128 {
    let m1 = l1 << e;
    if l2 == 1 {
        return 0;
    }
    let inv = m1.extended_gcd(&l2).x.rem_euclid(l2);
    m1 * ((a << f) * inv).rem_euclid(l2)
}

/// The lattice `{lambda1 | s, lambda2 | s - at, 2^e | s, 2^f | t}` as a basis.
fn sublattice(a: i128, e: u32, f: u32, l1: i128, l2: i128) -> ((i128, i128), (i128, i128)) {
    (((l1 * l2) << e, 0), (crt_offset(a, e, f, l1, l2), 1 << f))
}

/// A coset covering the `(s, t)` of one cell, with the parity part of the
/// profile built in: for even `ab`, `nu = 0` iff `t` is odd; for odd `ab`,
/// `nu = 1` iff `s` is odd and `nu >= 3` needs `2^{nu-2} | s`.
type Coset = ((i128, i128), (i128, i128), (i128, i128));

fn cell_coset(f: &Fiber, nu: u32, l1: i128, l2: i128) -> Coset {
    let a = f.a() as i128;
    let build = |offset: (i128, i128), e: u32, g: u32| {
        let (u, w) = sublattice(a, e, g, l1, l2);
        (offset, u, w)
    };
    if (f.a() * f.b()) % 2 == 0 {
        match nu {
            0 => build((crt_offset(a, 0, 0, l1, l2), 1), 0, 1),
            _ => build((0, 0), 0, 1),
        }
    } else {
        match nu {
            1 => build((l1 * l2, 0), 1, 0),
            k => build((0, 0), k - 2, 0),
        }
    }
}

/// Visit every point of `M_{a,b}(H)` via the line parametrisation.
///
/// Cells `(nu, lambda1, lambda2)` run over `lambda1 | odd(a^2-b^2)`,
/// `lambda2 | odd(a^2+b^2)`. In a cell the admissible `(s, t)` form the
/// lattice `lambda1 | s`, `lambda2 | s - at`, searched inside the box of
/// `R(X)` with `X = 2^nu lambda1 lambda2 H`; each candidate must be coprime,
/// off the excluded and tangent lines, inside `R(X)` and have exactly this
/// gcd profile. The line `s = at` is excluded and contributes the single
/// point `(1, 1, a)`, which is added directly.
pub fn for_each_param_point(f: &Fiber, h: i64, mut visit: impl FnMut(FiberPoint)) -> Result<()> {
    if h < 1 {
        return domain("H must be positive");
    }
    let a = f.a() as i128;
    let d = f.d_minus();
    let odd_d = odd_part(d);
    let odd_e = odd_part(f.d_plus());
    let l1s = divisors(odd_d as u128)?;
    let l2s = divisors(odd_e as u128)?;
    let h = h as i128;
    for nu in nu_values(f) {
        for &l1 in &l1s {
            let l1 = l1 as i128;
            for &l2 in &l2s {
                let l2 = l2 as i128;
                let lam = (l1 * l2) << nu;
                let x_lim = lam * h;
                let ((s_lo, s_hi), (t_lo, t_hi)) = region_box(f, x_lim);
                let s_abs = s_lo.abs().max(s_hi.abs());
                // s != 0 with l1 | s, and s - at != 0 with l2 | s - at.
                if l1 > s_abs || l2 > s_abs + a * t_hi {
                    continue;
                }
                let (offset, u, w) = cell_coset(f, nu, l1, l2);
                for_each_in_box_shifted(offset, u, w, (s_lo, s_hi), (t_lo, t_hi), |s, t| {
                    if s * (s - a * t) == 0 || 2 * a * s == d * t {
                        return;
                    }
                    let (q1, q2, q3) = conic_forms(f, s, t);
                    if q1 >= 0 || q2 >= 0 || q3 >= 0 || -q1 > x_lim || -q2 > x_lim {
                        return;
                    }
                    if gcd_i128(s, t) != 1 {
                        return;
                    }
                    let p = lambda_profile(f, s, t).expect("coprime");
                    if p.nu != nu || p.lambda1 != l1 || p.lambda2 != l2 {
                        return;
                    }
                    visit(FiberPoint { x: (-q1 / lam) as i64, y: (-q2 / lam) as i64, z: (-q3 / lam) as i64 });
                });
            }
        }
    }
    visit(FiberPoint { x: 1, y: 1, z: f.a() });
    Ok(())
}

/// `M_{a,b}(H)` from the parametrisation, filtered and sorted.
pub fn fiber_count_param(f: &Fiber, h: i64, filter: Filter) -> Result<Vec<FiberPoint>> {
    let mut out = Vec::new();
    for_each_param_point(f, h, |p| {
        if filter.keep(f, &p) {
            out.push(p);
        }
    })?;
    out.sort();
    Ok(out)
}

use crate::arith::{gcd_i128, gcd_i64, odd_gcd, v2};
use crate::error::{domain, Error, Result};
use crate::Q;

/// A fiber `(a, b)`: positive, coprime, `ab != 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fiber {
    a: i64,
    b: i64,
}

impl Fiber {
    pub fn new(a: i64, b: i64) -> Result<Fiber> {
        if a < 1 || b < 1 || gcd_i64(a, b) != 1 || a * b == 1 {
            return domain(format!("fiber ({a}, {b}) needs a, b >= 1 coprime with ab != 1"));
        }
        Ok(Fiber { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn m(&self) -> i64 {
        self.a.max(self.b)
    }

    /// `a^2 - b^2`
    pub fn d_minus(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a - b * b
    }

    /// `a^2 + b^2`
    pub fn d_plus(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a + b * b
    }

    /// Discriminant `-2 (a^4 - b^4)` of the ternary form.
    pub fn discriminant(&self) -> i128 {
        -2 * self.d_minus() * self.d_plus()
    }

    pub fn on_conic(&self, x: i128, y: i128, z: i128) -> bool {
        self.d_minus() * x * x + self.d_plus() * y * y == 2 * z * z
    }
}

/// `(Q1, Q2, Q3)` at `(s, t)`:
/// `Q1 = 2s^2 + (a^2-b^2) t^2 - 4ast`, `Q2 = -2s^2 + (a^2-b^2) t^2`,
/// `Q3 = -2as^2 + 2(a^2-b^2) st - a(a^2-b^2) t^2`.
pub fn conic_forms(f: &Fiber, s: i128, t: i128) -> (i128, i128, i128) {
    let a = f.a as i128;
    let d = f.d_minus();
    (2 * s * s + d * t * t - 4 * a * s * t, -2 * s * s + d * t * t, -2 * a * s * s + 2 * d * s * t - a * d * t * t)
}

/// `gcd(Q1, Q2) = 2^nu lambda1 lambda2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GcdProfile {
    pub nu: u32,
    pub lambda1: i128,
    pub lambda2: i128,
}

impl GcdProfile {
    pub fn lambda(&self) -> i128 {
        (self.lambda1 * self.lambda2) << self.nu
    }
}

/// Closed form for `gcd(Q1(s,t), Q2(s,t))` at coprime `(s, t)`:
/// `lambda1 = odd_gcd(s, a^2-b^2)`, `lambda2 = odd_gcd(s-at, a^2+b^2)` and
/// `nu` from the parities of `ab`, `s`, `t`.
pub fn lambda_profile(f: &Fiber, s: i128, t: i128) -> Result<GcdProfile> {
    if gcd_i128(s, t) != 1 {
        return Err(Error::NotCoprime(s, t));
    }
    let a = f.a as i128;
    let d = f.d_minus();
    let nu = if (f.a * f.b) % 2 == 0 {
        if t % 2 != 0 {
            0
        } else {
            1
        }
    } else if s % 2 != 0 {
        1
    } else {
        let vd = v2(d).expect("a != b");
        match v2(s) {
            Some(vs) => (2 + vs).min(vd),
            None => vd,
        }
    };
    Ok(GcdProfile { nu, lambda1: odd_gcd(s, d), lambda2: odd_gcd(s - a * t, f.d_plus()) })
}

/// The point `-(Q1, Q2, Q3) / gcd(Q1, Q2)` cut out by the line
/// `s x + (s - at) y - t z = 0` through `[1, -1, a]`.
pub fn param_to_point(f: &Fiber, s: i128, t: i128) -> Result<(i128, i128, i128)> {
    if gcd_i128(s, t) != 1 {
        return Err(Error::NotCoprime(s, t));
    }
    let a = f.a as i128;
    if s * (s - a * t) == 0 {
        return Err(Error::ExcludedLine);
    }
    if 2 * a * s == f.d_minus() * t {
        return Err(Error::TangentLine);
    }
    if t <= 0 {
        return Err(Error::WrongChamber);
    }
    let (q1, q2, q3) = conic_forms(f, s, t);
    if q1 >= 0 || q2 >= 0 || q3 >= 0 {
        return Err(Error::WrongChamber);
    }
    let lam = gcd_i128(q1, q2);
    if q3 % lam != 0 {
        return Err(Error::Overflow(format!("Q3 not divisible by gcd at ({s}, {t})")));
    }
    Ok((-q1 / lam, -q2 / lam, -q3 / lam))
}

/// Membership in `R(X) = {t > 0, Q3 < 0, 0 > Q1, Q2 >= -X}` minus the
/// excluded and tangent lines.
pub fn region_contains(f: &Fiber, x: Q, s: i128, t: i128) -> bool {
    if t <= 0 {
        return false;
    }
    let a = f.a as i128;
    if s * (s - a * t) == 0 || 2 * a * s == f.d_minus() * t {
        return false;
    }
    let (q1, q2, q3) = conic_forms(f, s, t);
    let within = |q: i128| q < 0 && -q * *x.denom() <= *x.numer();
    q3 < 0 && within(q1) && within(q2)
}

use super::factor::{divisors, factorize, is_prime};
use crate::error::{Error, Result};
use crate::Q;
use num_traits::{One, Zero};

/// Arithmetic functions used by the main-term machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultFun {
    One,
    Mu,
    Tau,
    TauK(u32),
    Phi,
    /// `phi(n) / n`
    PhiStar,
    /// `prod_{p | n} (1 + 1/p)`
    PhiDagger,
    G,
    H,
    /// `1 * h`
    OneStarH,
}

fn check_prime(p: u128) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

/// `g(p^nu)`.
pub fn g_value(p: u128, nu: u32) -> Result<Q> {
    check_prime(p)?;
    Ok(g_pp(p as i128, nu))
}

/// `h(p^nu)` where `g = h * tau`.
pub fn h_value(p: u128, nu: u32) -> Result<Q> {
    check_prime(p)?;
    Ok(h_pp(p as i128, nu))
}

fn g_pp(p: i128, nu: u32) -> Q {
    if p == 2 {
        q((nu as i128 - 1).max(1))
    } else {
        Q::one() + Q::new(nu as i128 * (p - 1), p + 1)
    }
}

fn h_pp(p: i128, nu: u32) -> Q {
    match (p, nu) {
        (_, 0) => Q::one(),
        (2, 1) => q(-1),
        (2, 3) => Q::one(),
        (2, _) => Q::zero(),
        (_, 1) => Q::new(-2, p + 1),
        _ => Q::zero(),
    }
}

fn binom(n: i128, k: i128) -> i128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl MultFun {
    /// Value at the prime power `p^e`; `p` is assumed prime.
    pub fn at_prime_power(self, p: u128, e: u32) -> Q {
        let p = p as i128;
        if e == 0 {
            return Q::one();
        }
        match self {
            MultFun::One => Q::one(),
            MultFun::Mu => {
                if e == 1 {
                    q(-1)
                } else {
                    Q::zero()
                }
            }
            MultFun::Tau => q(e as i128 + 1),
            MultFun::TauK(k) => q(binom(e as i128 + k as i128 - 1, k as i128 - 1)),
            MultFun::Phi => q(p.pow(e) - p.pow(e - 1)),
            MultFun::PhiStar => Q::new(p - 1, p),
            MultFun::PhiDagger => Q::new(p + 1, p),
            MultFun::G => g_pp(p, e),
            MultFun::H => h_pp(p, e),
            MultFun::OneStarH => (0..=e).map(|j| h_pp(p, j)).sum(),
        }
    }

    /// Value at `n >= 1` via the factorisation.
    pub fn eval(self, n: u128) -> Result<Q> {
        Ok(factorize(n)?.into_iter().map(|(p, e)| self.at_prime_power(p, e)).product())
    }
}

/// `(f * g)(n) = sum_{d | n} f(d) g(n / d)` by direct divisor sum.
pub fn dirichlet_convolve(f: MultFun, g: MultFun, n: u128) -> Result<Q> {
    let mut acc = Q::zero();
    for d in divisors(n)? {
        acc += f.eval(d)? * g.eval(n / d)?;
    }
    Ok(acc)
}

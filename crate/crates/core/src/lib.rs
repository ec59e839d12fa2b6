//! Rational point counting on the quartic del Pezzo surface
//! `x0*x1 = x2*x3`, `x0^2 + x1^2 + x2^2 = x3^2 + 2*x4^2`,
//! together with the conic-bundle engine used to count it fast
//! and the local and archimedean pieces of its leading constant.

pub mod arith;
pub mod cli;
pub mod constants;
pub mod error;
pub mod fibration;
pub mod nefcone;
pub mod par;
pub mod surface;

pub use error::{Error, Result};

/// Exact rationals used throughout.
pub type Q = num_rational::Ratio<i128>;

/// Nearest `f64` to a ratio, up to one rounding of each part.
pub fn q_to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

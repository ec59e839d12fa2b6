//! Integer and multiplicative-function utilities.

mod factor;
mod int;
mod multfun;

pub use factor::{divisors, factorize, is_prime};
pub use int::{gcd_i128, gcd_i64, is_square_u128, isqrt_u128, odd_gcd, odd_part, primes_up_to, v2, v_p};
pub use multfun::{dirichlet_convolve, g_value, h_value, MultFun};

//! The surface `X: x0 x1 = x2 x3, x0^2 + x1^2 + x2^2 = x3^2 + 2 x4^2`, its
//! sixteen lines and brute-force point counts.

mod count;
mod point;
mod strata;

pub use count::{count_n1_naive, count_naive, CountReport};
pub use point::{in_u, lines_through, Line, Point5};
pub use strata::{strata_fast, stratum_x4_fast, stratum_zero_fast, StrataCounts};

//! The conic bundle `(x, y, z) in C_{a,b}: (a^2 - b^2) x^2 + (a^2 + b^2) y^2 = 2 z^2`
//! and its parametrisation by lines through `[1, -1, a]`.

mod cells;
mod fast;
mod forms;
mod lattice;

pub use cells::{fiber_count_naive, fiber_count_param, for_each_param_point, FiberPoint, Filter};
pub use fast::{count_n1_diagonal, count_n1_fast};
pub use forms::{conic_forms, lambda_profile, param_to_point, region_contains, Fiber, GcdProfile};
pub use lattice::{lattice_det, Lattice};

//! Picard-lattice geometry: lines, Galois orbits, nef cones and exact
//! polytope volumes.

pub mod action;
pub mod alpha;
pub mod linalg;
pub mod pic;
pub mod polytope;
pub mod w0;

pub use action::{effective_generators, invariant_lattice, orbit_decompose, GroupAction, InvariantLattice, Orbits};
pub use alpha::{alpha, alpha_with, AlphaReport, Normalization};
pub use pic::{LineClassSet, PicLattice};
pub use polytope::{polytope_volume, vertices_from_hrep, HalfSpace, RationalPolytope, Volume};
pub use w0::vol_w0;

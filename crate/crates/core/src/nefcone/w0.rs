//! The region `W0` of the main-term analysis.
//!
//! `W` is cut out of `[0, 1]^4` by
//! `w1 + w2 + w4 <= 1 + 2 w3`, `2 w3 + w4 <= 1 + w1 + w2`,
//! `3 w4 <= 1 + w1 + w2 + 2 w3` and `w1 + w2 + 2 w3 <= 1 + w4`;
//! `W0` adds `max(w1, w2, w3) <= w4 <= 1/2`.

use super::polytope::{vertices_from_hrep, volume_with_facets, HalfSpace};
use crate::Q;

/// Half-spaces of `W` (including the unit box).
pub fn w_halfspaces() -> Vec<HalfSpace> {
    let mut out = Vec::new();
    for i in 0..4 {
        let mut e = [0i128; 4];
        e[i] = 1;
        out.push(HalfSpace::from_ints(&e, 0));
        e[i] = -1;
        out.push(HalfSpace::from_ints(&e, 1));
    }
    for (a, b) in [([-1, -1, 2, -1], 1), ([1, 1, -2, -1], 1), ([1, 1, 2, -3], 1), ([-1, -1, -2, 1], 1)] {
        out.push(HalfSpace::from_ints(&a, b));
    }
    out
}

/// `W` together with `w4 >= w1, w2, w3`, optionally with `w4 <= 1/2`.
pub fn w0_halfspaces(cap_half: bool) -> Vec<HalfSpace> {
    let mut out = w_halfspaces();
    for i in 0..3 {
        let mut a = [0i128, 0, 0, 1];
        a[i] = -1;
        out.push(HalfSpace::from_ints(&a, 0));
    }
    if cap_half {
        out.push(HalfSpace::from_ints(&[0, 0, 0, -2], 1));
    }
    out
}

pub fn region_vertices(h: &[HalfSpace]) -> Vec<Vec<Q>> {
    vertices_from_hrep(h, &[], 4)
}

pub fn region_volume(h: &[HalfSpace]) -> Q {
    volume_with_facets(&region_vertices(h), h, 4)
}

/// `vol(W0)`.
pub fn vol_w0() -> Q {
    region_volume(&w0_halfspaces(true))
}

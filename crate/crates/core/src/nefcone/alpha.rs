//! The nef-cone volume `alpha(X)`.
//!
//! `Pic(X)` is the invariant sublattice with integral basis `B`. The
//! effective cone is generated by the orbit sums `D_j`, and the nef cone is
//! its dual. Two ways of dualising are offered:
//!
//! * [`Normalization::DualLattice`] works in `Pic(X)^v = Hom(Pic(X), Z)`:
//!   `Nef = {y : y(D_j) >= 0}`, sliced by `y(-K) = 1`, with the measure in
//!   which `{y in Pic(X)^v : y(-K) = 0}` has covolume one.
//! * The pairing conventions identify `Pic(X)` with its dual through the
//!   intersection form: `Nef = {x in Pic(X) : (x, D_j) >= 0}`, sliced by
//!   `(x, -K) = 1`. [`Normalization::PairingSlice`] measures the slice by the
//!   lattice `{x : (x, -K) = 0}`; [`Normalization::PairingCone`] takes `rank`
//!   times the volume of `Nef` cut by `(x, -K) <= 1`.
//!
//! Writing the slice constraint as `phi . c = 1` and projecting away a
//! coordinate `j` with `phi_j != 0`, the projected volume `V` gives
//! `V gcd(phi) / |phi_j|` for the two lattice-slice measures and
//! `V / |phi_j|` for the cone measure.
//!
//! The two pairing conventions agree when the restricted form is
//! unimodular, for example without any Galois action. They differ from the
//! dual-lattice measure by the index of `Pic(X)` in its dual under the
//! form, which is 2 for the action that swaps `e4` and `e5`.

use super::action::{effective_generators, invariant_lattice, orbit_decompose, GroupAction};
use super::linalg::{affine_dim, to_q};
use super::pic::PicLattice;
use super::polytope::{vertices_from_hrep, volume_with_facets, HalfSpace};
use crate::error::{domain, Result};
use crate::Q;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    DualLattice,
    PairingSlice,
    PairingCone,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::DualLattice => "dual-lattice-slice",
            Normalization::PairingSlice => "pairing-slice-lattice",
            Normalization::PairingCone => "pairing-cone-scaled",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaReport {
    pub alpha: Q,
    pub rank: usize,
    pub n_rational_lines: usize,
    pub orbit_signature: String,
    pub normalization: Normalization,
    pub n_vertices: usize,
}

/// `alpha(X)` in the dual-lattice normalisation.
pub fn alpha(action: &GroupAction, degree: u32) -> Result<AlphaReport> {
    alpha_with(action, degree, Normalization::DualLattice)
}

pub fn alpha_with(action: &GroupAction, degree: u32, norm: Normalization) -> Result<AlphaReport> {
    let pic = PicLattice::new(degree)?;
    let lines = pic.lines();
    let orbits = orbit_decompose(action, &pic, &lines)?;
    let inv = invariant_lattice(action, &pic, &lines)?;
    let gens = effective_generators(&orbits, &lines, &inv);
    let k = inv.rank();
    let kc = inv.coords(&pic.minus_k).expect("-K is invariant");

    let (rows, phi): (Vec<Vec<i128>>, Vec<i128>) = match norm {
        Normalization::DualLattice => (gens, kc),
        Normalization::PairingSlice | Normalization::PairingCone => {
            let ambient = |c: &[i128]| -> Vec<i128> {
                (0..pic.rank).map(|i| inv.basis.iter().zip(c).map(|(b, x)| b[i] * x).sum()).collect()
            };
            let functional = |v: &[i128]| -> Vec<i128> { inv.basis.iter().map(|b| pic.pair(b, v)).collect() };
            let rows = gens.iter().map(|g| functional(&ambient(g))).collect();
            (rows, functional(&pic.minus_k))
        }
    };

    let report = |alpha: Q, n_vertices: usize| AlphaReport {
        alpha,
        rank: k,
        n_rational_lines: orbits.n_singletons(),
        orbit_signature: orbits.signature(),
        normalization: norm,
        n_vertices,
    };

    let ineqs: Vec<HalfSpace> = rows.iter().map(|r| HalfSpace::from_ints(r, 0)).collect();
    let slice = HalfSpace::from_ints(&phi, -1);
    let verts = vertices_from_hrep(&ineqs, std::slice::from_ref(&slice), k);
    if verts.is_empty() {
        return domain("the nef cone has empty interior");
    }
    if k == 1 {
        // A single point; its volume is 1 by convention.
        return Ok(report(Q::one(), verts.len()));
    }

    let j = phi.iter().position(|&x| x != 0).expect("-K is nonzero");
    let pj = Q::from_integer(phi[j]);
    let project = |v: &Vec<Q>| -> Vec<Q> { v.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, x)| *x).collect() };
    let proj: Vec<Vec<Q>> = verts.iter().map(project).collect();
    let refs: Vec<&Vec<Q>> = proj.iter().collect();
    if affine_dim(&refs) != Some(k - 1) {
        return domain("the nef cone has empty interior");
    }
    // a . y >= 0 with y_j = (1 - sum_{i != j} phi_i y_i) / phi_j.
    let phi_q = to_q(&phi);
    let facets: Vec<HalfSpace> = rows
        .iter()
        .map(|r| {
            let aj = Q::from_integer(r[j]);
            let a = (0..k).filter(|&i| i != j).map(|i| Q::from_integer(r[i]) - aj * phi_q[i] / pj).collect();
            HalfSpace::new(a, aj / pj)
        })
        .collect();
    let v = volume_with_facets(&proj, &facets, k - 1);
    let g = phi.iter().fold(0i128, |g, x| g.gcd(x));
    let scale = match norm {
        Normalization::DualLattice | Normalization::PairingSlice => Q::new(g, phi[j].abs()),
        Normalization::PairingCone => Q::new(1, phi[j].abs()),
    };
    debug_assert!(!v.is_zero());
    Ok(report(v * scale, verts.len()))
}

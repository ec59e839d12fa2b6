//! Exact volumes of rational polytopes.

use super::linalg::{affine_dim, det_int, det_q, for_each_subset, rank_q, sub_row};
use crate::Q;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// The half-space `a . x + b >= 0` (or the hyperplane `= 0` when used as an equality).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfSpace {
    pub a: Vec<Q>,
    pub b: Q,
}

impl HalfSpace {
    pub fn new(a: Vec<Q>, b: Q) -> Self {
        HalfSpace { a, b }
    }

    pub fn from_ints(a: &[i128], b: i128) -> Self {
        HalfSpace::new(a.iter().map(|&x| Q::from_integer(x)).collect(), Q::from_integer(b))
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.a.iter().zip(x).map(|(a, x)| a * x).sum::<Q>() + self.b
    }

    /// Integer multiple with coprime entries and the same orientation.
    fn normalized(&self) -> (Vec<i128>, i128) {
        let lcm = self.a.iter().chain(std::iter::once(&self.b)).fold(1i128, |l, x| l.lcm(x.denom()));
        let ints: Vec<i128> =
            self.a.iter().chain(std::iter::once(&self.b)).map(|x| (x * Q::from_integer(lcm)).to_integer()).collect();
        let g = ints.iter().fold(0i128, |g, x| g.gcd(x)).max(1);
        let (a, b) = ints.split_at(ints.len() - 1);
        (a.iter().map(|x| x / g).collect(), b[0] / g)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalPolytope {
    pub vertices: Vec<Vec<Q>>,
    pub ambient_dim: usize,
    pub affine_dim: usize,
}

/// A volume together with a flag for lower-dimensional input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Volume {
    pub value: Q,
    pub degenerate: bool,
}

impl RationalPolytope {
    /// Convex hull of `points`: duplicates and non-extreme points are dropped
    /// when the hull is full-dimensional.
    pub fn from_points(points: Vec<Vec<Q>>) -> Self {
        let ambient_dim = points.first().map_or(0, |p| p.len());
        let unique: Vec<Vec<Q>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let refs: Vec<&Vec<Q>> = unique.iter().collect();
        let affine_dim = affine_dim(&refs).unwrap_or(0);
        let mut poly = RationalPolytope { vertices: unique, ambient_dim, affine_dim };
        if poly.is_full() && !poly.vertices.is_empty() {
            let facets = facets_from_vertices(&poly.vertices, ambient_dim);
            poly.vertices.retain(|v| is_extreme(v, &facets, ambient_dim));
        }
        poly
    }

    fn is_full(&self) -> bool {
        self.affine_dim == self.ambient_dim
    }

    /// Whether every listed point is a vertex of the hull.
    pub fn is_irredundant(&self) -> bool {
        if !self.is_full() {
            return true;
        }
        let facets = facets_from_vertices(&self.vertices, self.ambient_dim);
        self.vertices.iter().all(|v| is_extreme(v, &facets, self.ambient_dim))
    }
}

fn is_extreme(v: &[Q], facets: &[HalfSpace], dim: usize) -> bool {
    let normals: Vec<Vec<Q>> = facets.iter().filter(|f| f.eval(v).is_zero()).map(|f| f.a.clone()).collect();
    rank_q(&normals) == dim
}

/// Facets of the hull of full-dimensional `vertices` by testing every
/// hyperplane through `dim` of them.
pub fn facets_from_vertices(vertices: &[Vec<Q>], dim: usize) -> Vec<HalfSpace> {
    let mut found: BTreeSet<(Vec<i128>, i128)> = BTreeSet::new();
    for_each_subset(vertices.len(), dim, &mut |idx| {
        let p0 = &vertices[idx[0]];
        let diffs: Vec<Vec<Q>> =
            idx[1..].iter().map(|&i| vertices[i].iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
        // Normal by cofactor expansion along a virtual first row.
        let normal: Vec<Q> = (0..dim)
            .map(|j| {
                let minor: Vec<Vec<Q>> = diffs
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| *x).collect())
                    .collect();
                let d = det_q(&minor);
                if j % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect();
        if normal.iter().all(|x| x.is_zero()) {
            return;
        }
        let b = -normal.iter().zip(p0).map(|(n, x)| n * x).sum::<Q>();
        let h = HalfSpace::new(normal, b);
        let vals: Vec<Q> = vertices.iter().map(|v| h.eval(v)).collect();
        let h = if vals.iter().all(|x| !x.is_negative()) {
            h
        } else if vals.iter().all(|x| !x.is_positive()) {
            HalfSpace::new(h.a.iter().map(|x| -x).collect(), -h.b)
        } else {
            return;
        };
        found.insert(h.normalized());
    });
    found.into_iter().map(|(a, b)| HalfSpace::from_ints(&a, b)).collect()
}

/// Vertices of `{x : ineqs >= 0, eqs = 0}` in `R^dim`, assumed bounded.
/// Candidate vertices come from every choice of `dim - #eqs` inequalities
/// made tight; a floating-point solve screens out singular and infeasible
/// choices and survivors are solved exactly by Cramer's rule.
pub fn vertices_from_hrep(ineqs: &[HalfSpace], eqs: &[HalfSpace], dim: usize) -> Vec<Vec<Q>> {
    let to_int = |h: &HalfSpace| h.normalized();
    let ineq_i: Vec<(Vec<i128>, i128)> = ineqs.iter().map(to_int).collect();
    let eq_i: Vec<(Vec<i128>, i128)> = eqs.iter().map(to_int).collect();
    let mut out: BTreeSet<Vec<Q>> = BTreeSet::new();
    let free = dim.saturating_sub(eqs.len());
    for_each_subset(ineq_i.len(), free, &mut |idx| {
        let rows: Vec<&(Vec<i128>, i128)> = idx.iter().map(|&i| &ineq_i[i]).chain(eq_i.iter()).collect();
        let Some(approx) = solve_f64(&rows, dim) else { return };
        let feasible = ineq_i
            .iter()
            .all(|(a, b)| a.iter().zip(&approx).map(|(a, x)| *a as f64 * x).sum::<f64>() + *b as f64 >= -1e-7);
        if !feasible {
            return;
        }
        let m: Vec<Vec<i128>> = rows.iter().map(|(a, _)| a.clone()).collect();
        let rhs: Vec<i128> = rows.iter().map(|(_, b)| -b).collect();
        let det = det_int(&m);
        if det == 0 {
            return;
        }
        let x: Vec<Q> = (0..dim)
            .map(|j| {
                let mj: Vec<Vec<i128>> = m
                    .iter()
                    .zip(&rhs)
                    .map(|(r, &v)| r.iter().enumerate().map(|(c, &e)| if c == j { v } else { e }).collect())
                    .collect();
                Q::new(det_int(&mj), det)
            })
            .collect();
        if ineqs.iter().all(|h| !h.eval(&x).is_negative()) {
            out.insert(x);
        }
    });
    out.into_iter().collect()
}

fn solve_f64(rows: &[&(Vec<i128>, i128)], dim: usize) -> Option<Vec<f64>> {
    let mut a: Vec<Vec<f64>> =
        rows.iter().map(|(r, b)| r.iter().map(|&x| x as f64).chain(std::iter::once(-*b as f64)).collect()).collect();
    let n = dim;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[p][k].abs() < 1e-9 {
            return None;
        }
        a.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            sub_row(&mut a, i, k, f, k);
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (a[k][n] - s) / a[k][k];
    }
    Some(x)
}

/// Pulling triangulation: cone the lowest-indexed vertex over every facet
/// that misses it, recursively. Returns simplices as vertex index lists.
pub fn triangulate(vertices: &[Vec<Q>], facets: &[HalfSpace], dim: usize) -> Vec<Vec<usize>> {
    let tight: Vec<Vec<bool>> = vertices.iter().map(|v| facets.iter().map(|f| f.eval(v).is_zero()).collect()).collect();
    let mut out = Vec::new();
    let all: Vec<usize> = (0..vertices.len()).collect();
    pull(vertices, &tight, &all, dim, &mut Vec::new(), &mut out);
    out
}

fn pull(
    vertices: &[Vec<Q>],
    tight: &[Vec<bool>],
    face: &[usize],
    dim: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v0 = face[0];
    prefix.push(v0);
    if dim == 0 {
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in 0..tight[0].len() {
        let sub: Vec<usize> = face.iter().copied().filter(|&v| tight[v][f]).collect();
        if sub.len() < dim || sub.len() == face.len() || sub.contains(&v0) {
            continue;
        }
        let refs: Vec<&Vec<Q>> = sub.iter().map(|&v| &vertices[v]).collect();
        if affine_dim(&refs) != Some(dim - 1) || !seen.insert(sub.clone()) {
            continue;
        }
        pull(vertices, tight, &sub, dim - 1, prefix, out);
    }
    prefix.pop();
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Volume of a full-dimensional polytope with known facets.
pub fn volume_with_facets(vertices: &[Vec<Q>], facets: &[HalfSpace], dim: usize) -> Q {
    if dim == 0 {
        return Q::one();
    }
    let mut total = Q::zero();
    for simplex in triangulate(vertices, facets, dim) {
        let v0 = &vertices[simplex[0]];
        let m: Vec<Vec<Q>> =
            simplex[1..].iter().map(|&i| vertices[i].iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
        total += det_q(&m).abs();
    }
    total / Q::from_integer(factorial(dim))
}

/// Exact volume; lower-dimensional input has volume zero and is flagged.
pub fn polytope_volume(p: &RationalPolytope) -> Volume {
    if p.vertices.is_empty() || !p.is_full() {
        return Volume { value: Q::zero(), degenerate: true };
    }
    let facets = facets_from_vertices(&p.vertices, p.ambient_dim);
    Volume { value: volume_with_facets(&p.vertices, &facets, p.ambient_dim), degenerate: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nefcone::linalg::to_q;
    use proptest::prelude::*;

    fn cube(d: usize) -> Vec<Vec<Q>> {
        (0..1u32 << d).map(|m| (0..d).map(|i| Q::from_integer(((m >> i) & 1) as i128)).collect()).collect()
    }

    fn simplex(d: usize) -> Vec<Vec<Q>> {
        let mut v = vec![vec![Q::zero(); d]];
        for i in 0..d {
            let mut e = vec![Q::zero(); d];
            e[i] = Q::one();
            v.push(e);
        }
        v
    }

    #[test]
    fn unit_shapes() {
        for d in 1..=5 {
            let s = polytope_volume(&RationalPolytope::from_points(simplex(d)));
            assert_eq!(s.value, Q::new(1, factorial(d)));
            assert!(!s.degenerate);
        }
        for d in 1..=4 {
            assert_eq!(polytope_volume(&RationalPolytope::from_points(cube(d))).value, Q::one());
        }
    }

    #[test]
    fn degenerate_input_is_flagged() {
        let flat = vec![to_q(&[0, 0, 0]), to_q(&[1, 0, 0]), to_q(&[0, 1, 0]), to_q(&[1, 1, 0])];
        let v = polytope_volume(&RationalPolytope::from_points(flat));
        assert_eq!(v, Volume { value: Q::zero(), degenerate: true });
    }

    #[test]
    fn interior_points_are_dropped() {
        let mut pts = cube(3);
        pts.push(vec![Q::new(1, 2); 3]);
        pts.push(to_q(&[1, 1, 1]));
        let p = RationalPolytope::from_points(pts);
        assert_eq!(p.vertices.len(), 8);
        assert!(p.is_irredundant());
    }

    #[test]
    fn hrep_round_trip() {
        // The cube [0, 2]^3 cut by x + y + z <= 5.
        let mut ineqs = Vec::new();
        for i in 0..3 {
            let mut e = [0i128; 3];
            e[i] = 1;
            ineqs.push(HalfSpace::from_ints(&e, 0));
            e[i] = -1;
            ineqs.push(HalfSpace::from_ints(&e, 2));
        }
        ineqs.push(HalfSpace::from_ints(&[-1, -1, -1], 5));
        let verts = vertices_from_hrep(&ineqs, &[], 3);
        assert_eq!(verts.len(), 10);
        let vol = polytope_volume(&RationalPolytope::from_points(verts)).value;
        assert_eq!(vol, Q::from_integer(8) - Q::new(1, 6));
    }

    fn unimodular(ops: &[(usize, usize, i128)], d: usize) -> Vec<Vec<i128>> {
        let mut m: Vec<Vec<i128>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i128).collect()).collect();
        for &(i, j, k) in ops {
            if i != j {
                sub_row(&mut m, i, j, -k, 0);
            }
        }
        m
    }

    proptest! {
        #[test]
        fn volume_is_unimodular_invariant(
            pts in proptest::collection::vec(proptest::collection::vec(-3i128..4, 3), 5..9),
            ops in proptest::collection::vec((0usize..3, 0usize..3, -2i128..3), 0..6),
        ) {
            let p = RationalPolytope::from_points(pts.iter().map(|v| to_q(v)).collect());
            let m = unimodular(&ops, 3);
            let moved: Vec<Vec<Q>> = pts
                .iter()
                .map(|v| to_q(&(0..3).map(|i| (0..3).map(|j| m[i][j] * v[j]).sum()).collect::<Vec<i128>>()))
                .collect();
            let q = RationalPolytope::from_points(moved);
            prop_assert_eq!(polytope_volume(&p), polytope_volume(&q));
        }
    }
}

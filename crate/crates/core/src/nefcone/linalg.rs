//! Small exact linear algebra over `Z` and `Q`.

use crate::Q;
use num_traits::Zero;
use std::ops::{Mul, Sub};

/// `a[dst][from..] -= f * a[src][from..]` for `dst != src`.
pub fn sub_row<T>(a: &mut [Vec<T>], dst: usize, src: usize, f: T, from: usize)
where
    T: Copy + Sub<Output = T> + Mul<Output = T>,
{
    let (d, s) = if dst < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, &y) in d[from..].iter_mut().zip(&s[from..]) {
        *x = *x - f * y;
    }
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn det_int(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Determinant over `Q` by Gaussian elimination.
pub fn det_q(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::from_integer(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Q::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f.is_zero() {
                continue;
            }
            sub_row(&mut a, i, k, f, k);
        }
    }
    det
}

/// Rank of a list of rational vectors.
pub fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c] / a[rank][c];
                sub_row(&mut a, i, rank, f, c);
            }
        }
        rank += 1;
    }
    rank
}

/// Affine dimension of a point set (`-1` reported as `None` for the empty set).
pub fn affine_dim(points: &[&Vec<Q>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Q>> = rest.iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    Some(rank_q(&diffs))
}

/// Solve `B c = v` for `B` with full column rank (`B` given by columns).
/// Returns `None` when `v` is outside the column span.
pub fn solve_columns(cols: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let n = v.len();
    let k = cols.len();
    // Augmented rows [B | v].
    let mut a: Vec<Vec<Q>> = (0..n).map(|i| cols.iter().map(|c| c[i]).chain(std::iter::once(v[i])).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..k {
        let p = (row..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(row, p);
        let lead = a[row][c];
        for x in &mut a[row][c..] {
            *x /= lead;
        }
        for i in 0..n {
            if i != row && !a[i][c].is_zero() {
                let f = a[i][c];
                sub_row(&mut a, i, row, f, c);
            }
        }
        pivots.push(row);
        row += 1;
    }
    if (row..n).any(|r| !a[r][k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| a[r][k]).collect())
}

/// A basis of `{x in Z^n : A x = 0}` by unimodular column reduction, so the
/// basis spans the full (saturated) integer kernel.
pub fn integer_kernel(a: &[Vec<i128>], n: usize) -> Vec<Vec<i128>> {
    let mut a: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    // u is stored by rows; column j of u is (u[0][j], ..., u[n-1][j]).
    let col_op = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        for row in m.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let swap = |m: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut piv = 0;
    for r in 0..a.len() {
        if piv == n {
            break;
        }
        loop {
            let best = (piv..n).filter(|&j| a[r][j] != 0).min_by_key(|&j| a[r][j].abs());
            let Some(j) = best else { break };
            swap(&mut a, piv, j);
            swap(&mut u, piv, j);
            let mut done = true;
            for j in piv + 1..n {
                if a[r][j] != 0 {
                    let f = a[r][j] / a[r][piv];
                    col_op(&mut a, j, piv, f);
                    col_op(&mut u, j, piv, f);
                    done &= a[r][j] == 0;
                }
            }
            if done {
                piv += 1;
                break;
            }
        }
    }
    (piv..n).map(|j| (0..n).map(|i| u[i][j]).collect()).collect()
}

pub fn to_q(v: &[i128]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_integer(x)).collect()
}

/// Call `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k <= n {
        rec(n, k, 0, &mut Vec::new(), f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn integer_and_rational_determinants_agree(m in proptest::collection::vec(proptest::collection::vec(-5i128..5, 4), 4)) {
            let q: Vec<Vec<Q>> = m.iter().map(|r| to_q(r)).collect();
            prop_assert_eq!(Q::from_integer(det_int(&m)), det_q(&q));
        }

        #[test]
        fn kernel_is_exact_and_saturated(m in proptest::collection::vec(proptest::collection::vec(-4i128..4, 5), 1..4)) {
            let ker = integer_kernel(&m, 5);
            for v in &ker {
                for row in &m {
                    prop_assert_eq!(row.iter().zip(v).map(|(a, b)| a * b).sum::<i128>(), 0);
                }
            }
            let rows: Vec<Vec<Q>> = m.iter().map(|r| to_q(r)).collect();
            prop_assert_eq!(ker.len(), 5 - rank_q(&rows));
            // Saturation: the gcd of maximal minors of the kernel basis is 1.
            if !ker.is_empty() && ker.len() < 5 {
                let k = ker.len();
                let mut all = 0i128;
                for_each_subset(5, k, &mut |cols| {
                    let minor: Vec<Vec<i128>> = ker.iter().map(|v| cols.iter().map(|&c| v[c]).collect()).collect();
                    all = num_integer::gcd(all, det_int(&minor));
                });
                prop_assert_eq!(all, 1);
            }
        }
    }

    #[test]
    fn solve_recovers_coordinates() {
        let cols = vec![to_q(&[1, 0, 0, 1]), to_q(&[0, 1, 1, 0])];
        assert_eq!(solve_columns(&cols, &to_q(&[2, 3, 3, 2])), Some(to_q(&[2, 3])));
        assert_eq!(solve_columns(&cols, &to_q(&[1, 0, 0, 0])), None);
    }
}

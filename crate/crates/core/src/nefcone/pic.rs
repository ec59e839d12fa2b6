//! The geometric Picard lattice of a del Pezzo surface of degree 3 or 4,
//! in the basis `(l, e1, ..., er)` of a blow-up of the plane in `r` points.

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicLattice {
    pub degree: u32,
    pub rank: usize,
    pub pairing: Vec<Vec<i128>>,
    pub minus_k: Vec<i128>,
}

/// The exceptional curves, in a fixed order: `e_i`, then `l - e_i - e_j`
/// for `i < j`, then the conics `2l - (sum of five e's)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineClassSet {
    pub classes: Vec<Vec<i128>>,
}

impl PicLattice {
    pub fn new(degree: u32) -> Result<Self> {
        if !(3..=4).contains(&degree) {
            return domain(format!("degree {degree} is not supported (only 3 and 4)"));
        }
        let r = 9 - degree as usize;
        let rank = r + 1;
        let pairing = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        if i != j {
                            0
                        } else if i == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        let mut minus_k = vec![-1; rank];
        minus_k[0] = 3;
        Ok(PicLattice { degree, rank, pairing, minus_k })
    }

    pub fn pair(&self, x: &[i128], y: &[i128]) -> i128 {
        x[0] * y[0] - x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<i128>()
    }

    pub fn lines(&self) -> LineClassSet {
        let r = self.rank - 1;
        let unit = |i: usize| {
            let mut v = vec![0; self.rank];
            v[i] = 1;
            v
        };
        let mut classes: Vec<Vec<i128>> = (1..=r).map(unit).collect();
        for i in 1..=r {
            for j in i + 1..=r {
                let mut v = unit(0);
                v[i] = -1;
                v[j] = -1;
                classes.push(v);
            }
        }
        // Conics through five of the r points.
        let mut conic = vec![-1; self.rank];
        conic[0] = 2;
        if r == 5 {
            classes.push(conic);
        } else {
            for skip in 1..=r {
                let mut v = conic.clone();
                v[skip] = 0;
                classes.push(v);
            }
        }
        LineClassSet { classes }
    }

    /// `R = {E : (E, E) = -2, (E, -K) = 0}`.
    pub fn roots(&self) -> Vec<Vec<i128>> {
        let mut out = Vec::new();
        let mut v = vec![0i128; self.rank];
        fn rec(pic: &PicLattice, i: usize, v: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) {
            if i == v.len() {
                if pic.pair(v, v) == -2 && pic.pair(v, &pic.minus_k) == 0 {
                    out.push(v.clone());
                }
                return;
            }
            let range = if i == 0 { -2..=2 } else { -1..=1 };
            for x in range {
                v[i] = x;
                rec(pic, i + 1, v, out);
            }
        }
        rec(self, 0, &mut v, &mut out);
        out
    }

    /// Reflection in a root: `x + (x, a) a`.
    pub fn reflect(&self, x: &[i128], root: &[i128]) -> Vec<i128> {
        let c = self.pair(x, root);
        x.iter().zip(root).map(|(x, a)| x + c * a).collect()
    }
}

impl LineClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, v: &[i128]) -> Option<usize> {
        self.classes.iter().position(|c| c == v)
    }
}

use crate::error::{Error, Result};
use crate::Q;
use num_integer::Integer;

/// Integer vector `(x0, .., x4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point5(pub [i64; 5]);

impl Point5 {
    pub fn phi1(&self) -> i128 {
        let x = self.0.map(|v| v as i128);
        x[0] * x[1] - x[2] * x[3]
    }

    pub fn phi2(&self) -> i128 {
        let x = self.0.map(|v| v as i128);
        x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - x[3] * x[3] - 2 * x[4] * x[4]
    }

    pub fn on_surface(&self) -> bool {
        self.phi1() == 0 && self.phi2() == 0
    }

    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1
    }

    /// Square of `max{|x0|, .., |x3|, sqrt(2/3)|x4|}`, exactly.
    pub fn height_sq(&self) -> Q {
        let m = self.0[..4].iter().map(|v| (*v as i128).pow(2)).max().unwrap();
        Q::from_integer(m).max(Q::new(2 * (self.0[4] as i128).pow(2), 3))
    }

    pub fn height(&self) -> f64 {
        let h = self.height_sq();
        (*h.numer() as f64 / *h.denom() as f64).sqrt()
    }

    /// `height <= b`, decided in integers.
    pub fn height_at_most(&self, b: i64) -> bool {
        let b = b as i128;
        self.0[..4].iter().all(|v| (*v as i128).abs() <= b) && 2 * (self.0[4] as i128).pow(2) <= 3 * b * b
    }

    /// Representative of `{x, -x}` whose first nonzero coordinate is positive.
    pub fn canonical(&self) -> Point5 {
        match self.0.iter().find(|v| **v != 0) {
            Some(v) if *v < 0 => Point5(self.0.map(|c| -c)),
            _ => *self,
        }
    }
}

/// The eight lines of `X` defined over `Q`.
///
/// `M1(e1, e2)`: `x0 = e1 x2 = e2 x4`, `x1 = e1 x3`.
/// `M2(e1, e2)`: `x1 = e1 x2 = e2 x4`, `x0 = e1 x3`.
/// The remaining eight lines need `i` and meet the real points only at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    M1(i8, i8),
    M2(i8, i8),
}

impl Line {
    pub const RATIONAL: [Line; 8] = [
        Line::M1(1, 1),
        Line::M1(1, -1),
        Line::M1(-1, 1),
        Line::M1(-1, -1),
        Line::M2(1, 1),
        Line::M2(1, -1),
        Line::M2(-1, 1),
        Line::M2(-1, -1),
    ];

    pub fn contains(&self, p: &Point5) -> bool {
        let x = p.0;
        match *self {
            Line::M1(e1, e2) => {
                let (e1, e2) = (e1 as i64, e2 as i64);
                x[0] == e1 * x[2] && x[0] == e2 * x[4] && x[1] == e1 * x[3]
            }
            Line::M2(e1, e2) => {
                let (e1, e2) = (e1 as i64, e2 as i64);
                x[1] == e1 * x[2] && x[1] == e2 * x[4] && x[0] == e1 * x[3]
            }
        }
    }
}

/// True iff `p` lies off every line, i.e. `{|x0|, |x1|} != {|x2|, |x3|}`.
pub fn in_u(p: &Point5) -> Result<bool> {
    if !p.on_surface() {
        return Err(Error::OffSurface);
    }
    Ok(in_u_unchecked(&p.0))
}

#[inline]
pub(crate) fn in_u_unchecked(x: &[i64; 5]) -> bool {
    let (a0, a1, a2, a3) = (x[0].abs(), x[1].abs(), x[2].abs(), x[3].abs());
    !((a0 == a2 && a1 == a3) || (a0 == a3 && a1 == a2))
}

/// Rational lines through `p`.
pub fn lines_through(p: &Point5) -> Result<Vec<Line>> {
    if !p.on_surface() {
        return Err(Error::OffSurface);
    }
    Ok(Line::RATIONAL.iter().copied().filter(|l| l.contains(p)).collect())
}

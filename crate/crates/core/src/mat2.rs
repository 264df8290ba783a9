//! 2×2 integer matrices, as used for homotopy actions on tori and basis
//! changes between them.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// Inverse over the integers; `None` unless `det = ±1`.
    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det.abs() != 1 {
            return None;
        }
        let [[a, b], [c, d]] = self.0;
        Some(Mat2([[d * det, -b * det], [-c * det, a * det]]))
    }

    pub fn transpose(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2([[a, c], [b, d]])
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let [[a, b], [c, d]] = self.0;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    /// Largest absolute entry.
    pub fn norm(&self) -> i64 {
        self.0.iter().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }

    pub fn checked_mul(&self, rhs: &Mat2) -> Option<Mat2> {
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let p = self.0[i][0].checked_mul(rhs.0[0][j])?;
                let q = self.0[i][1].checked_mul(rhs.0[1][j])?;
                *slot = p.checked_add(q)?;
            }
        }
        Some(Mat2(out))
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        (0..n).fold(Mat2::IDENTITY, |acc, _| acc * *self)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        self.checked_mul(&rhs).expect("integer matrix product overflow")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_by_shear() {
        let a = Mat2::new(2, 1, 1, 1);
        let p = Mat2::new(1, 1, 0, 1);
        let ap = p * a * p.inverse().unwrap();
        assert_eq!(ap, Mat2::new(3, -1, 1, 0));
        assert_eq!(ap.trace(), a.trace());
    }

    #[test]
    fn inverse_of_orientation_reversing() {
        let m = Mat2::new(0, 1, 1, 0);
        assert_eq!(m.det(), -1);
        assert_eq!(m * m.inverse().unwrap(), Mat2::IDENTITY);
        assert!(Mat2::new(2, 0, 0, 1).inverse().is_none());
    }
}

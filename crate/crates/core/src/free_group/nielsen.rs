//! Lifts of `GL(2,Z)` to `Aut(F_2)`.
//!
//! Matrices act in the column convention of
//! [`FreeGroupAut::canonical_lift`]: column `j` is the abelianized image
//! of `x_j`. Under this convention `lift(P ∘ Q) = lift(P) ∘ lift(Q)` holds
//! up to inner automorphisms, and exactly for the abelianized maps.

use crate::mat2::Mat2;

use super::automorphism::FreeGroupAut;
use super::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Elementary {
    /// `[[1, q], [0, 1]]`: `x1 ↦ x0^q x1`.
    Shear(i64),
    /// `[[0, 1], [1, 0]]`.
    Swap,
    /// `diag(-1, 1)`.
    FlipFirst,
    /// `diag(1, -1)`.
    FlipSecond,
}

impl Elementary {
    fn lift(self) -> (FreeGroupAut, FreeGroupAut) {
        let x = Word::generator(0);
        let y = Word::generator(1);
        let mk = |a: Word, b: Word| FreeGroupAut::new(vec![a, b]).expect("rank 2");
        match self {
            Elementary::Shear(q) => (
                mk(x.clone(), x.pow(q).mul(&y)),
                mk(x.clone(), x.pow(-q).mul(&y)),
            ),
            Elementary::Swap => {
                let s = mk(y, x);
                (s.clone(), s)
            }
            Elementary::FlipFirst => {
                let s = mk(x.inverse(), y);
                (s.clone(), s)
            }
            Elementary::FlipSecond => {
                let s = mk(x, y.inverse());
                (s.clone(), s)
            }
        }
    }
}

/// Writes a unimodular `p` as a product of elementary matrices.
fn factor(p: Mat2) -> Option<Vec<Elementary>> {
    if !p.is_unimodular() {
        return None;
    }
    // Row-reduce m to the identity; `factors` collects the inverses of the
    // applied row operations so that p = factors[0] · factors[1] · ...
    let mut m = p.0;
    let mut factors = Vec::new();
    while m[1][0] != 0 {
        if m[0][0].abs() < m[1][0].abs() {
            m.swap(0, 1);
            factors.push(Elementary::Swap);
        } else {
            let q = m[0][0] / m[1][0];
            m[0][0] -= q * m[1][0];
            m[0][1] -= q * m[1][1];
            factors.push(Elementary::Shear(q));
        }
    }
    if m[0][0] < 0 {
        m[0] = [-m[0][0], -m[0][1]];
        factors.push(Elementary::FlipFirst);
    }
    if m[1][1] < 0 {
        m[1] = [-m[1][0], -m[1][1]];
        factors.push(Elementary::FlipSecond);
    }
    if m[0][1] != 0 {
        factors.push(Elementary::Shear(m[0][1]));
    }
    debug_assert_eq!(m[0][0], 1);
    debug_assert_eq!(m[1][1], 1);
    Some(factors)
}

/// An automorphism of `F_2` inducing `p` on the abelianization (column
/// convention), together with its exact inverse. `None` unless
/// `det p = ±1`.
pub fn nielsen_lift(p: Mat2) -> Option<(FreeGroupAut, FreeGroupAut)> {
    let factors = factor(p)?;
    let mut psi = FreeGroupAut::identity(2);
    let mut psi_inv = FreeGroupAut::identity(2);
    for f in factors {
        let (l, li) = f.lift();
        psi = psi.compose(&l).expect("rank 2");
        psi_inv = li.compose(&psi_inv).expect("rank 2");
    }
    Some((psi, psi_inv))
}

/// Column-convention matrix of a rank-2 map: transpose of
/// [`FreeGroupAut::abelianization`].
pub fn column_matrix(phi: &FreeGroupAut) -> Option<Mat2> {
    if phi.rank() != 2 {
        return None;
    }
    let ab = phi.abelianization();
    Some(Mat2([[ab[0][0], ab[1][0]], [ab[0][1], ab[1][1]]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_shear() {
        let p = Mat2::new(1, 1, 0, 1);
        let (psi, psi_inv) = nielsen_lift(p).unwrap();
        assert_eq!(column_matrix(&psi), Some(p));
        assert!(psi.is_inverse_of(&psi_inv).unwrap());
    }

    #[test]
    fn lifts_assorted_unimodular() {
        for p in [
            Mat2::IDENTITY,
            Mat2::new(2, 1, 1, 1),
            Mat2::new(3, -1, 1, 0),
            Mat2::new(0, 1, 1, 0),
            Mat2::new(-1, 0, 0, -1),
            Mat2::new(5, 8, 3, 5),
            Mat2::new(-7, 3, 2, -1),
        ] {
            let (psi, psi_inv) = nielsen_lift(p).unwrap();
            assert_eq!(column_matrix(&psi), Some(p), "{p}");
            assert!(psi.is_inverse_of(&psi_inv).unwrap(), "{p}");
        }
        assert!(nielsen_lift(Mat2::new(2, 0, 0, 1)).is_none());
    }

    #[test]
    fn canonical_lift_matches_column_matrix() {
        let a = Mat2::new(2, 1, 1, 1);
        assert_eq!(column_matrix(&FreeGroupAut::canonical_lift(a.0)), Some(a));
    }
}

//! Linear saddle model `f(x, y) = (μx, λy)` and its invariant domains.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

use super::ModuliError;

/// Eigenvalue data of a saddle orbit in linearizing coordinates.
///
/// `T` is a [`Real`] for numeric work or a coefficient type inside map
/// specifications.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaddleChart<T> {
    pub saddle: String,
    pub period: u32,
    pub mu: T,
    pub lambda: T,
}

/// Rejects eigenvalues outside `0 < |λ| < 1 < |μ|`.
pub fn check_eigenvalues<R: Real>(mu: R, lambda: R) -> Result<(), ModuliError> {
    let (m, l) = (mu.abs(), lambda.abs());
    if m.is_finite() && l.is_finite() && l > R::zero() && l < R::one() && m > R::one() {
        Ok(())
    } else {
        Err(ModuliError::Eigenvalues {
            mu: mu.to_text(),
            lambda: lambda.to_text(),
        })
    }
}

/// `f^n(p) = (μ^n x, λ^n y)`; negative `n` iterates the inverse.
pub fn linear_saddle_apply<R: Real>(
    mu: R,
    lambda: R,
    p: [R; 2],
    n: i32,
) -> Result<[R; 2], ModuliError> {
    check_eigenvalues(mu, lambda)?;
    Ok([mu.powi(n) * p[0], lambda.powi(n) * p[1]])
}

/// Exponent `-log_λ μ = -ln|μ| / ln|λ|` of the domain inequality; positive
/// for valid eigenvalues.
pub fn domain_exponent<R: Real>(mu: R, lambda: R) -> R {
    -(mu.abs().ln() / lambda.abs().ln())
}

/// Membership in `U^t = {|x| |y|^{-log_λ μ} ≤ t}`.
///
/// Points of the axis `y = 0` are members for every `x`: the exponent is
/// positive, so the product tends to zero there. The test runs in
/// logarithms, which keeps it meaningful for very large or small
/// coordinates. Eigenvalues are assumed valid (`0 < |λ| < 1 < |μ|`).
pub fn in_linear_domain<R: Real>(mu: R, lambda: R, p: [R; 2], t: R) -> bool {
    let [x, y] = p;
    if x == R::zero() || y == R::zero() {
        return true;
    }
    let e = domain_exponent(mu, lambda);
    x.abs().ln() + e * y.abs().ln() <= t.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_step() {
        assert_eq!(linear_saddle_apply(2.0, 0.5, [1.0, 1.0], 1).unwrap(), [2.0, 0.5]);
        assert_eq!(linear_saddle_apply(2.0, 0.5, [3.0, -1.0], 0).unwrap(), [3.0, -1.0]);
        assert!(linear_saddle_apply(2.0, 1.5, [1.0, 1.0], 1).is_err());
    }

    #[test]
    fn three_steps_match_iteration() {
        let closed = linear_saddle_apply(2.0, 0.5, [1.0, 8.0], 3).unwrap();
        assert_eq!(closed, [8.0, 1.0]);
        let mut p = [1.0, 8.0];
        for _ in 0..3 {
            p = linear_saddle_apply(2.0, 0.5, p, 1).unwrap();
        }
        assert_eq!(p, closed);
        assert_eq!(linear_saddle_apply(2.0, 0.5, closed, -3).unwrap(), [1.0, 8.0]);
    }

    #[test]
    fn domain_membership() {
        assert!(in_linear_domain(2.0, 0.5, [0.0, 0.0], 1e-3));
        assert!(in_linear_domain(2.0, 0.5, [2.0, 0.4], 1.0));
        assert!(!in_linear_domain(2.0, 0.5, [2.0, 0.6], 1.0));
        assert!(in_linear_domain(2.0, 0.5, [1e12, 0.0], 0.5));
        assert_eq!(domain_exponent(2.0, 0.5), 1.0);
    }
}

//! Closed-form moduli and the separatrix conjugacies built from them.

use crate::scalar::Real;

/// `|λ/μ|^k · τ`: the modulus at the `k`-th iterate of a tangency point.
pub fn tau_iterate<R: Real>(tau: R, lambda: R, mu: R, k: i32) -> R {
    (lambda / mu).abs().powi(k) * tau
}

/// `ln|λ| / ln|μ|`; negative for valid eigenvalues.
pub fn log_ratio<R: Real>(lambda: R, mu: R) -> R {
    lambda.abs().ln() / mu.abs().ln()
}

/// `|τ2/τ1|^{1/ln|μ|}`.
pub fn tau_pair_invariant<R: Real>(tau1: R, tau2: R, mu: R) -> R {
    (tau2 / tau1).abs().powf(mu.abs().ln().recip())
}

fn signed_power<R: Real>(t: R, rho: R, c: R) -> R {
    if t == R::zero() {
        return R::zero();
    }
    t.signum() * c * t.abs().powf(rho)
}

/// Conjugacy of stable separatrices: `|t'| = |t|^ρ` with
/// `ρ = ln|λ_dst| / ln|λ_src|`, sign kept.
pub fn separatrix_map_stable<R: Real>(t: R, lambda_src: R, lambda_dst: R) -> R {
    let rho = lambda_dst.abs().ln() / lambda_src.abs().ln();
    signed_power(t, rho, R::one())
}

/// Conjugacy of unstable separatrices: `|t'| = c |t|^ρ` with
/// `ρ = ln|μ_dst| / ln|μ_src|`, sign kept.
pub fn separatrix_map_unstable<R: Real>(t: R, mu_src: R, mu_dst: R, c: R) -> R {
    let rho = mu_dst.abs().ln() / mu_src.abs().ln();
    signed_power(t, rho, c)
}

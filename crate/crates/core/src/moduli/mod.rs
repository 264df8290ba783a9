//! Linear saddle charts, transition maps and the moduli computed from them.

mod chart;
mod invariants;
mod mapspec;
mod poly;
mod transition;

use thiserror::Error;

pub use chart::{check_eigenvalues, domain_exponent, in_linear_domain, linear_saddle_apply, SaddleChart};
pub use invariants::{
    log_ratio, separatrix_map_stable, separatrix_map_unstable, tau_iterate, tau_pair_invariant,
};
pub use mapspec::{emit_separatrix_polyline, ChartSpec, MapSpec, SeparatrixKind, TangencyReport, TangencySpec};
pub use poly::{Poly1, Poly2};
pub use transition::{
    contact_order, richardson_derivative, tangency_order, tau_at_tangency, FdOptions,
    TangencyOrder, TauEstimate, TransitionMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error("eigenvalues must satisfy 0<|λ|<1<|μ| (got μ={mu}, λ={lambda})")]
    Eigenvalues { mu: String, lambda: String },
    #[error("transition {transition}: ∂η/∂x vanishes at a^s")]
    DegenerateModulus { transition: String },
    #[error("transition {transition}: symbolic τ={symbolic} disagrees with finite differences {numeric}")]
    FiniteDifferenceMismatch {
        transition: String,
        symbolic: String,
        numeric: String,
    },
    #[error("transition {transition}: no finite contact order")]
    NoFiniteOrder { transition: String },
    #[error("transition {transition}: image of the stable line is singular at a^s")]
    DegenerateParametrization { transition: String },
    #[error("transition {transition}: declared point does not match g(a^s)")]
    PointMismatch { transition: String },
    #[error("unknown label {label}")]
    UnknownLabel { label: String },
    #[error("map spec: {message}")]
    Format { message: String },
}

//! Schemes of surface diffeomorphisms with one-dimensional basic sets and
//! finitely many moduli: the data model, moduli numerics, an equivalence
//! checker, a separability analyzer and fixture generators.
//!
//! Numeric code is generic over [`scalar::Real`] (`f32`, `f64`) and, for
//! polynomial coefficients, over [`scalar::Coefficient`] (floats or exact
//! rationals). The aliases below fix the usual choices.

pub mod equivalence;
pub mod fixtures;
pub mod free_group;
pub mod mat2;
pub mod moduli;
pub mod scalar;
pub mod scheme;
pub mod separability;
pub mod textnum;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

pub type SchemeF64 = scheme::Scheme<f64>;
pub type SchemeF32 = scheme::Scheme<f32>;

/// Map specification with exact coefficients.
pub type MapSpecQ = moduli::MapSpec<Rational>;
pub type MapSpecF64 = moduli::MapSpec<f64>;

pub type TransitionMapQ = moduli::TransitionMap<Rational>;

pub type CheckOptionsF64 = equivalence::CheckOptions<f64>;

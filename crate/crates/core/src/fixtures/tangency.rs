//! Synthetic tangency families spread over one or two tori, with moduli
//! chosen so the identity certificate satisfies every moduli condition.

use crate::mat2::Mat2;
use crate::scalar::Real;
use crate::scheme::{
    CurveKind, PathWinding, Scheme, SeparatrixCurve, TangencyFamily, TangencyPoint, TorusComponent,
};

use super::FixtureError;

#[derive(Debug, Clone, PartialEq)]
pub struct TangencyParams<R> {
    /// Points per family.
    pub n_points: usize,
    /// 1 or 2 tori; points alternate between them.
    pub components: usize,
    pub lambda: R,
    pub mu: R,
    pub tau_seed: R,
    /// Per-point exponents `k_i`: `τ_i = tau_seed·|λ/μ|^{k_i}`. Missing
    /// entries count as 0.
    pub windings: Vec<i64>,
    pub families: usize,
}

impl<R: Real> TangencyParams<R> {
    pub fn new(n_points: usize, components: usize, lambda: R, mu: R) -> Self {
        TangencyParams {
            n_points,
            components,
            lambda,
            mu,
            tau_seed: R::one(),
            windings: vec![],
            families: 1,
        }
    }
}

/// Label of point `i` of family `f`.
pub fn point_label(f: usize, i: usize) -> String {
    format!("h{f}a{i}")
}

pub fn build_tangency_fixture<R: Real>(p: &TangencyParams<R>) -> Result<Scheme<R>, FixtureError> {
    if !(1..=2).contains(&p.components) {
        return Err(FixtureError::Parameter("components must be 1 or 2".into()));
    }
    if p.n_points == 0 || p.families == 0 {
        return Err(FixtureError::Parameter("need at least one family and one point".into()));
    }
    let (l, m) = (p.lambda.abs(), p.mu.abs());
    if !(l > R::zero() && l < R::one() && m > R::one() && m.is_finite()) {
        return Err(FixtureError::Parameter("need 0<|λ|<1<|μ|".into()));
    }
    if !(p.tau_seed.is_finite() && p.tau_seed != R::zero()) {
        return Err(FixtureError::Parameter("tau_seed must be nonzero".into()));
    }
    let comp = |j: usize| format!("T{}", j % p.components);
    let components = (0..p.components)
        .map(|j| TorusComponent {
            id: comp(j),
            action: Mat2::IDENTITY,
            image: comp(j),
        })
        .collect();
    let r = (p.lambda / p.mu).abs();
    let k = |i: usize| p.windings.get(i).copied().unwrap_or(0);
    let (mut s_curves, mut u_curves, mut tangencies, mut windings) = (vec![], vec![], vec![], vec![]);
    for f in 0..p.families {
        // one saddle per role; its two separatrix circles go to T0 and the
        // last torus
        for (saddle, kind, class, list) in [
            (format!("s{f}"), CurveKind::Stable, [1, 0], &mut s_curves),
            (format!("u{f}"), CurveKind::Unstable, [0, 1], &mut u_curves),
        ] {
            let tag = if kind == CurveKind::Stable { "s" } else { "u" };
            for side in 0..2 {
                list.push(SeparatrixCurve {
                    id: format!("g{tag}{f}_{side}"),
                    kind,
                    saddle: saddle.clone(),
                    component: comp(side * (p.components - 1)),
                    class,
                    partner: format!("g{tag}{f}_{}", 1 - side),
                });
            }
        }
        let points: Vec<TangencyPoint<R>> = (0..p.n_points)
            .map(|i| {
                let j = i % p.components;
                TangencyPoint {
                    id: point_label(f, i),
                    component: comp(j),
                    host_curve: format!("gs{f}_{j}"),
                    tau: p.tau_seed * r.powi(k(i) as i32),
                    order: 2,
                }
            })
            .collect();
        for i in 0..p.n_points {
            for j in i + 1..p.n_points {
                if points[i].component == points[j].component {
                    windings.push(PathWinding {
                        from: point_label(f, i),
                        to: point_label(f, j),
                        k: k(i) - k(j),
                    });
                }
            }
        }
        tangencies.push(TangencyFamily {
            id: format!("H{f}"),
            saddle_s: format!("s{f}"),
            saddle_u: format!("u{f}"),
            lambda: p.lambda,
            mu: p.mu,
            points,
        });
    }
    Ok(Scheme {
        components,
        s_curves,
        u_curves,
        s_boundary: vec![],
        u_boundary: vec![],
        tangencies,
        windings,
        attractors: vec![],
        k_f: 1,
        facts: None,
    })
}

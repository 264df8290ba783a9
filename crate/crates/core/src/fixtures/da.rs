//! Derived-from-Anosov model: one torus carrying the hyperbolic action, a
//! one-dimensional attractor (or repeller) with two boundary points whose
//! free separatrices end in one source (sink), and optionally one tangency
//! family on a saddle of the same torus.

use crate::free_group::{nielsen_lift, solve_twist, FreeGroupAut};
use crate::mat2::Mat2;
use crate::scalar::Real;
use crate::scheme::{
    AttractorKind, AttractorMap, AttractorRecord, BoundaryCurve, BoundaryPoint, Certificate, CurveKind,
    Scheme, SeparatrixCurve, TangencyFamily, TangencyPoint, TorusComponent,
};
use crate::separability::{
    enumerate_bunches, BasicKind, BasicSet, Facts, Frontier, Landing, Pairing, SeparatrixEnd,
};

use super::FixtureError;

#[derive(Debug, Clone, PartialEq)]
pub struct DaParams<R> {
    pub matrix: Mat2,
    pub tau_seed: R,
    /// `(λ, μ)` of an attached tangency family, if any.
    pub family: Option<(R, R)>,
    /// Applied to every homotopy class, to express the same model in
    /// another homology basis.
    pub basis: Mat2,
    pub kind: AttractorKind,
    pub with_facts: bool,
}

impl<R: Real> DaParams<R> {
    pub fn new(matrix: Mat2) -> Self {
        DaParams {
            matrix,
            tau_seed: R::one(),
            family: None,
            basis: Mat2::IDENTITY,
            kind: AttractorKind::Attractor,
            with_facts: false,
        }
    }

    pub fn check(&self) -> Result<(), FixtureError> {
        if self.matrix.det() != 1 {
            return Err(FixtureError::Determinant(self.matrix.det()));
        }
        if self.matrix.trace().abs() <= 2 {
            return Err(FixtureError::NonHyperbolic(self.matrix.trace()));
        }
        if !self.basis.is_unimodular() {
            return Err(FixtureError::Determinant(self.basis.det()));
        }
        if !(self.tau_seed.is_finite() && self.tau_seed > R::zero()) {
            return Err(FixtureError::Parameter("tau_seed must be positive".into()));
        }
        if let Some((l, m)) = self.family {
            if !(l.abs() > R::zero() && l.abs() < R::one() && m.abs() > R::one() && m.is_finite()) {
                return Err(FixtureError::Parameter("family needs 0<|λ|<1<|μ|".into()));
            }
        }
        Ok(())
    }
}

fn curve(id: &str, kind: CurveKind, class: [i64; 2], partner: &str) -> SeparatrixCurve {
    SeparatrixCurve {
        id: id.into(),
        kind,
        saddle: "sigma".into(),
        component: "T0".into(),
        class,
        partner: partner.into(),
    }
}

pub fn build_da_scheme<R: Real>(p: &DaParams<R>) -> Result<Scheme<R>, FixtureError> {
    p.check()?;
    let q = p.basis;
    let boundary: Vec<BoundaryCurve> = ["p1", "p2"]
        .iter()
        .map(|bp| BoundaryCurve {
            id: format!("l{bp}"),
            attractor: "L".into(),
            boundary_point: bp.to_string(),
            component: "T0".into(),
            class: q.apply([1, 0]),
        })
        .collect();
    let mut record = AttractorRecord {
        id: "L".into(),
        kind: p.kind,
        periodic_components: 1,
        rank: 2,
        automorphism: FreeGroupAut::canonical_lift(p.matrix.0),
        boundary_points: vec![
            BoundaryPoint { id: "p1".into(), curve: "lp1".into() },
            BoundaryPoint { id: "p2".into(), curve: "lp2".into() },
        ],
        bunches: vec![],
    };
    let pairing = Pairing {
        attractor: "L".into(),
        groups: vec![vec!["p1".into(), "p2".into()]],
    };
    record.bunches = enumerate_bunches(&record, &pairing).expect("fixed partition");

    let (mut s_curves, mut u_curves, mut tangencies) = (vec![], vec![], vec![]);
    if let Some((lambda, mu)) = p.family {
        s_curves = vec![
            curve("gs1", CurveKind::Stable, q.apply([0, 1]), "gs2"),
            curve("gs2", CurveKind::Stable, q.apply([0, 1]), "gs1"),
        ];
        u_curves = vec![
            curve("gu1", CurveKind::Unstable, q.apply([1, 1]), "gu2"),
            curve("gu2", CurveKind::Unstable, q.apply([1, 1]), "gu1"),
        ];
        tangencies = vec![TangencyFamily {
            id: "H0".into(),
            saddle_s: "sigma".into(),
            saddle_u: "sigma".into(),
            lambda,
            mu,
            points: vec![TangencyPoint {
                id: "a0".into(),
                component: "T0".into(),
                host_curve: "gs1".into(),
                tau: p.tau_seed,
                order: 2,
            }],
        }];
    }

    let repeller = p.kind == AttractorKind::Repeller;
    let facts = p.with_facts.then(|| {
        let (end, end_kind, landing) = if repeller {
            ("omega", BasicKind::Sink, Landing::Sink)
        } else {
            ("alpha", BasicKind::Source, Landing::Source)
        };
        Facts {
            roster: vec![
                BasicSet {
                    id: "L".into(),
                    kind: if repeller { BasicKind::Repeller } else { BasicKind::Attractor },
                    period: None,
                },
                BasicSet { id: end.into(), kind: end_kind, period: Some(1) },
            ],
            intersections: crate::separability::IntersectionTable {
                complete: true,
                entries: vec![],
            },
            ends: ["p1", "p2"]
                .iter()
                .map(|bp| SeparatrixEnd {
                    attractor: "L".into(),
                    boundary_point: bp.to_string(),
                    landing,
                    set: Some(end.into()),
                })
                .collect(),
            frontiers: vec![Frontier {
                attractor: "L".into(),
                sets: Some(vec![end.into()]),
            }],
            pairing: vec![pairing],
        }
    });

    let (s_boundary, u_boundary) = if repeller { (vec![], boundary) } else { (boundary, vec![]) };
    Ok(Scheme {
        components: vec![TorusComponent {
            id: "T0".into(),
            action: p.matrix,
            image: "T0".into(),
        }],
        s_curves,
        u_curves,
        s_boundary,
        u_boundary,
        tangencies,
        windings: vec![],
        attractors: vec![record],
        k_f: if p.matrix.trace() > 2 { 1 } else { 2 },
        facts,
    })
}

/// Certificate between two DA schemes with identical labels whose matrices
/// are related by `p`: `A' = p·A·p⁻¹` and classes of the second scheme
/// multiplied by `p`. The free-group map is a Nielsen lift of `p`, with the
/// lift twist solved for.
pub fn da_certificate<R: Real>(s1: &Scheme<R>, s2: &Scheme<R>, p: Mat2) -> Result<Certificate, FixtureError> {
    let (psi, psi_inv) = nielsen_lift(p).ok_or(FixtureError::Determinant(p.det()))?;
    let mut cert = Certificate::identity(s1);
    for v in cert.basis_changes.values_mut() {
        *v = p;
    }
    let mut maps = Vec::new();
    for a in &s1.attractors {
        let b = s2
            .attractor(&a.id)
            .ok_or_else(|| FixtureError::Parameter(format!("no attractor {} in the target", a.id)))?;
        let conj = psi
            .compose(&a.automorphism)
            .and_then(|x| x.compose(&psi_inv))
            .map_err(|e| FixtureError::Parameter(e.to_string()))?;
        let twist = solve_twist(&conj, &b.automorphism)
            .ok_or_else(|| FixtureError::Parameter("lifts differ by more than an inner automorphism".into()))?;
        maps.push(AttractorMap {
            source: a.id.clone(),
            target: b.id.clone(),
            psi: psi.clone(),
            psi_inv: psi_inv.clone(),
            boundary_points: a.boundary_points.iter().map(|x| (x.id.clone(), x.id.clone())).collect(),
            twist,
        });
    }
    cert.attractor_maps = maps;
    Ok(cert)
}

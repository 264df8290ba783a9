//! Inverting and composing certificates.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scheme::{AttractorMap, Certificate, Label, MValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("{what}: {label} is mapped twice")]
    NotInjective { what: &'static str, label: String },
    #[error("basis change for {0} is not invertible over the integers")]
    Singular(String),
    #[error("{what}: {label} has no image in the second certificate")]
    Unmatched { what: &'static str, label: String },
    #[error("no m value for ({0}, {1}) in the second certificate")]
    MissingM(String, String),
    #[error("attractor maps: {0}")]
    Automorphism(String),
}

fn invert_map(what: &'static str, m: &BTreeMap<Label, Label>) -> Result<BTreeMap<Label, Label>, CertificateError> {
    let mut out = BTreeMap::new();
    for (k, v) in m {
        if out.insert(v.clone(), k.clone()).is_some() {
            return Err(CertificateError::NotInjective { what, label: v.clone() });
        }
    }
    Ok(out)
}

fn compose_map(
    what: &'static str,
    first: &BTreeMap<Label, Label>,
    second: &BTreeMap<Label, Label>,
) -> Result<BTreeMap<Label, Label>, CertificateError> {
    first
        .iter()
        .map(|(k, v)| {
            second
                .get(v)
                .map(|w| (k.clone(), w.clone()))
                .ok_or_else(|| CertificateError::Unmatched { what, label: v.clone() })
        })
        .collect()
}

/// Certificate for the reverse direction: bijections inverted, `P_i^{-1}`
/// attached to the image component, `ψ` and `ψ_inv` swapped and each `m`
/// negated on the image pair.
pub fn invert_certificate(c: &Certificate) -> Result<Certificate, CertificateError> {
    let mut basis_changes = BTreeMap::new();
    for (comp, p) in &c.basis_changes {
        let inv = p.inverse().ok_or_else(|| CertificateError::Singular(comp.clone()))?;
        let target = c.component_map.get(comp).ok_or_else(|| CertificateError::Unmatched {
            what: "component_map",
            label: comp.clone(),
        })?;
        basis_changes.insert(target.clone(), inv);
    }
    let mut m_values = Vec::new();
    for v in &c.m_values {
        let img = |p: &String| {
            c.point_map.get(p).cloned().ok_or_else(|| CertificateError::Unmatched {
                what: "point_map",
                label: p.clone(),
            })
        };
        m_values.push(MValue {
            from: img(&v.from)?,
            to: img(&v.to)?,
            m: -v.m,
        });
    }
    m_values.sort_by(|x, y| (&x.from, &x.to).cmp(&(&y.from, &y.to)));
    let attractor_maps = c
        .attractor_maps
        .iter()
        .map(|a| {
            Ok(AttractorMap {
                source: a.target.clone(),
                target: a.source.clone(),
                psi: a.psi_inv.clone(),
                psi_inv: a.psi.clone(),
                boundary_points: invert_map("boundary_points", &a.boundary_points)?,
                twist: a.psi_inv.apply(&a.twist).inverse(),
            })
        })
        .collect::<Result<Vec<_>, CertificateError>>()?;
    Ok(Certificate {
        component_map: invert_map("component_map", &c.component_map)?,
        basis_changes,
        curve_map: invert_map("curve_map", &c.curve_map)?,
        boundary_curve_map: invert_map("boundary_curve_map", &c.boundary_curve_map)?,
        tangency_map: invert_map("tangency_map", &c.tangency_map)?,
        point_map: invert_map("point_map", &c.point_map)?,
        m_values,
        attractor_maps,
    })
}

/// `second ∘ first`: `first` witnesses `s1 ≡ s2`, `second` witnesses
/// `s2 ≡ s3`. Matrices multiply as `P2_β1(i) · P1_i`, `m` values add along
/// the image pair and the lift twists combine as `ψ2(v1)·v2`.
pub fn compose_certificates(first: &Certificate, second: &Certificate) -> Result<Certificate, CertificateError> {
    let component_map = compose_map("component_map", &first.component_map, &second.component_map)?;
    let mut basis_changes = BTreeMap::new();
    for (comp, p1) in &first.basis_changes {
        let mid = first.component_map.get(comp).ok_or_else(|| CertificateError::Unmatched {
            what: "component_map",
            label: comp.clone(),
        })?;
        let p2 = second.basis_changes.get(mid).ok_or_else(|| CertificateError::Unmatched {
            what: "basis_changes",
            label: mid.clone(),
        })?;
        let p = p2
            .checked_mul(p1)
            .ok_or_else(|| CertificateError::Singular(comp.clone()))?;
        basis_changes.insert(comp.clone(), p);
    }
    let mut m_values = Vec::new();
    for v in &first.m_values {
        let img = |p: &String| {
            first.point_map.get(p).ok_or_else(|| CertificateError::Unmatched {
                what: "point_map",
                label: p.clone(),
            })
        };
        let (b1, b2) = (img(&v.from)?, img(&v.to)?);
        let m2 = second
            .m_value(b1, b2)
            .ok_or_else(|| CertificateError::MissingM(b1.clone(), b2.clone()))?;
        m_values.push(MValue {
            from: v.from.clone(),
            to: v.to.clone(),
            m: v.m + m2,
        });
    }
    let mut attractor_maps = Vec::new();
    for a in &first.attractor_maps {
        let b = second
            .attractor_map(&a.target)
            .ok_or_else(|| CertificateError::Unmatched {
                what: "attractor_maps",
                label: a.target.clone(),
            })?;
        let err = |e: crate::free_group::AutError| CertificateError::Automorphism(e.to_string());
        attractor_maps.push(AttractorMap {
            source: a.source.clone(),
            target: b.target.clone(),
            psi: b.psi.compose(&a.psi).map_err(err)?,
            psi_inv: a.psi_inv.compose(&b.psi_inv).map_err(err)?,
            boundary_points: compose_map("boundary_points", &a.boundary_points, &b.boundary_points)?,
            twist: b.psi.apply(&a.twist).mul(&b.twist),
        });
    }
    Ok(Certificate {
        component_map,
        basis_changes,
        curve_map: compose_map("curve_map", &first.curve_map, &second.curve_map)?,
        boundary_curve_map: compose_map("boundary_curve_map", &first.boundary_curve_map, &second.boundary_curve_map)?,
        tangency_map: compose_map("tangency_map", &first.tangency_map, &second.tangency_map)?,
        point_map: compose_map("point_map", &first.point_map, &second.point_map)?,
        m_values,
        attractor_maps,
    })
}

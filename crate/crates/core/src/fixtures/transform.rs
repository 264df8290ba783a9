//! Re-expressing a scheme in new coordinates: fresh labels, homology basis
//! changes, eigenvalue powers, shifted tangency representatives and
//! free-group automorphisms. Returns the image scheme with a certificate
//! witnessing the equivalence.

use std::collections::BTreeMap;

use crate::free_group::{nielsen_lift, FreeGroupAut, Word};
use crate::mat2::Mat2;
use crate::scalar::Real;
use crate::scheme::{AttractorMap, Certificate, MValue, PathWinding, Scheme};

use super::FixtureError;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transform {
    /// Prepended to every label.
    pub prefix: String,
    /// Per-component basis change; identity when absent.
    pub basis: BTreeMap<String, Mat2>,
    /// `λ, μ, |τ|` are raised to this power (at least 1).
    pub eigen_power: u32,
    /// Tangency point `a` is replaced by its `d(a)`-th iterate.
    pub shifts: BTreeMap<String, i64>,
    /// Per rank-2 attractor, `ψ` is a Nielsen lift of this matrix.
    pub automorphisms: BTreeMap<String, Mat2>,
    /// Per attractor, the image automorphism is conjugated by this word.
    pub twists: BTreeMap<String, Word>,
    /// Reverse every list, to exercise order independence.
    pub reverse: bool,
}

fn signed_pow<R: Real>(v: R, e: u32) -> R {
    v.signum() * v.abs().powi(e as i32)
}

pub fn transform_scheme<R: Real>(s: &Scheme<R>, t: &Transform) -> Result<(Scheme<R>, Certificate), FixtureError> {
    let e = t.eigen_power.max(1);
    let l = |id: &str| format!("{}{id}", t.prefix);
    let basis = |c: &str| t.basis.get(c).copied().unwrap_or(Mat2::IDENTITY);
    for (c, p) in &t.basis {
        if !p.is_unimodular() {
            return Err(FixtureError::Parameter(format!("basis change for {c} is not unimodular")));
        }
    }
    let d = |a: &str| t.shifts.get(a).copied().unwrap_or(0);
    let mut out = s.clone();
    let mut cert = Certificate::default();

    for c in &mut out.components {
        let p = basis(&c.id);
        let p_inv = p.inverse().expect("unimodular");
        let q = basis(&c.image);
        c.action = q
            .checked_mul(&c.action)
            .and_then(|x| x.checked_mul(&p_inv))
            .ok_or_else(|| FixtureError::Parameter("matrix overflow".into()))?;
        cert.component_map.insert(c.id.clone(), l(&c.id));
        cert.basis_changes.insert(c.id.clone(), p);
        c.id = l(&c.id);
        c.image = l(&c.image);
    }
    for c in out.s_curves.iter_mut().chain(out.u_curves.iter_mut()) {
        c.class = basis(&c.component).apply(c.class);
        cert.curve_map.insert(c.id.clone(), l(&c.id));
        c.id = l(&c.id);
        c.saddle = l(&c.saddle);
        c.component = l(&c.component);
        c.partner = l(&c.partner);
    }
    for b in out.s_boundary.iter_mut().chain(out.u_boundary.iter_mut()) {
        b.class = basis(&b.component).apply(b.class);
        cert.boundary_curve_map.insert(b.id.clone(), l(&b.id));
        b.id = l(&b.id);
        b.attractor = l(&b.attractor);
        b.boundary_point = l(&b.boundary_point);
        b.component = l(&b.component);
    }
    for f in &mut out.tangencies {
        let ln_r = (signed_pow(f.lambda, e) / signed_pow(f.mu, e)).abs().ln();
        for a in &mut f.points {
            let shift = R::from(d(&a.id)).expect("shift fits");
            a.tau = signed_pow(a.tau, e) * (-shift * ln_r).exp();
            cert.point_map.insert(a.id.clone(), l(&a.id));
            a.id = l(&a.id);
            a.component = l(&a.component);
            a.host_curve = l(&a.host_curve);
        }
        f.lambda = signed_pow(f.lambda, e);
        f.mu = signed_pow(f.mu, e);
        cert.tangency_map.insert(f.id.clone(), l(&f.id));
        f.id = l(&f.id);
        f.saddle_s = l(&f.saddle_s);
        f.saddle_u = l(&f.saddle_u);
    }

    let points: Vec<_> = s.points().map(|(f, p)| (f.id.as_str(), p)).collect();
    out.windings.clear();
    for (i, (fa, a)) in points.iter().enumerate() {
        for (fb, b) in &points[i + 1..] {
            if a.component == b.component {
                out.windings.push(PathWinding {
                    from: l(&a.id),
                    to: l(&b.id),
                    k: s.winding_or_zero(&a.id, &b.id) + d(&b.id) - d(&a.id),
                });
            } else if fa == fb {
                cert.m_values.push(MValue {
                    from: a.id.clone(),
                    to: b.id.clone(),
                    m: d(&b.id) - d(&a.id),
                });
            }
        }
    }

    for a in &mut out.attractors {
        let (psi, psi_inv) = match t.automorphisms.get(&a.id) {
            Some(p) if a.rank == 2 => nielsen_lift(*p)
                .ok_or_else(|| FixtureError::Parameter(format!("automorphism matrix for {} is singular", a.id)))?,
            Some(_) => return Err(FixtureError::Parameter(format!("{} does not have rank 2", a.id))),
            None => (FreeGroupAut::identity(a.rank as usize), FreeGroupAut::identity(a.rank as usize)),
        };
        let w = t.twists.get(&a.id).cloned().unwrap_or_else(Word::identity);
        let conj = psi
            .compose(&a.automorphism)
            .and_then(|x| x.compose(&psi_inv))
            .map_err(|e| FixtureError::Parameter(e.to_string()))?;
        cert.attractor_maps.push(AttractorMap {
            source: a.id.clone(),
            target: l(&a.id),
            psi,
            psi_inv,
            boundary_points: a.boundary_points.iter().map(|p| (p.id.clone(), l(&p.id))).collect(),
            twist: w.inverse(),
        });
        a.automorphism = conj.twisted(&w);
        a.id = l(&a.id);
        for p in &mut a.boundary_points {
            p.id = l(&p.id);
            p.curve = l(&p.curve);
        }
        for b in &mut a.bunches {
            b.id = l(&b.id);
            for (p, _) in &mut b.members {
                *p = l(p);
            }
        }
    }
    out.facts = None;

    if t.reverse {
        out.components.reverse();
        out.s_curves.reverse();
        out.u_curves.reverse();
        out.s_boundary.reverse();
        out.u_boundary.reverse();
        out.tangencies.reverse();
        for f in &mut out.tangencies {
            f.points.reverse();
        }
        out.windings.reverse();
        out.attractors.reverse();
    }
    Ok((out, cert))
}

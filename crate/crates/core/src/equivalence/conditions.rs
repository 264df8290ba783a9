//! The seven equivalence conditions, each checked against a certificate.

use std::collections::{BTreeMap, BTreeSet};

use crate::free_group::verify_conjugacy_up_to_lift;
use crate::moduli::log_ratio;
use crate::scalar::{rel_eq, rel_eq_log, Real};
use crate::scheme::{Certificate, CurveKind, Label, Scheme, TangencyFamily, TangencyPoint};

use super::{ConditionResult, ConditionStatus};

pub(crate) struct Check {
    id: &'static str,
    failures: Vec<String>,
    blocked: Vec<String>,
}

impl Check {
    pub(crate) fn new(id: &'static str) -> Self {
        Check {
            id,
            failures: Vec::new(),
            blocked: Vec::new(),
        }
    }

    pub(crate) fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn block(&mut self, msg: impl Into<String>) {
        self.blocked.push(msg.into());
    }

    pub(crate) fn finish(self) -> ConditionResult {
        let status = if !self.failures.is_empty() {
            ConditionStatus::Fail
        } else if !self.blocked.is_empty() {
            ConditionStatus::NotReached
        } else {
            ConditionStatus::Pass
        };
        let mut diagnostics = self.failures;
        diagnostics.extend(self.blocked);
        ConditionResult {
            condition: self.id.to_string(),
            status,
            diagnostics,
        }
    }
}

/// Checks that `map` is a bijection from `domain` onto `codomain`.
fn check_bijection(
    c: &mut Check,
    what: &str,
    map: &BTreeMap<Label, Label>,
    domain: &BTreeSet<&str>,
    codomain: &BTreeSet<&str>,
) -> bool {
    let before = c.failures.len();
    for d in domain {
        if !map.contains_key(*d) {
            c.fail(format!("{what}: {d} is not mapped"));
        }
    }
    let mut hit: BTreeMap<&str, &str> = BTreeMap::new();
    for (k, v) in map {
        if !domain.contains(k.as_str()) {
            c.fail(format!("{what}: unknown source label {k}"));
            continue;
        }
        if !codomain.contains(v.as_str()) {
            c.fail(format!("{what}: {k} maps to unknown label {v}"));
            continue;
        }
        if let Some(prev) = hit.insert(v, k) {
            c.fail(format!("{what}: {prev} and {k} both map to {v}"));
        }
    }
    for v in codomain {
        if map.len() == domain.len() && !hit.contains_key(v) {
            c.fail(format!("{what}: nothing maps to {v}"));
        }
    }
    c.failures.len() == before
}

fn same_up_to_sign(a: [i64; 2], b: [i64; 2]) -> bool {
    a == b || a == [-b[0], -b[1]]
}

fn ln_r<R: Real>(f: &TangencyFamily<R>) -> R {
    f.lambda.abs().ln() - f.mu.abs().ln()
}

fn ln_ratio<R: Real>(a1: &TangencyPoint<R>, a2: &TangencyPoint<R>) -> R {
    a2.tau.abs().ln() - a1.tau.abs().ln()
}

fn same_sign<R: Real>(a: R, b: R) -> bool {
    (a > R::zero()) == (b > R::zero())
}

pub fn check_condition1<R: Real>(s1: &Scheme<R>, s2: &Scheme<R>, cert: &Certificate) -> ConditionResult {
    let mut c = Check::new("1");
    let d1: BTreeSet<&str> = s1.components.iter().map(|x| x.id.as_str()).collect();
    let d2: BTreeSet<&str> = s2.components.iter().map(|x| x.id.as_str()).collect();
    if !check_bijection(&mut c, "component_map", &cert.component_map, &d1, &d2) {
        return c.finish();
    }
    for k in cert.basis_changes.keys() {
        if !d1.contains(k.as_str()) {
            c.fail(format!("basis_changes: unknown component {k}"));
        }
    }
    for comp in &s1.components {
        let img = s2
            .component(&cert.component_map[&comp.id])
            .expect("bijection checked");
        if cert.component_map.get(&comp.image) != Some(&img.image) {
            c.fail(format!(
                "component map does not intertwine the induced permutations at {} (β(π({})) ≠ π'(β({})))",
                comp.id, comp.id, comp.id
            ));
        }
        let Some(p) = cert.basis_changes.get(&comp.id) else {
            c.fail(format!("missing basis change for {}", comp.id));
            continue;
        };
        if !p.is_unimodular() {
            c.fail(format!("basis change {p} for {} has determinant {}", comp.id, p.det()));
            continue;
        }
        let Some(p_next) = cert.basis_changes.get(&comp.image) else {
            continue;
        };
        match (p_next.checked_mul(&comp.action), img.action.checked_mul(p)) {
            (Some(l), Some(r)) if l == r => {}
            (Some(l), Some(r)) => c.fail(format!(
                "P_π(i)·A_i = {l} but A'_β(i)·P_i = {r} at component {}",
                comp.id
            )),
            _ => c.fail(format!("integer overflow checking component {}", comp.id)),
        }
    }
    c.finish()
}

/// Saddle correspondence induced by the curve map, with diagnostics when it
/// is not a well-defined injection.
fn saddle_map<'a, R: Real>(
    c: &mut Check,
    s1: &'a Scheme<R>,
    s2: &'a Scheme<R>,
    cert: &Certificate,
) -> BTreeMap<&'a str, &'a str> {
    let mut fwd: BTreeMap<&str, &str> = BTreeMap::new();
    let mut back: BTreeMap<&str, &str> = BTreeMap::new();
    for curve in s1.curves() {
        let Some(img) = cert.curve_map.get(&curve.id).and_then(|l| s2.curve(l)) else {
            continue;
        };
        match fwd.get(curve.saddle.as_str()) {
            Some(prev) if *prev != img.saddle => c.fail(format!(
                "saddle {} is sent to both {} and {}",
                curve.saddle, prev, img.saddle
            )),
            Some(_) => {}
            None => {
                if let Some(other) = back.insert(&img.saddle, &curve.saddle) {
                    c.fail(format!(
                        "saddles {} and {} are both sent to {}",
                        other, curve.saddle, img.saddle
                    ));
                }
                fwd.insert(&curve.saddle, &img.saddle);
            }
        }
    }
    fwd
}

fn class_check(
    c: &mut Check,
    cert: &Certificate,
    id: &str,
    component: &str,
    class: [i64; 2],
    img_class: [i64; 2],
) {
    if let Some(p) = cert.basis_changes.get(component) {
        let v = p.apply(class);
        if !same_up_to_sign(v, img_class) {
            c.fail(format!(
                "{id}: P·({},{}) = ({},{}) is not ±({},{})",
                class[0], class[1], v[0], v[1], img_class[0], img_class[1]
            ));
        }
    } else {
        c.fail(format!("{id}: no basis change for component {component}"));
    }
}

/// Separatrix curves: kind, component, homotopy class up to sign, partner
/// and saddle correspondence.
pub fn check_condition2<R: Real>(s1: &Scheme<R>, s2: &Scheme<R>, cert: &Certificate) -> ConditionResult {
    let mut c = Check::new("2");
    let d1: BTreeSet<&str> = s1.curves().map(|x| x.id.as_str()).collect();
    let d2: BTreeSet<&str> = s2.curves().map(|x| x.id.as_str()).collect();
    if !check_bijection(&mut c, "curve_map", &cert.curve_map, &d1, &d2) {
        return c.finish();
    }
    for curve in s1.curves() {
        let img = s2.curve(&cert.curve_map[&curve.id]).expect("bijection checked");
        if curve.kind != img.kind {
            c.fail(format!("{} ({:?}) is sent to {} ({:?})", curve.id, curve.kind, img.id, img.kind));
        }
        if cert.component_map.get(&curve.component) != Some(&img.component) {
            c.fail(format!(
                "{} lies in {} but its image {} lies in {}, not the image component",
                curve.id, curve.component, img.id, img.component
            ));
        }
        class_check(&mut c, cert, &curve.id, &curve.component, curve.class, img.class);
        if cert.curve_map.get(&curve.partner) != Some(&img.partner) {
            c.fail(format!("partner of {} is not sent to the partner of {}", curve.id, img.id));
        }
    }
    saddle_map(&mut c, s1, s2, cert);
    c.finish()
}

/// Boundary curves: family, component, homotopy class up to sign, and the
/// grouping by attractor.
pub fn check_condition6<R: Real>(s1: &Scheme<R>, s2: &Scheme<R>, cert: &Certificate) -> ConditionResult {
    let mut c = Check::new("6");
    let d1: BTreeSet<&str> = s1.boundary_curves().map(|(_, x)| x.id.as_str()).collect();
    let d2: BTreeSet<&str> = s2.boundary_curves().map(|(_, x)| x.id.as_str()).collect();
    if !check_bijection(&mut c, "boundary_curve_map", &cert.boundary_curve_map, &d1, &d2) {
        return c.finish();
    }
    let mut induced: BTreeMap<&str, &str> = BTreeMap::new();
    let mut induced_back: BTreeMap<&str, &str> = BTreeMap::new();
    for (kind, b) in s1.boundary_curves() {
        let (ikind, img) = s2
            .boundary_curve(&cert.boundary_curve_map[&b.id])
            .expect("bijection checked");
        if kind != ikind {
            let name = |k| if k == CurveKind::Stable { "s_boundary" } else { "u_boundary" };
            c.fail(format!("{} in {} is sent to {} in {}", b.id, name(kind), img.id, name(ikind)));
        }
        if cert.component_map.get(&b.component) != Some(&img.component) {
            c.fail(format!(
                "{} lies in {} but its image {} lies in {}, not the image component",
                b.id, b.component, img.id, img.component
            ));
        }
        class_check(&mut c, cert, &b.id, &b.component, b.class, img.class);
        if !cert.attractor_maps.is_empty() {
            match cert.attractor_map(&b.attractor) {
                Some(m) if m.target == img.attractor => {}
                Some(m) => c.fail(format!(
                    "{} belongs to {} (mapped to {}) but its image belongs to {}",
                    b.id, b.attractor, m.target, img.attractor
                )),
                None => c.fail(format!("no attractor map for {}", b.attractor)),
            }
        } else {
            match induced.get(b.attractor.as_str()) {
                Some(prev) if *prev != img.attractor => c.fail(format!(
                    "boundary curves of {} are sent to curves of both {} and {}",
                    b.attractor, prev, img.attractor
                )),
                Some(_) => {}
                None => {
                    if let Some(o) = induced_back.insert(&img.attractor, &b.attractor) {
                        c.fail(format!(
                            "boundary curves of {} and {} are both sent to curves of {}",
                            o, b.attractor, img.attractor
                        ));
                    }
                    induced.insert(&b.attractor, &img.attractor);
                }
            }
        }
    }
    c.finish()
}

/// Matched tangency families have equal `ln|λ|/ln|μ|`; the point map
/// respects families, components, host curves and contact orders.
pub fn check_condition3<R: Real>(
    s1: &Scheme<R>,
    s2: &Scheme<R>,
    cert: &Certificate,
    tol: R,
) -> ConditionResult {
    let mut c = Check::new("3");
    let f1: BTreeSet<&str> = s1.tangencies.iter().map(|x| x.id.as_str()).collect();
    let f2: BTreeSet<&str> = s2.tangencies.iter().map(|x| x.id.as_str()).collect();
    let p1: BTreeSet<&str> = s1.points().map(|(_, x)| x.id.as_str()).collect();
    let p2: BTreeSet<&str> = s2.points().map(|(_, x)| x.id.as_str()).collect();
    let families_ok = check_bijection(&mut c, "tangency_map", &cert.tangency_map, &f1, &f2);
    let points_ok = check_bijection(&mut c, "point_map", &cert.point_map, &p1, &p2);
    if !families_ok {
        return c.finish();
    }
    let mut scratch = Check::new("3");
    let saddles = saddle_map(&mut scratch, s1, s2, cert);
    for f in &s1.tangencies {
        let g = s2.family(&cert.tangency_map[&f.id]).expect("bijection checked");
        let (a, b) = (log_ratio(f.lambda, f.mu), log_ratio(g.lambda, g.mu));
        if !rel_eq(a, b, tol) {
            c.fail(format!(
                "{} → {}: ln|λ|/ln|μ| = {} vs {}",
                f.id,
                g.id,
                a.to_text(),
                b.to_text()
            ));
        }
        for (role, s, t) in [("saddle_s", &f.saddle_s, &g.saddle_s), ("saddle_u", &f.saddle_u, &g.saddle_u)] {
            if let Some(img) = saddles.get(s.as_str()) {
                if *img != t.as_str() {
                    c.fail(format!("{}: {role} {s} corresponds to {img}, family {} has {t}", f.id, g.id));
                }
            }
        }
        if f.points.len() != g.points.len() {
            c.fail(format!("{} has {} points, {} has {}", f.id, f.points.len(), g.id, g.points.len()));
        }
        if !points_ok {
            continue;
        }
        for a in &f.points {
            let (ga, ia) = s2.point(&cert.point_map[&a.id]).expect("bijection checked");
            if ga.id != g.id {
                c.fail(format!("{} of {} is sent to {} of {}, not of {}", a.id, f.id, ia.id, ga.id, g.id));
            }
            if cert.component_map.get(&a.component) != Some(&ia.component) {
                c.fail(format!("{} lies in {} but {} lies in {}", a.id, a.component, ia.id, ia.component));
            }
            if cert.curve_map.get(&a.host_curve) != Some(&ia.host_curve) {
                c.fail(format!("host curve of {} is not sent to the host curve of {}", a.id, ia.id));
            }
            if a.order != ia.order {
                c.fail(format!("{} has contact order {}, {} has {}", a.id, a.order, ia.id, ia.order));
            }
        }
    }
    c.finish()
}

struct PairData<'a, R> {
    f: &'a TangencyFamily<R>,
    g: &'a TangencyFamily<R>,
    a1: &'a TangencyPoint<R>,
    a2: &'a TangencyPoint<R>,
    b1: &'a TangencyPoint<R>,
    b2: &'a TangencyPoint<R>,
}

/// Point pairs of matched families, with their images, split into
/// same-component and cross-component pairs. Pairs whose images cannot be
/// resolved are reported as blocked.
fn matched_pairs<'a, R: Real>(
    c: &mut Check,
    s1: &'a Scheme<R>,
    s2: &'a Scheme<R>,
    cert: &Certificate,
    same_component: bool,
) -> Vec<PairData<'a, R>> {
    let mut out = Vec::new();
    for f in &s1.tangencies {
        let Some(g) = cert.tangency_map.get(&f.id).and_then(|l| s2.family(l)) else {
            c.block(format!("family {} has no image", f.id));
            continue;
        };
        for a1 in &f.points {
            for a2 in &f.points {
                if a1.id >= a2.id || (a1.component == a2.component) != same_component {
                    continue;
                }
                let img = |p: &TangencyPoint<R>| {
                    cert.point_map
                        .get(&p.id)
                        .and_then(|l| g.points.iter().find(|q| q.id == *l))
                };
                match (img(a1), img(a2)) {
                    (Some(b1), Some(b2)) => out.push(PairData { f, g, a1, a2, b1, b2 }),
                    _ => c.block(format!("points {}, {} have no images in {}", a1.id, a2.id, g.id)),
                }
            }
        }
    }
    out
}

/// Same-component point pairs: the winding-corrected modulus
/// `(k·ln|λ/μ| + ln|τ2/τ1|)/ln|μ|` agrees across the certificate, with
/// `k` the winding between the two points (0 when not stored).
pub fn check_condition4a<R: Real>(
    s1: &Scheme<R>,
    s2: &Scheme<R>,
    cert: &Certificate,
    tol: R,
) -> ConditionResult {
    let mut c = Check::new("4a");
    for p in matched_pairs(&mut c, s1, s2, cert, true) {
        let k = R::from(s1.winding_or_zero(&p.a1.id, &p.a2.id)).expect("winding fits");
        let k2 = R::from(s2.winding_or_zero(&p.b1.id, &p.b2.id)).expect("winding fits");
        let lhs = (k * ln_r(p.f) + ln_ratio(p.a1, p.a2)) / p.f.mu.abs().ln();
        let rhs = (k2 * ln_r(p.g) + ln_ratio(p.b1, p.b2)) / p.g.mu.abs().ln();
        if !rel_eq_log(lhs, rhs, tol) {
            c.fail(format!(
                "({}, {}) → ({}, {}): modulus e^{} vs e^{} (windings {} and {})",
                p.a1.id,
                p.a2.id,
                p.b1.id,
                p.b2.id,
                lhs.to_text(),
                rhs.to_text(),
                k.to_text(),
                k2.to_text()
            ));
        } else if !same_sign(p.a2.tau / p.a1.tau, p.b2.tau / p.b1.tau) {
            c.fail(format!(
                "({}, {}) → ({}, {}): τ ratios have opposite signs",
                p.a1.id, p.a2.id, p.b1.id, p.b2.id
            ));
        }
    }
    c.finish()
}

fn holds_4b<R: Real>(p: &PairData<R>, m: i64, tol: R) -> bool {
    let lhs = ln_ratio(p.a1, p.a2) / p.f.mu.abs().ln();
    let m = R::from(m).expect("m fits");
    let rhs = (m * ln_r(p.g) + ln_ratio(p.b1, p.b2)) / p.g.mu.abs().ln();
    rel_eq_log(lhs, rhs, tol) && same_sign(p.a2.tau / p.a1.tau, p.b2.tau / p.b1.tau)
}

/// Cross-component point pairs: some integer `m` reconciles the moduli.
/// Given `m` values are verified; missing ones are searched in
/// `[-m_bound, m_bound]` by increasing `|m|` and recorded in `cert`.
pub fn check_condition4b<R: Real>(
    s1: &Scheme<R>,
    s2: &Scheme<R>,
    cert: &mut Certificate,
    tol: R,
    m_bound: i64,
) -> ConditionResult {
    let mut c = Check::new("4b");
    let mut found = Vec::new();
    for p in matched_pairs(&mut c, s1, s2, cert, false) {
        let (a1, a2) = (&p.a1.id, &p.a2.id);
        match cert.m_value(a1, a2) {
            Some(m) => {
                if !holds_4b(&p, m, tol) {
                    c.fail(format!("({a1}, {a2}): the given m = {m} does not reconcile the moduli"));
                }
            }
            None => match search_m(&p, tol, m_bound) {
                Some(m) => found.push((a1.clone(), a2.clone(), m)),
                None => c.fail(format!("({a1}, {a2}): no m in bound |m| ≤ {m_bound}")),
            },
        }
    }
    for (a1, a2, m) in found {
        cert.set_m_value(&a1, &a2, m);
    }
    c.finish()
}

fn search_m<R: Real>(p: &PairData<R>, tol: R, bound: i64) -> Option<i64> {
    (0..=bound)
        .flat_map(|n| if n == 0 { vec![0] } else { vec![n, -n] })
        .find(|&m| holds_4b(p, m, tol))
}

/// For points `a1, b1` in one torus and `a2, b2` in another, with `a1, a2`
/// in one family and `b1, b2` in one family:
/// `m_b = m_a - (k'(a1,b1) - k(a1,b1)) + (k'(a2,b2) - k(a2,b2))`, where
/// `k` are source windings and `k'` windings between the images.
pub fn check_condition5<R: Real>(s1: &Scheme<R>, s2: &Scheme<R>, cert: &Certificate) -> ConditionResult {
    let mut c = Check::new("5");
    let img = |id: &str| cert.point_map.get(id).map(String::as_str);
    let dk = |x: &str, y: &str| -> Option<i64> {
        Some(s2.winding_or_zero(img(x)?, img(y)?) - s1.winding_or_zero(x, y))
    };
    let cross: Vec<(&str, &str, &str, &str)> = s1
        .tangencies
        .iter()
        .flat_map(|f| {
            f.points.iter().flat_map(move |a1| {
                f.points.iter().filter_map(move |a2| {
                    (a1.component < a2.component).then_some((
                        a1.id.as_str(),
                        a2.id.as_str(),
                        a1.component.as_str(),
                        a2.component.as_str(),
                    ))
                })
            })
        })
        .collect();
    for &(a1, a2, t1, t2) in &cross {
        for &(b1, b2, u1, u2) in &cross {
            if (t1, t2) != (u1, u2) || (a1, a2) >= (b1, b2) {
                continue;
            }
            let (Some(ma), Some(mb)) = (cert.m_value(a1, a2), cert.m_value(b1, b2)) else {
                c.block(format!("m missing for ({a1}, {a2}) or ({b1}, {b2})"));
                continue;
            };
            let (Some(d1), Some(d2)) = (dk(a1, b1), dk(a2, b2)) else {
                c.block(format!("points of ({a1}, {a2}, {b1}, {b2}) have no images"));
                continue;
            };
            let expected = ma - d1 + d2;
            if mb != expected {
                c.fail(format!(
                    "m({b1}, {b2}) = {mb}, expected {expected} from m({a1}, {a2}) = {ma}"
                ));
            }
        }
    }
    c.finish()
}

/// Attractor records: free-group conjugacy of the restricted maps up to a
/// lift twist, the induced boundary-point bijection against the boundary
/// curve map, the number of periodic components, and bunch structure.
pub fn check_condition7<R: Real>(s1: &Scheme<R>, s2: &Scheme<R>, cert: &Certificate) -> ConditionResult {
    let mut c = Check::new("7");
    if s1.attractors.is_empty() && s2.attractors.is_empty() {
        return c.finish();
    }
    if cert.attractor_maps.is_empty() {
        return ConditionResult {
            condition: "7".into(),
            status: ConditionStatus::SkippedNeedsCertificate,
            diagnostics: vec!["the certificate supplies no attractor maps".into()],
        };
    }
    let d1: BTreeSet<&str> = s1.attractors.iter().map(|a| a.id.as_str()).collect();
    let d2: BTreeSet<&str> = s2.attractors.iter().map(|a| a.id.as_str()).collect();
    let as_map: BTreeMap<Label, Label> = cert
        .attractor_maps
        .iter()
        .map(|m| (m.source.clone(), m.target.clone()))
        .collect();
    if as_map.len() != cert.attractor_maps.len() {
        c.fail("attractor_maps lists a source twice");
    }
    if !check_bijection(&mut c, "attractor_maps", &as_map, &d1, &d2) {
        return c.finish();
    }
    for m in &cert.attractor_maps {
        let a = s1.attractor(&m.source).expect("bijection checked");
        let b = s2.attractor(&m.target).expect("bijection checked");
        let at = format!("{} → {}", a.id, b.id);
        if a.kind != b.kind {
            c.fail(format!("{at}: {:?} vs {:?}", a.kind, b.kind));
        }
        if a.rank != b.rank {
            c.fail(format!("{at}: rank {} vs {}", a.rank, b.rank));
            continue;
        }
        if a.periodic_components != b.periodic_components {
            c.fail(format!(
                "{at}: {} periodic components vs {}",
                a.periodic_components, b.periodic_components
            ));
        }
        match verify_conjugacy_up_to_lift(&a.automorphism, &b.automorphism, &m.psi, &m.psi_inv, &m.twist) {
            Ok(true) => {}
            Ok(false) => c.fail(format!("{at}: ψ does not conjugate the automorphisms (twist {})", m.twist)),
            Err(e) => c.fail(format!("{at}: {e}")),
        }
        let bp1: BTreeSet<&str> = a.boundary_points.iter().map(|p| p.id.as_str()).collect();
        let bp2: BTreeSet<&str> = b.boundary_points.iter().map(|p| p.id.as_str()).collect();
        if !check_bijection(&mut c, &format!("{at} boundary points"), &m.boundary_points, &bp1, &bp2) {
            continue;
        }
        for p in &a.boundary_points {
            let q = b
                .boundary_points
                .iter()
                .find(|q| q.id == m.boundary_points[&p.id])
                .expect("bijection checked");
            if cert.boundary_curve_map.get(&p.curve) != Some(&q.curve) {
                c.fail(format!(
                    "{at}: ℓ_{} lies on {} which is not sent to {}, the curve of ℓ_{}",
                    p.id, p.curve, q.curve, q.id
                ));
            }
        }
        let bunches2: Vec<(BTreeSet<&str>, u32)> = b
            .bunches
            .iter()
            .map(|x| (x.points().into_iter().collect(), x.degree))
            .collect();
        for bunch in &a.bunches {
            let image: BTreeSet<&str> = bunch
                .points()
                .into_iter()
                .map(|p| m.boundary_points[p].as_str())
                .collect();
            if !bunches2.iter().any(|(s, d)| *s == image && *d == bunch.degree) {
                c.fail(format!("{at}: bunch {} has no image bunch of degree {}", bunch.id, bunch.degree));
            }
        }
    }
    c.finish()
}

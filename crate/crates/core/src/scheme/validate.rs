use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::scalar::Real;

use super::types::{CurveKind, Scheme, SeparatrixCurve};

/// A violated invariant. Paths name list entries by label, not by index,
/// so reordering a file does not change its report.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            path: path.into(),
            message: message.into(),
        });
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

fn check_class(report: &mut ValidationReport, path: String, class: [i64; 2]) {
    if class == [0, 0] {
        report.push(path, "homotopy class (0,0) is contractible; curves must be non-contractible");
    } else if gcd(class[0], class[1]) != 1 {
        report.push(
            path,
            format!(
                "homotopy class ({},{}) is not primitive; a simple non-contractible curve needs gcd 1",
                class[0], class[1]
            ),
        );
    }
}

/// Checks every typed invariant of a scheme. The report is sorted and
/// empty iff all invariants hold.
pub fn validate_scheme<R: Real>(s: &Scheme<R>) -> ValidationReport {
    let mut r = ValidationReport::default();
    let components: BTreeSet<&str> = s.components.iter().map(|c| c.id.as_str()).collect();

    for (section, id) in super::text::duplicate_ids(s) {
        r.push(section, format!("duplicate id {id}"));
    }
    if s.k_f == 0 {
        r.push("k_f", "k_f must be positive");
    }

    let mut images = BTreeMap::new();
    for c in &s.components {
        let at = format!("components[{}]", c.id);
        if !c.action.is_unimodular() {
            r.push(
                format!("{at}.action"),
                format!("determinant {} is not ±1", c.action.det()),
            );
        }
        if !components.contains(c.image.as_str()) {
            r.push(format!("{at}.image"), format!("unknown component {}", c.image));
        } else {
            *images.entry(c.image.as_str()).or_insert(0) += 1;
        }
    }
    for (img, n) in &images {
        if *n > 1 {
            r.push(
                format!("components[{img}]"),
                format!("image of {n} components; the image assignment must be a permutation"),
            );
        }
    }

    for (list, kind, curves) in [
        ("s_curves", CurveKind::Stable, &s.s_curves),
        ("u_curves", CurveKind::Unstable, &s.u_curves),
    ] {
        for c in curves {
            check_curve(&mut r, s, list, kind, c, &components);
        }
    }

    for (list, curves) in [("s_boundary", &s.s_boundary), ("u_boundary", &s.u_boundary)] {
        for b in curves {
            let at = format!("{list}[{}]", b.id);
            check_class(&mut r, format!("{at}.class"), b.class);
            if !components.contains(b.component.as_str()) {
                r.push(format!("{at}.component"), format!("unknown component {}", b.component));
            }
            match s.attractor(&b.attractor) {
                None => r.push(format!("{at}.attractor"), format!("unknown attractor {}", b.attractor)),
                Some(a) => match a.boundary_points.iter().find(|p| p.id == b.boundary_point) {
                    None => r.push(
                        format!("{at}.boundary_point"),
                        format!("{} is not a boundary point of {}", b.boundary_point, a.id),
                    ),
                    Some(p) if p.curve != b.id => r.push(
                        format!("{at}.boundary_point"),
                        format!("boundary point {} links to curve {}", p.id, p.curve),
                    ),
                    Some(_) => {}
                },
            }
        }
    }

    let s_curve_ids: BTreeMap<&str, &SeparatrixCurve> =
        s.s_curves.iter().map(|c| (c.id.as_str(), c)).collect();
    let mut point_component = BTreeMap::new();
    for f in &s.tangencies {
        let at = format!("tangencies[{}]", f.id);
        let (l, m) = (f.lambda.abs(), f.mu.abs());
        if !(l > R::zero() && l < R::one() && m > R::one() && m.is_finite()) {
            r.push(
                at.clone(),
                format!(
                    "eigenvalues violate 0<|λ|<1<|μ| (λ={}, μ={})",
                    f.lambda.to_text(),
                    f.mu.to_text()
                ),
            );
        }
        for p in &f.points {
            let pat = format!("{at}.points[{}]", p.id);
            point_component.insert(p.id.as_str(), p.component.as_str());
            if p.tau == R::zero() || !p.tau.is_finite() {
                r.push(format!("{pat}.tau"), "τ must be a nonzero finite real");
            }
            if p.order < 2 {
                r.push(
                    format!("{pat}.order"),
                    format!("order {} is not a tangency (order ≥ 2 required)", p.order),
                );
            }
            if !components.contains(p.component.as_str()) {
                r.push(format!("{pat}.component"), format!("unknown component {}", p.component));
            }
            match s_curve_ids.get(p.host_curve.as_str()) {
                None => r.push(
                    format!("{pat}.host_curve"),
                    format!("{} is not a stable separatrix curve", p.host_curve),
                ),
                Some(c) => {
                    if c.saddle != f.saddle_s {
                        r.push(
                            format!("{pat}.host_curve"),
                            format!("host curve belongs to saddle {}, family has {}", c.saddle, f.saddle_s),
                        );
                    }
                    if c.component != p.component {
                        r.push(
                            format!("{pat}.host_curve"),
                            format!("host curve lies in {}, point in {}", c.component, p.component),
                        );
                    }
                }
            }
        }
    }

    let mut stored = BTreeMap::new();
    for w in &s.windings {
        let at = format!("windings[{}->{}]", w.from, w.to);
        if stored.insert((w.from.as_str(), w.to.as_str()), w.k).is_some() {
            r.push(at.clone(), "winding stored twice");
        }
        let a = point_component.get(w.from.as_str());
        let b = point_component.get(w.to.as_str());
        if a.is_none() {
            r.push(format!("{at}.from"), format!("unknown tangency point {}", w.from));
        }
        if b.is_none() {
            r.push(format!("{at}.to"), format!("unknown tangency point {}", w.to));
        }
        if let (Some(a), Some(b)) = (a, b) {
            if a != b {
                r.push(at.clone(), format!("points lie in different components ({a}, {b})"));
            }
        }
        if w.from == w.to && w.k != 0 {
            r.push(at, "winding of a point to itself must be 0");
        }
    }
    for (&(a, b), &k) in &stored {
        if a < b {
            if let Some(&back) = stored.get(&(b, a)) {
                if back != -k {
                    r.push(
                        format!("windings[{a}->{b}]"),
                        format!("reverse path stores {back}, expected {}", -k),
                    );
                }
            }
        }
    }

    for a in &s.attractors {
        let at = format!("attractors[{}]", a.id);
        if a.rank == 0 {
            r.push(format!("{at}.rank"), "rank must be positive");
        }
        if a.periodic_components == 0 {
            r.push(format!("{at}.periodic_components"), "must be positive");
        }
        if a.automorphism.rank() != a.rank as usize {
            r.push(
                format!("{at}.automorphism"),
                format!("defined on {} generators, rank is {}", a.automorphism.rank(), a.rank),
            );
        }
        let bpoints: BTreeSet<&str> = a.boundary_points.iter().map(|p| p.id.as_str()).collect();
        for p in &a.boundary_points {
            match s.boundary_curve(&p.curve) {
                None => r.push(
                    format!("{at}.boundary_points[{}]", p.id),
                    format!("unknown boundary curve {}", p.curve),
                ),
                Some((_, b)) if b.attractor != a.id || b.boundary_point != p.id => r.push(
                    format!("{at}.boundary_points[{}]", p.id),
                    format!("curve {} belongs to {}/{}", b.id, b.attractor, b.boundary_point),
                ),
                Some(_) => {}
            }
        }
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for b in &a.bunches {
            let bat = format!("{at}.bunches[{}]", b.id);
            if b.members.is_empty() {
                r.push(bat.clone(), "bunch has no members");
            }
            let pts = b.points();
            for p in &pts {
                if !bpoints.contains(p) {
                    r.push(bat.clone(), format!("unknown boundary point {p}"));
                }
                *seen.entry(p).or_insert(0) += 1;
            }
            if b.degree as usize != pts.len() {
                r.push(
                    format!("{bat}.degree"),
                    format!("degree {} but {} distinct boundary points", b.degree, pts.len()),
                );
            }
        }
        for p in &bpoints {
            match seen.get(p).copied().unwrap_or(0) {
                1 => {}
                0 => r.push(format!("{at}.bunches"), format!("boundary point {p} is in no bunch")),
                n => r.push(format!("{at}.bunches"), format!("boundary point {p} is in {n} bunches")),
            }
        }
    }

    if let Some(f) = &s.facts {
        for d in f.dangling() {
            r.push("facts", d);
        }
    }

    r.violations.sort();
    r
}

fn check_curve<R: Real>(
    r: &mut ValidationReport,
    s: &Scheme<R>,
    list: &str,
    kind: CurveKind,
    c: &SeparatrixCurve,
    components: &BTreeSet<&str>,
) {
    let at = format!("{list}[{}]", c.id);
    check_class(r, format!("{at}.class"), c.class);
    if c.kind != kind {
        r.push(format!("{at}.kind"), format!("listed in {list} with kind {:?}", c.kind));
    }
    if !components.contains(c.component.as_str()) {
        r.push(format!("{at}.component"), format!("unknown component {}", c.component));
    }
    if c.partner == c.id {
        r.push(format!("{at}.partner"), "a curve cannot be its own partner");
        return;
    }
    match s.curve(&c.partner) {
        None => r.push(format!("{at}.partner"), format!("unknown curve {}", c.partner)),
        Some(p) => {
            if p.partner != c.id {
                r.push(format!("{at}.partner"), format!("partner {} points to {}", p.id, p.partner));
            }
            if p.saddle != c.saddle {
                r.push(
                    format!("{at}.partner"),
                    format!("partner belongs to saddle {}, not {}", p.saddle, c.saddle),
                );
            }
            if p.kind != c.kind {
                r.push(format!("{at}.partner"), "partner has a different kind");
            }
        }
    }
}

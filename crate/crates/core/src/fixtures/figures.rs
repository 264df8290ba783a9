//! Separability data in the style of the two torus pictures: an attractor
//! with four boundary points in two bunches, whose free separatrices end in
//! two sources (separable), or with one separatrix ending in a saddle (not
//! separable).

use crate::free_group::FreeGroupAut;
use crate::mat2::Mat2;
use crate::scheme::{
    AttractorKind, AttractorRecord, BoundaryCurve, BoundaryPoint, Scheme, TorusComponent,
};
use crate::separability::{
    enumerate_bunches, BasicKind, BasicSet, Contact, Count, Descriptor, Facts, Frontier, Intersection,
    IntersectionTable, Landing, Manifold, Pairing, SeparatrixEnd,
};

fn set(id: &str, kind: BasicKind) -> BasicSet {
    BasicSet {
        id: id.into(),
        kind,
        period: kind.is_trivial().then_some(1),
    }
}

fn desc(set: &str, m: Manifold) -> Descriptor {
    Descriptor {
        set: set.into(),
        manifold: m,
        label: None,
    }
}

fn entry(u: &str, s: &str, contact: Contact) -> Intersection {
    Intersection {
        source: desc(u, Manifold::Unstable),
        target: desc(s, Manifold::Stable),
        contact,
        order: (contact == Contact::Tangent).then_some(Count::Finite(2)),
        orbits: Some(Count::Finite(1)),
        side_separated: (contact == Contact::Tangent).then_some(true),
    }
}

/// Four boundary points, two per source basin.
fn torus_scheme(facts: Facts) -> Scheme<f64> {
    let pairing = facts.pairing[0].clone();
    let mut rec = AttractorRecord {
        id: "L".into(),
        kind: AttractorKind::Attractor,
        periodic_components: 1,
        rank: 2,
        automorphism: FreeGroupAut::canonical_lift([[2, 1], [1, 1]]),
        boundary_points: (1..=4)
            .map(|i| BoundaryPoint {
                id: format!("p{i}"),
                curve: format!("lp{i}"),
            })
            .collect(),
        bunches: vec![],
    };
    rec.bunches = enumerate_bunches(&rec, &pairing).expect("fixed partition");
    Scheme {
        components: vec![TorusComponent {
            id: "T0".into(),
            action: Mat2::new(2, 1, 1, 1),
            image: "T0".into(),
        }],
        s_curves: vec![],
        u_curves: vec![],
        s_boundary: (1..=4)
            .map(|i| BoundaryCurve {
                id: format!("lp{i}"),
                attractor: "L".into(),
                boundary_point: format!("p{i}"),
                component: "T0".into(),
                class: [1, 0],
            })
            .collect(),
        u_boundary: vec![],
        tangencies: vec![],
        windings: vec![],
        attractors: vec![rec],
        k_f: 1,
        facts: Some(facts),
    }
}

fn base_facts() -> Facts {
    Facts {
        roster: vec![
            set("L", BasicKind::Attractor),
            set("alpha1", BasicKind::Source),
            set("alpha2", BasicKind::Source),
        ],
        intersections: IntersectionTable {
            complete: true,
            entries: vec![],
        },
        ends: (1..=4)
            .map(|i| SeparatrixEnd {
                attractor: "L".into(),
                boundary_point: format!("p{i}"),
                landing: Landing::Source,
                set: Some(if i <= 2 { "alpha1" } else { "alpha2" }.into()),
            })
            .collect(),
        frontiers: vec![Frontier {
            attractor: "L".into(),
            sets: Some(vec!["alpha1".into(), "alpha2".into()]),
        }],
        pairing: vec![Pairing {
            attractor: "L".into(),
            groups: vec![vec!["p1".into(), "p2".into()], vec!["p3".into(), "p4".into()]],
        }],
    }
}

/// Every free separatrix ends in a source.
pub fn separable_torus() -> Scheme<f64> {
    torus_scheme(base_facts())
}

/// The free separatrix of `p4` ends in the saddle `sigma` instead, so it
/// coincides with an unstable separatrix of `sigma`: a non-transverse
/// intersection of `W^u(sigma)` with `W^s(L)`.
pub fn non_separable_torus() -> Scheme<f64> {
    let mut f = base_facts();
    f.roster.push(set("sigma", BasicKind::Saddle));
    f.ends[3].landing = Landing::Saddle;
    f.ends[3].set = Some("sigma".into());
    f.frontiers[0].sets.as_mut().expect("declared").push("sigma".into());
    let mut e = entry("sigma", "L", Contact::Tangent);
    e.order = Some(Count::Infinite);
    f.intersections.entries.push(e);
    torus_scheme(f)
}

/// A complete table violating exactly the given finite-moduli criterion
/// (1 to 5) and no other.
pub fn criteria_violation(clause: u8) -> Facts {
    let mut roster = vec![
        set("R", BasicKind::Repeller),
        set("w", BasicKind::Sink),
        set("a", BasicKind::Source),
    ];
    roster.extend((1..=4).map(|i| set(&format!("s{i}"), BasicKind::Saddle)));
    let tangent = |u: &str, s: &str| entry(u, s, Contact::Tangent);
    let entries = match clause {
        1 => vec![tangent("R", "s1")],
        2 => {
            let mut e = tangent("s1", "s2");
            e.orbits = Some(Count::Infinite);
            vec![e]
        }
        3 => {
            let mut e = entry("s1", "s3", Contact::Transverse);
            e.orbits = Some(Count::Infinite);
            vec![tangent("s1", "s2"), e]
        }
        4 => {
            let mut e = tangent("s1", "s2");
            e.side_separated = Some(false);
            vec![e]
        }
        5 => vec![
            tangent("s1", "s2"),
            tangent("s2", "s3"),
            entry("s4", "s1", Contact::Transverse),
        ],
        _ => vec![],
    };
    Facts {
        roster,
        intersections: IntersectionTable { complete: true, entries },
        ends: vec![],
        frontiers: vec![],
        pairing: vec![],
    }
}

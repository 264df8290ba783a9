use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scheme_kit::fixtures::{corpus, criteria_violation, non_separable_torus, separable_torus};
use scheme_kit::separability::{
    check_finite_moduli_criteria, check_separable, BasicKind, Contact, Count, Descriptor, Facts,
    Intersection, Landing, Manifold, Status,
};

fn entry(u: &str, s: &str, contact: Contact) -> Intersection {
    Intersection {
        source: Descriptor { set: u.into(), manifold: Manifold::Unstable, label: None },
        target: Descriptor { set: s.into(), manifold: Manifold::Stable, label: None },
        contact,
        order: None,
        orbits: Some(Count::Finite(1)),
        side_separated: Some(true),
    }
}

#[test]
fn separable_figure() {
    let s = separable_torus();
    let facts = s.facts.as_ref().unwrap();
    let r = check_separable(&s.attractors[0], facts);
    assert_eq!(r.status, Status::Pass, "{r:?}");
    assert!(r.warnings.is_empty());
}

#[test]
fn non_separable_figure_cites_condition2() {
    let s = non_separable_torus();
    let facts = s.facts.as_ref().unwrap();
    let r = check_separable(&s.attractors[0], facts);
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.failed(), vec![2]);
    let c2 = &r.conditions[1];
    assert!(c2.diagnostics.iter().any(|d| d.contains("p4")), "{c2:?}");
    assert!(r.conditions.iter().all(|c| c.clause == 2 || c.status == Status::Pass));
}

#[test]
fn unknown_landing_is_undetermined() {
    let s = separable_torus();
    let mut facts = s.facts.clone().unwrap();
    facts.ends[0].landing = Landing::Unknown;
    let r = check_separable(&s.attractors[0], &facts);
    assert_eq!(r.conditions[1].status, Status::Undetermined);
    assert_eq!(r.status, Status::Undetermined);
    facts.ends.remove(0);
    let r = check_separable(&s.attractors[0], &facts);
    assert_eq!(r.conditions[1].status, Status::Undetermined);
}

#[test]
fn empty_boundary_is_vacuous_with_warning() {
    let s = separable_torus();
    let mut rec = s.attractors[0].clone();
    rec.boundary_points.clear();
    rec.bunches.clear();
    let r = check_separable(&rec, s.facts.as_ref().unwrap());
    assert_eq!(r.conditions[1].status, Status::Pass);
    assert_eq!(r.warnings.len(), 1);
}

#[test]
fn heteroclinic_point_on_frontier_saddle() {
    let s = separable_torus();
    let mut facts = s.facts.clone().unwrap();
    facts.roster.push(scheme_kit::separability::BasicSet {
        id: "sigma".into(),
        kind: BasicKind::Saddle,
        period: Some(1),
    });
    facts.frontiers[0].sets.as_mut().unwrap().push("sigma".into());
    let r = check_separable(&s.attractors[0], &facts);
    assert_eq!(r.status, Status::Pass);
    facts.roster.push(scheme_kit::separability::BasicSet {
        id: "tau".into(),
        kind: BasicKind::Saddle,
        period: Some(1),
    });
    facts.intersections.entries.push(entry("tau", "sigma", Contact::Transverse));
    let r = check_separable(&s.attractors[0], &facts);
    assert_eq!(r.failed(), vec![3]);
}

#[test]
fn sink_in_frontier_fails_condition1() {
    let s = separable_torus();
    let mut facts = s.facts.clone().unwrap();
    facts.roster.push(scheme_kit::separability::BasicSet {
        id: "omega".into(),
        kind: BasicKind::Sink,
        period: Some(1),
    });
    facts.frontiers[0].sets.as_mut().unwrap().push("omega".into());
    assert_eq!(check_separable(&s.attractors[0], &facts).failed(), vec![1]);
}

#[test]
fn each_clause_is_flagged_alone() {
    for clause in 1..=5u8 {
        let r = check_finite_moduli_criteria(&criteria_violation(clause));
        assert_eq!(r.failed(), vec![clause], "clause {clause}: {r:?}");
        assert_eq!(r.status, Status::Fail);
    }
    let r = check_finite_moduli_criteria(&criteria_violation(0));
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn incomplete_table_is_undetermined() {
    let mut f = criteria_violation(0);
    f.intersections.complete = false;
    let r = check_finite_moduli_criteria(&f);
    assert_eq!(r.status, Status::Undetermined);
    let mut f = criteria_violation(2);
    f.intersections.complete = false;
    let r = check_finite_moduli_criteria(&f);
    assert_eq!(r.get(2).unwrap().status, Status::Fail);
    assert_eq!(r.get(1).unwrap().status, Status::Undetermined);
}

#[test]
fn reversed_entry_sides_are_normalized() {
    let mut f = criteria_violation(1);
    let e = &mut f.intersections.entries[0];
    std::mem::swap(&mut e.source, &mut e.target);
    assert_eq!(check_finite_moduli_criteria(&f).failed(), vec![1]);
}

/// Brute-force reading of the chain clause: some tangency pair `p→q`,
/// `q→r` and a saddle whose unstable manifold meets `W^s(p)` or whose
/// stable manifold meets `W^u(r)`.
fn chain_oracle(f: &Facts) -> bool {
    let es = &f.intersections.entries;
    let saddle = |x: &str| f.kind_of(x) == Some(BasicKind::Saddle);
    es.iter().filter(|e| e.is_tangent()).any(|e1| {
        es.iter()
            .filter(|e2| e2.is_tangent() && e2.source.set == e1.target.set)
            .any(|e2| {
                let (p, r) = (&e1.source.set, &e2.target.set);
                es.iter().any(|g| {
                    (g.target.set == *p && saddle(&g.source.set))
                        || (g.source.set == *r && saddle(&g.target.set))
                })
            })
    })
}

#[test]
fn chain_clause_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let names = ["s1", "s2", "s3", "s4", "w", "a"];
    let mut fails = 0;
    for _ in 0..400 {
        let mut f = criteria_violation(0);
        for _ in 0..rng.gen_range(1..6) {
            let u = names[rng.gen_range(0..4)];
            let s = names[rng.gen_range(0..4)];
            let contact = if rng.gen_bool(0.5) { Contact::Tangent } else { Contact::Transverse };
            f.intersections.entries.push(entry(u, s, contact));
        }
        let expected = chain_oracle(&f);
        let got = check_finite_moduli_criteria(&f).get(5).unwrap().status == Status::Fail;
        assert_eq!(got, expected, "{:?}", f.intersections.entries);
        fails += expected as usize;
    }
    assert!(fails > 20 && fails < 380, "{fails}");
}

#[test]
fn finite_moduli_implies_separable_on_corpus() {
    let mut checked = 0;
    for (name, s) in corpus() {
        let Some(facts) = s.facts.as_ref() else { continue };
        if check_finite_moduli_criteria(facts).status != Status::Pass {
            continue;
        }
        for rec in &s.attractors {
            let r = check_separable(rec, facts);
            assert_eq!(r.status, Status::Pass, "{name}: {r:?}");
            checked += 1;
        }
    }
    assert!(checked >= 3, "{checked}");
}

#[test]
fn non_separable_figure_violates_criteria() {
    let s = non_separable_torus();
    let r = check_finite_moduli_criteria(s.facts.as_ref().unwrap());
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.failed(), vec![1, 2]);
}

#[test]
fn facts_round_trip() {
    let f = non_separable_torus().facts.unwrap();
    assert_eq!(Facts::parse(&f.to_text()).unwrap(), f);
    assert!(Facts::parse("{\"roster\": [], \"bogus\": 1}").is_err());
}

use serde::Serialize;

use super::facts::{BasicKind, Count, Facts, Intersection};
use super::{describe, sides, Clause, ClauseResult, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriteriaReport {
    pub status: Status,
    pub criteria: Vec<ClauseResult>,
}

impl CriteriaReport {
    pub fn failed(&self) -> Vec<u8> {
        self.criteria
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.clause)
            .collect()
    }

    pub fn get(&self, clause: u8) -> Option<&ClauseResult> {
        self.criteria.iter().find(|c| c.clause == clause)
    }
}

/// The five finite-moduli criteria over the declared intersection table.
/// Clauses that need the absence of an entry are undetermined unless the
/// table is marked complete.
pub fn check_finite_moduli_criteria(facts: &Facts) -> CriteriaReport {
    let table = &facts.intersections;
    let is_saddle = |set: &str| facts.kind_of(set) == Some(BasicKind::Saddle);
    let tangent: Vec<(&Intersection, &str, &str)> = table
        .entries
        .iter()
        .filter(|e| e.is_tangent())
        .filter_map(|e| sides(e).map(|(u, s)| (e, u.set.as_str(), s.set.as_str())))
        .collect();

    let mut c1 = Clause::new(1);
    for (e, p, q) in &tangent {
        for set in [p, q] {
            match facts.kind_of(set) {
                None => c1.gap(format!("{set} is not in the roster ({})", describe(e))),
                Some(k) if !k.is_trivial() => {
                    c1.fail(format!("non-trivial basic set {set} in a tangency: {}", describe(e)))
                }
                Some(_) => {}
            }
        }
    }

    let mut c2 = Clause::new(2);
    for (e, _, _) in &tangent {
        match e.orbits {
            None => c2.gap(format!("orbit count missing: {}", describe(e))),
            Some(Count::Infinite) => c2.fail(format!("infinitely many tangency orbits: {}", describe(e))),
            Some(_) => {}
        }
        match e.order {
            None => c2.gap(format!("contact order missing: {}", describe(e))),
            Some(Count::Infinite) => c2.fail(format!("contact of infinite order: {}", describe(e))),
            Some(_) => {}
        }
    }

    let mut c3 = Clause::new(3);
    for (e, p, q) in &tangent {
        if !(facts.kind_of(p).is_some_and(BasicKind::is_trivial)
            && facts.kind_of(q).is_some_and(BasicKind::is_trivial))
        {
            continue;
        }
        // tangency orbits themselves are counted by clause 2
        for f in table.entries.iter().filter(|f| !f.is_tangent()) {
            let Some((u, s)) = sides(f) else { continue };
            let relevant = (u.set == **p && is_saddle(&s.set)) || (s.set == **q && is_saddle(&u.set));
            if !relevant {
                continue;
            }
            match f.orbits {
                None => c3.gap(format!("orbit count missing: {}", describe(f))),
                Some(Count::Infinite) => c3.fail(format!(
                    "infinitely many orbits of {} meet saddle manifolds ({}), with tangency {}",
                    if u.set == **p { p } else { q },
                    describe(f),
                    describe(e)
                )),
                Some(_) => {}
            }
        }
    }

    let mut c4 = Clause::new(4);
    for (e, _, _) in &tangent {
        match e.side_separated {
            None => c4.gap(format!("side separation not declared: {}", describe(e))),
            Some(false) => c4.fail(format!(
                "a transverse arc meets saddle stable and unstable manifolds on one side: {}",
                describe(e)
            )),
            Some(true) => {}
        }
    }

    let mut c5 = Clause::new(5);
    for (e1, p, q) in &tangent {
        for (e2, q2, r) in &tangent {
            if q != q2 {
                continue;
            }
            for f in &table.entries {
                let Some((u, s)) = sides(f) else { continue };
                if s.set == **p && is_saddle(&u.set) {
                    c5.fail(format!(
                        "saddle {} has unstable manifold meeting W^s({p}) with tangency chain {} / {}",
                        u.set,
                        describe(e1),
                        describe(e2)
                    ));
                }
                if u.set == **r && is_saddle(&s.set) {
                    c5.fail(format!(
                        "saddle {} has stable manifold meeting W^u({r}) with tangency chain {} / {}",
                        s.set,
                        describe(e1),
                        describe(e2)
                    ));
                }
            }
        }
    }

    if !table.complete {
        for c in [&mut c1, &mut c2, &mut c3, &mut c4, &mut c5] {
            if c.failures.is_empty() {
                c.gap("intersection table is not declared complete");
            }
        }
    }

    let criteria = vec![c1.finish(), c2.finish(), c3.finish(), c4.finish(), c5.finish()];
    CriteriaReport {
        status: Status::combine(criteria.iter().map(|c| c.status)),
        criteria,
    }
}

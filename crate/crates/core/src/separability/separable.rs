use serde::Serialize;

use crate::scheme::{AttractorKind, AttractorRecord};

use super::facts::{BasicKind, Facts, Landing, Manifold};
use super::{describe, sides, Clause, ClauseResult, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparabilityReport {
    pub attractor: String,
    pub status: Status,
    pub conditions: Vec<ClauseResult>,
    pub warnings: Vec<String>,
}

impl SeparabilityReport {
    pub fn failed(&self) -> Vec<u8> {
        self.conditions
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.clause)
            .collect()
    }
}

/// Decides the three separability conditions for one attractor (or, with
/// roles of sources and sinks exchanged, one repeller).
pub fn check_separable(rec: &AttractorRecord, facts: &Facts) -> SeparabilityReport {
    let repeller = rec.kind == AttractorKind::Repeller;
    let (end_kind, end_landing, end_name) = if repeller {
        (BasicKind::Sink, Landing::Sink, "sink")
    } else {
        (BasicKind::Source, Landing::Source, "source")
    };
    // The frontier of W^s (W^u for a repeller) is checked on the same side.
    let (own, other) = if repeller {
        (Manifold::Unstable, Manifold::Stable)
    } else {
        (Manifold::Stable, Manifold::Unstable)
    };
    let mut warnings = Vec::new();

    let mut c1 = Clause::new(1);
    let frontier = facts.frontiers.iter().find(|f| f.attractor == rec.id);
    let mut saddles_in_y = Vec::new();
    let mut y_known = false;
    match frontier.and_then(|f| f.sets.as_ref()) {
        None => c1.gap(format!("frontier of {} not declared", rec.id)),
        Some(sets) => {
            y_known = true;
            for s in sets {
                match facts.kind_of(s) {
                    None => {
                        y_known = false;
                        c1.gap(format!("frontier set {s} is not in the roster"));
                    }
                    Some(BasicKind::Saddle) => saddles_in_y.push(s.as_str()),
                    Some(k) if k == end_kind => {}
                    Some(k) => c1.fail(format!(
                        "frontier set {s} is a {k:?}, not a trivial saddle or {end_name}"
                    )),
                }
            }
        }
    }

    let mut c2 = Clause::new(2);
    if rec.boundary_points.is_empty() {
        warnings.push(format!("{} declares no boundary points; condition 2 holds vacuously", rec.id));
    }
    for p in &rec.boundary_points {
        let end = facts
            .ends
            .iter()
            .find(|e| e.attractor == rec.id && e.boundary_point == p.id);
        match end {
            None => c2.gap(format!("no landing declared for ℓ_{}", p.id)),
            Some(e) if e.landing == Landing::Unknown => {
                c2.gap(format!("landing of ℓ_{} is unknown", p.id))
            }
            Some(e) if e.landing == end_landing => {
                if let Some(k) = e.set.as_deref().and_then(|s| facts.kind_of(s)) {
                    if k != end_kind {
                        c2.fail(format!(
                            "ℓ_{} is declared to land on a {end_name} but {} is a {k:?}",
                            p.id,
                            e.set.as_deref().unwrap_or_default()
                        ));
                    }
                }
            }
            Some(e) => c2.fail(format!(
                "ℓ_{} lands on {}{}, not a {end_name}",
                p.id,
                format!("{:?}", e.landing).to_lowercase(),
                e.set.as_deref().map(|s| format!(" {s}")).unwrap_or_default()
            )),
        }
    }

    let mut c3 = Clause::new(3);
    if !y_known {
        c3.gap("Y is not fully declared");
    }
    for sigma in &saddles_in_y {
        for e in &facts.intersections.entries {
            let Some((u, s)) = sides(e) else { continue };
            let (mine, theirs) = if own == Manifold::Stable { (s, u) } else { (u, s) };
            debug_assert_eq!(theirs.manifold, other);
            if mine.set != **sigma || theirs.set == **sigma {
                continue;
            }
            let hetero = matches!(
                facts.kind_of(&theirs.set),
                Some(BasicKind::Saddle | BasicKind::Attractor | BasicKind::Repeller)
            );
            if hetero {
                c3.fail(format!("heteroclinic points on the invariant manifold of {sigma}: {}", describe(e)));
            }
        }
    }
    if !saddles_in_y.is_empty() && !facts.intersections.complete {
        c3.gap("intersection table is not declared complete");
    }

    let conditions = vec![c1.finish(), c2.finish(), c3.finish()];
    SeparabilityReport {
        attractor: rec.id.clone(),
        status: Status::combine(conditions.iter().map(|c| c.status)),
        conditions,
        warnings,
    }
}

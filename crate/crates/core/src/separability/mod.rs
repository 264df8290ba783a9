//! Separability of one-dimensional basic sets, bunches, and the
//! finite-moduli criteria, all decided over declared combinatorial facts.

mod bunches;
mod criteria;
mod facts;
mod separable;

use serde::Serialize;

pub use bunches::{enumerate_bunches, BunchError};
pub use criteria::{check_finite_moduli_criteria, CriteriaReport};
pub use facts::{
    BasicKind, BasicSet, Contact, Count, Descriptor, Facts, Frontier, Intersection,
    IntersectionTable, Landing, Manifold, Pairing, SeparatrixEnd,
};
pub use separable::{check_separable, SeparabilityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

impl Status {
    /// Fail dominates, then undetermined.
    pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
        let mut out = Status::Pass;
        for s in statuses {
            match s {
                Status::Fail => return Status::Fail,
                Status::Undetermined => out = Status::Undetermined,
                Status::Pass => {}
            }
        }
        out
    }
}

/// Verdict on one numbered condition, with the entries that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: u8,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

/// Accumulates violations and gaps for one clause.
struct Clause {
    clause: u8,
    failures: Vec<String>,
    gaps: Vec<String>,
}

impl Clause {
    fn new(clause: u8) -> Self {
        Clause {
            clause,
            failures: Vec::new(),
            gaps: Vec::new(),
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn gap(&mut self, msg: impl Into<String>) {
        self.gaps.push(msg.into());
    }

    fn finish(self) -> ClauseResult {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.gaps.is_empty() {
            Status::Undetermined
        } else {
            Status::Pass
        };
        let mut diagnostics = self.failures;
        diagnostics.extend(self.gaps);
        ClauseResult {
            clause: self.clause,
            status,
            diagnostics,
        }
    }
}

/// Splits an entry into its unstable and stable sides, whichever order the
/// file lists them in. Entries pairing two manifolds of the same type carry
/// no intersection in the sense used here.
fn sides(e: &Intersection) -> Option<(&Descriptor, &Descriptor)> {
    match (e.source.manifold, e.target.manifold) {
        (Manifold::Unstable, Manifold::Stable) => Some((&e.source, &e.target)),
        (Manifold::Stable, Manifold::Unstable) => Some((&e.target, &e.source)),
        _ => None,
    }
}

fn describe(e: &Intersection) -> String {
    let d = |x: &Descriptor| {
        let m = match x.manifold {
            Manifold::Stable => "s",
            Manifold::Unstable => "u",
        };
        match &x.label {
            Some(l) => format!("W^{m}({}:{l})", x.set),
            None => format!("W^{m}({})", x.set),
        }
    };
    let c = match e.contact {
        Contact::Transverse => "transverse",
        Contact::Tangent => "tangent",
    };
    format!("{} ∩ {} [{c}]", d(&e.source), d(&e.target))
}

//! Deciding equivalence of two schemes, either by checking a certificate
//! condition by condition or by a bounded search for one.

mod certops;
mod conditions;
mod gl2z;
mod search;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Real;
use crate::scheme::{validate_scheme, Certificate, Scheme, ValidationReport};

pub use certops::{compose_certificates, invert_certificate, CertificateError};
pub use conditions::{
    check_condition1, check_condition2, check_condition3, check_condition4a, check_condition4b,
    check_condition5, check_condition6, check_condition7,
};
pub use gl2z::{all_gl2z_conjugators, search_gl2z_conjugator};
pub use search::search_certificate;

/// Condition ids in report order.
pub const CONDITIONS: [&str; 8] = ["1", "2", "3", "4a", "4b", "5", "6", "7"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionStatus {
    Pass,
    Fail,
    SkippedNeedsCertificate,
    NotReached,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub condition: String,
    pub status: ConditionStatus,
    pub diagnostics: Vec<String>,
}

impl ConditionResult {
    pub fn passed(&self) -> bool {
        self.status == ConditionStatus::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Equivalent => 0,
            Outcome::NotEquivalent => 1,
            Outcome::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions<R> {
    /// Relative tolerance for real comparisons.
    pub tol: R,
    pub m_bound: i64,
    pub matrix_bound: i64,
    /// Node limit for the certificate search.
    pub budget: u64,
}

impl<R: Real> Default for CheckOptions<R> {
    fn default() -> Self {
        CheckOptions {
            tol: R::from(1e-9).expect("tolerance representable"),
            m_bound: 64,
            matrix_bound: 10,
            budget: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub nodes: u64,
    pub budget_exhausted: bool,
    /// Condition at which every branch stopped, when no witness was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocking: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub equivalent: bool,
    pub outcome: Outcome,
    pub per_condition: Vec<ConditionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
}

impl Verdict {
    pub(crate) fn from_results(per_condition: Vec<ConditionResult>) -> Verdict {
        let outcome = if per_condition.iter().any(|c| c.status == ConditionStatus::Fail) {
            Outcome::NotEquivalent
        } else if per_condition.iter().all(ConditionResult::passed) {
            Outcome::Equivalent
        } else {
            Outcome::Inconclusive
        };
        Verdict {
            equivalent: outcome == Outcome::Equivalent,
            outcome,
            per_condition,
            witness: None,
            search: None,
        }
    }

    pub fn condition(&self, id: &str) -> Option<&ConditionResult> {
        self.per_condition.iter().find(|c| c.condition == id)
    }

    pub fn status(&self, id: &str) -> Option<ConditionStatus> {
        self.condition(id).map(|c| c.status)
    }

    pub fn to_text(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("verdict serializes");
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("{which} scheme is invalid ({} violations)", report.violations.len())]
    ValidationFailed { which: String, report: ValidationReport },
}

/// Checks all conditions against `cert`. Missing `m` values are searched
/// and the completed certificate is returned alongside the verdict.
pub fn verify_certificate<R: Real>(
    s1: &Scheme<R>,
    s2: &Scheme<R>,
    cert: &Certificate,
    opts: &CheckOptions<R>,
) -> (Verdict, Certificate) {
    let mut working = cert.clone();
    let r1 = check_condition1(s1, s2, &working);
    let r2 = check_condition2(s1, s2, &working);
    let r3 = check_condition3(s1, s2, &working, opts.tol);
    let r4a = check_condition4a(s1, s2, &working, opts.tol);
    let r4b = check_condition4b(s1, s2, &mut working, opts.tol, opts.m_bound);
    let r5 = check_condition5(s1, s2, &working);
    let r6 = check_condition6(s1, s2, &working);
    let r7 = check_condition7(s1, s2, &working);
    (Verdict::from_results(vec![r1, r2, r3, r4a, r4b, r5, r6, r7]), working)
}

/// Validates both schemes, then verifies `cert` if given or searches for a
/// certificate otherwise. A search witness is attached to the verdict.
pub fn schemes_equivalent<R: Real>(
    s1: &Scheme<R>,
    s2: &Scheme<R>,
    cert: Option<&Certificate>,
    opts: &CheckOptions<R>,
) -> Result<Verdict, EquivalenceError> {
    for (which, s) in [("first", s1), ("second", s2)] {
        let report = validate_scheme(s);
        if !report.is_empty() {
            return Err(EquivalenceError::ValidationFailed {
                which: which.into(),
                report,
            });
        }
    }
    Ok(match cert {
        Some(c) => verify_certificate(s1, s2, c, opts).0,
        None => search_certificate(s1, s2, opts),
    })
}

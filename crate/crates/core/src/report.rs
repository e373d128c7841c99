//! Verification reports: the common result type for every lemma, identity,
//! and theorem check in this crate.

use crate::exactmath::LaurentPoly;
use std::time::Duration;

/// Outcome of comparing two independently computed Laurent polynomials.
///
/// `equal` is always exactly `lhs == rhs` (structural equality of normalized
/// polynomials); inequality is a reportable outcome, never an error.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Human-readable description of the instance that was checked.
    pub instance: String,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub equal: bool,
    pub elapsed: Duration,
    /// Extra notes: vacuous cases, clearing factors, flagged paper readings.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(instance: impl Into<String>, lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        let equal = lhs == rhs;
        Self {
            instance: instance.into(),
            lhs,
            rhs,
            equal,
            elapsed: Duration::ZERO,
            notes: Vec::new(),
        }
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

/// Fold many reports into a pass/fail summary line count.
pub fn all_equal(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.equal)
}

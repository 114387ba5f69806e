//! Verification report: one record per check, with a status that is never
//! silently omitted.

use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    /// Computed value equals the reference value.
    Match,
    /// Computed value differs from the reference value (or an arbitration
    /// between two computed routes failed).
    Mismatch,
    /// The cell is in the suspected-typo registry and two independent
    /// computations agree against the published value.
    FlaggedTypo,
    /// The check was not run because it would exceed a resource guard.
    SkippedResource,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub matches: usize,
    pub mismatches: usize,
    pub flagged_typos: usize,
    pub skipped: usize,
    pub ok: bool,
}

impl VerificationReport {
    pub fn new(suite: &str) -> VerificationReport {
        VerificationReport {
            suite: suite.to_string(),
            checks: Vec::new(),
            matches: 0,
            mismatches: 0,
            flagged_typos: 0,
            skipped: 0,
            ok: true,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        match record.status {
            CheckStatus::Match => self.matches += 1,
            CheckStatus::Mismatch => {
                self.mismatches += 1;
                self.ok = false;
            }
            CheckStatus::FlaggedTypo => self.flagged_typos += 1,
            CheckStatus::SkippedResource => self.skipped += 1,
        }
        self.checks.push(record);
    }

    /// Record an equality check between a reference and a computed value.
    pub fn check<E: ToString, C: ToString>(&mut self, name: &str, anchor: &str, expected: E, computed: C) {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let status = if expected == computed {
            CheckStatus::Match
        } else {
            CheckStatus::Mismatch
        };
        self.push(CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            expected,
            computed,
            status,
        });
    }

    /// Record a boolean property check.
    pub fn assert_holds(&mut self, name: &str, anchor: &str, holds: bool, detail: &str) {
        self.push(CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            expected: "holds".to_string(),
            computed: if holds {
                "holds".to_string()
            } else {
                format!("violated: {detail}")
            },
            status: if holds {
                CheckStatus::Match
            } else {
                CheckStatus::Mismatch
            },
        });
    }

    pub fn flagged(&mut self, name: &str, anchor: &str, published: &str, computed: &str) {
        self.push(CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            expected: published.to_string(),
            computed: computed.to_string(),
            status: CheckStatus::FlaggedTypo,
        });
    }

    pub fn skipped(&mut self, name: &str, anchor: &str, reason: &str) {
        self.push(CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            expected: "-".to_string(),
            computed: format!("skipped: {reason}"),
            status: CheckStatus::SkippedResource,
        });
    }

    /// Fold another report's checks into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        for record in other.checks {
            self.push(record);
        }
    }
}

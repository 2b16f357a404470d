//! Structured pass/fail results for relation checks.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// Outcome of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    /// Every checked instance satisfied the relation.
    Pass,
    /// At least one instance violated the relation; a witness is attached.
    Fail,
    /// The relation's hypotheses do not hold, so it asserts nothing here.
    Inapplicable,
}

/// Result of checking one named relation over some number of instances.
///
/// A failing report always carries a witness: the inputs together with both
/// computed sides of the first violated instance.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub relation: String,
    pub status: ReportStatus,
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl VerificationReport {
    pub fn pass(relation: impl Into<String>, instances: u64) -> Self {
        VerificationReport {
            relation: relation.into(),
            status: ReportStatus::Pass,
            instances,
            witness: None,
            details: None,
        }
    }

    pub fn fail(relation: impl Into<String>, instances: u64, witness: Value) -> Self {
        VerificationReport {
            relation: relation.into(),
            status: ReportStatus::Fail,
            instances,
            witness: Some(witness),
            details: None,
        }
    }

    pub fn inapplicable(relation: impl Into<String>, instances: u64, details: Value) -> Self {
        VerificationReport {
            relation: relation.into(),
            status: ReportStatus::Inapplicable,
            instances,
            witness: None,
            details: Some(details),
        }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == ReportStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == ReportStatus::Fail
    }

    /// Folds per-instance reports into one aggregate report.
    ///
    /// Instance counts are summed; the first failure's witness is kept.
    pub fn merge(
        relation: impl Into<String>,
        reports: impl IntoIterator<Item = VerificationReport>,
    ) -> Self {
        let mut out = VerificationReport::pass(relation, 0);
        for r in reports {
            out.instances += r.instances;
            if r.status == ReportStatus::Fail && out.status != ReportStatus::Fail {
                out.status = ReportStatus::Fail;
                out.witness = r.witness;
            }
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            ReportStatus::Pass => "PASS",
            ReportStatus::Fail => "FAIL",
            ReportStatus::Inapplicable => "INAPPLICABLE",
        };
        write!(f, "{} {} ({} instances)", tag, self.relation, self.instances)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {}", w)?;
        }
        Ok(())
    }
}

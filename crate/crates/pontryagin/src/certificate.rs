//! Pass/fail records for the structural identities the pipeline checks.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    Pass,
    Fail,
    /// Holds for structural reasons in this setting (e.g. closedness in
    /// finite dimension), so nothing was actually computed.
    TriviallySatisfied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub status: CertStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Certificate {
    pub fn pass(name: impl Into<String>) -> Self {
        Certificate { name: name.into(), status: CertStatus::Pass, detail: None }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Certificate {
            name: name.into(),
            status: CertStatus::Fail,
            detail: Some(detail.into()),
        }
    }

    pub fn trivial(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Certificate {
            name: name.into(),
            status: CertStatus::TriviallySatisfied,
            detail: Some(detail.into()),
        }
    }

    /// Pass when `ok`, otherwise fail with the given detail.
    pub fn check(name: impl Into<String>, ok: bool, detail_on_fail: impl Into<String>) -> Self {
        if ok {
            Certificate::pass(name)
        } else {
            Certificate::fail(name, detail_on_fail)
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CertStatus::Fail
    }
}

/// True when no certificate in the slice failed.
pub fn all_passed(certificates: &[Certificate]) -> bool {
    certificates.iter().all(Certificate::passed)
}

//! Pass/fail records shared by the verification suites.

use serde::Serialize;

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of coefficients, points or instances examined.
    pub checked: usize,
    /// First mismatch or other diagnostic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, checked: usize) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            checked,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, checked: usize, detail: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: false,
            checked,
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Combines reports into one that passes iff all parts pass; the first
/// failure's detail is kept.
pub fn merge(name: impl Into<String>, parts: &[CheckReport]) -> CheckReport {
    let checked = parts.iter().map(|r| r.checked).sum();
    match parts.iter().find(|r| !r.passed) {
        Some(bad) => CheckReport::fail(
            name,
            checked,
            format!("{}: {}", bad.name, bad.detail.clone().unwrap_or_default()),
        ),
        None => CheckReport::pass(name, checked),
    }
}

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sheafops::OmegaClass;

use super::generate::GenParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Label to value, in carrier order.
pub type ClassValues = IndexMap<String, i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub instance: u64,
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<ClassValues>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<ClassValues>,
}

fn values(c: &OmegaClass) -> ClassValues {
    c.entries().into_iter().collect()
}

impl Check {
    pub fn pass(instance: u64, name: &str) -> Self {
        Check {
            instance,
            name: name.into(),
            status: Status::Pass,
            detail: None,
            lhs: None,
            rhs: None,
        }
    }

    pub fn fail(instance: u64, name: &str, detail: impl Into<String>) -> Self {
        Check {
            status: Status::Fail,
            detail: Some(detail.into()),
            ..Check::pass(instance, name)
        }
    }

    pub fn error(instance: u64, name: &str, e: &Error) -> Self {
        Check {
            status: Status::Error,
            detail: Some(e.to_string()),
            ..Check::pass(instance, name)
        }
    }

    pub fn from_bool(instance: u64, name: &str, ok: bool, detail: &str) -> Self {
        if ok {
            Check::pass(instance, name)
        } else {
            Check::fail(instance, name, detail)
        }
    }

    /// Compares two classes; both value maps are kept as the certificate.
    pub fn classes(instance: u64, name: &str, ok: bool, lhs: &OmegaClass, rhs: &OmegaClass) -> Self {
        Check {
            lhs: Some(values(lhs)),
            rhs: Some(values(rhs)),
            ..Check::from_bool(instance, name, ok, "classes differ")
        }
    }

    /// Passes, fails or records the error of a fallible check.
    pub fn from_result(instance: u64, name: &str, r: Result<Check>) -> Self {
        r.unwrap_or_else(|e| match e {
            Error::Verification(msg) => Check::fail(instance, name, msg),
            e => Check::error(instance, name, &e),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: Option<u64>,
    pub count: u64,
    pub params: Option<GenParams>,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(suite: &str, seed: Option<u64>, count: u64, params: Option<GenParams>, mut checks: Vec<Check>) -> Self {
        checks.sort_by_key(|c| c.instance);
        let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
        Report {
            suite: suite.into(),
            seed,
            count,
            params,
            passed,
            failed: checks.len() - passed,
            checks,
            elapsed_ms: 0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Any check that errored rather than failed.
    pub fn has_errors(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Error)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
            pointer: super::format::pointer(e.path()),
            message: e.inner().to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let seed = self.seed.map_or_else(|| "-".into(), |s| s.to_string());
        let _ = writeln!(out, "suite {}  seed {}  instances {}", self.suite, seed, self.count);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            let _ = write!(out, "  [{:>4}] {:<16} {}", c.instance, c.name, status);
            if let Some(d) = &c.detail {
                let _ = write!(out, "  {d}");
            }
            out.push('\n');
            if c.status != Status::Pass {
                for (side, v) in [("lhs", &c.lhs), ("rhs", &c.rhs)] {
                    if let Some(v) = v {
                        let body: Vec<String> = v.iter().map(|(k, x)| format!("{k}={x}")).collect();
                        let _ = writeln!(out, "         {side}: {{{}}}", body.join(", "));
                    }
                }
            }
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} ms",
            self.passed, self.failed, self.elapsed_ms
        );
        out
    }

    /// The report with its timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Report {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

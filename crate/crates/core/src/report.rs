//! Report data structures shared by the axiom checkers, the decision
//! procedures and the command line front end.
//!
//! Reports are plain serializable values with deterministic field order;
//! witnesses are basis-index tuples, always the lexicographically first
//! failure found.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One named check with an optional basis-tuple witness for failures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check {
            name: name.to_string(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(name: &str, witness: Vec<usize>) -> Self {
        Check {
            name: name.to_string(),
            status: CheckStatus::Fail,
            witness: Some(witness),
        }
    }

    pub fn skipped(name: &str) -> Self {
        Check {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Ordered list of named checks for one object.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomReport {
    pub object: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn new(object: &str, checks: Vec<Check>) -> Self {
        AxiomReport {
            pass: checks.iter().all(|c| c.status != CheckStatus::Fail),
            object: object.to_string(),
            checks,
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == CheckStatus::Fail)
    }
}

/// Verdict plus named conditions for one theorem-equivalence suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ConditionReport {
    pub fn new(condition: &str, holds: bool) -> Self {
        ConditionReport {
            condition: condition.to_string(),
            holds,
            detail: None,
        }
    }

    pub fn with_detail(condition: &str, holds: bool, detail: String) -> Self {
        ConditionReport {
            condition: condition.to_string(),
            holds,
            detail: Some(detail),
        }
    }
}

//! Pass/fail records for finite-stage checks.

use serde::{Deserialize, Serialize};

use crate::semigroup::Monomial;
use crate::words::Word;

/// What a failed check was evaluated on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Counterexample {
    Pair { u: Monomial, v: Monomial },
    Element { t: Monomial },
    Generator { i: Word, j: Word },
    Index { n: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub range: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub measured: Option<Measured>,
}

/// The two sides of a floating-point comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub lhs: f64,
    pub rhs: f64,
}

impl CheckReport {
    pub fn new(check: &str, range: impl Into<String>, counterexample: Option<Counterexample>) -> Self {
        CheckReport {
            check: check.to_string(),
            range: range.into(),
            passed: counterexample.is_none(),
            counterexample,
            measured: None,
        }
    }

    pub fn measured(check: &str, range: impl Into<String>, lhs: f64, rhs: f64, passed: bool) -> Self {
        CheckReport {
            check: check.to_string(),
            range: range.into(),
            passed,
            counterexample: None,
            measured: Some(Measured { lhs, rhs }),
        }
    }
}

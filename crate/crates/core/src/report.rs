//! Structured checker output shared by every verifier in the crate.

use crate::linalg::{fmt_rat, Scalar};

/// One violated law: which law, at which basis witness, with what defect
/// (the exact coordinate vector of lhs - rhs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<usize>,
    pub defect: Vec<Scalar>,
}

/// Deterministically ordered list of violations; empty means the checked
/// property holds exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn new() -> Self {
        ViolationReport::default()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: Vec<usize>, defect: Vec<Scalar>) {
        self.violations.push(Violation {
            law: law.into(),
            witness,
            defect,
        });
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn laws(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.law.as_str()).collect()
    }

    pub fn cites(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl std::fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return writeln!(f, "ok: no violations");
        }
        for v in &self.violations {
            let witness: Vec<String> = v.witness.iter().map(|w| w.to_string()).collect();
            let defect: Vec<String> = v.defect.iter().map(fmt_rat).collect();
            writeln!(
                f,
                "{}\t({})\t[{}]",
                v.law,
                witness.join(","),
                defect.join(",")
            )?;
        }
        Ok(())
    }
}

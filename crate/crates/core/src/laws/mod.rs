//! Instance verifiers for the annihilator characterizations, the
//! reverse-order laws and the block-triangular formula.
//!
//! A verifier checks a law's hypothesis first and its conclusion second and
//! returns a [`VerificationReport`]. When the hypothesis fails the report is
//! vacuous: `conclusion_holds` is `true` by implication, the measured
//! conclusion residuals are moved to the notes, and callers can tell the
//! case apart with [`VerificationReport::is_vacuous`].

mod annihilator;
mod block;
mod reverse_order;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::matcore::{CMatrix, C64};

pub use annihilator::{verify_cor22, verify_thm21, verify_thm23, COR22_MAX_DIM};
pub use block::{block_z, verify_thm36, ZReading};
pub(crate) use block::block_hypothesis_residual;
pub use reverse_order::{verify_lemma32, verify_lemma34, verify_thm33, verify_thm35};

/// Outcome of checking one law on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub law_id: String,
    pub hypothesis_satisfied: bool,
    pub conclusion_holds: bool,
    /// Residuals of every check that decided the outcome.
    pub residuals: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Hypothesis failed; the conclusion holds only by implication.
    pub fn is_vacuous(&self) -> bool {
        !self.hypothesis_satisfied
    }

    /// Hypothesis satisfied and conclusion certified.
    pub fn passed(&self) -> bool {
        self.hypothesis_satisfied && self.conclusion_holds
    }

    /// Largest recorded residual (0 when none).
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }
}

/// Operands of the commutation-type reverse-order laws.
///
/// `lambda` and `mu` weight `ab = λba`, `a*b = μba*` (or the three-term
/// relations `bab = λab² = μb²a`); the primed pair weights the adjoint
/// relations of the three-term form.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutationPair {
    pub a: CMatrix,
    pub b: CMatrix,
    pub lambda: C64,
    pub mu: C64,
    pub lambda_prime: Option<C64>,
    pub mu_prime: Option<C64>,
}

impl CommutationPair {
    /// Pair with the two-term weights only. Panics on a zero weight.
    pub fn new(a: CMatrix, b: CMatrix, lambda: C64, mu: C64) -> Self {
        assert!(lambda.norm() > 0.0 && mu.norm() > 0.0, "weights must be nonzero");
        Self {
            a,
            b,
            lambda,
            mu,
            lambda_prime: None,
            mu_prime: None,
        }
    }

    /// Adds the adjoint-relation weights. Panics on a zero weight.
    pub fn with_primes(mut self, lambda_prime: C64, mu_prime: C64) -> Self {
        assert!(
            lambda_prime.norm() > 0.0 && mu_prime.norm() > 0.0,
            "weights must be nonzero"
        );
        self.lambda_prime = Some(lambda_prime);
        self.mu_prime = Some(mu_prime);
        self
    }
}

struct Check {
    name: String,
    value: f64,
    bound: f64,
}

impl Check {
    fn ok(&self) -> bool {
        self.value <= self.bound
    }
}

/// Collects hypothesis and conclusion checks into a report.
pub(crate) struct ReportBuilder {
    law_id: &'static str,
    tolerance: f64,
    hypothesis: Vec<Check>,
    conclusion: Vec<Check>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub(crate) fn new(law_id: &'static str, tolerance: f64) -> Self {
        Self {
            law_id,
            tolerance,
            hypothesis: Vec::new(),
            conclusion: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn hypothesis(&mut self, name: &str, value: f64, bound: f64) {
        self.hypothesis.push(Check {
            name: name.to_string(),
            value,
            bound,
        });
    }

    pub(crate) fn hypothesis_flag(&mut self, name: &str, ok: bool) {
        self.hypothesis(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    pub(crate) fn conclusion(&mut self, name: &str, value: f64, bound: f64) {
        self.conclusion.push(Check {
            name: name.to_string(),
            value,
            bound,
        });
    }

    pub(crate) fn conclusion_flag(&mut self, name: &str, ok: bool) {
        self.conclusion(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub(crate) fn finish(mut self) -> VerificationReport {
        let hypothesis_satisfied = self.hypothesis.iter().all(Check::ok);
        let mut residuals = BTreeMap::new();
        let conclusion_holds = if hypothesis_satisfied {
            for c in &self.hypothesis {
                residuals.insert(format!("hypothesis.{}", c.name), c.value);
            }
            for c in &self.conclusion {
                residuals.insert(c.name.clone(), c.value);
            }
            self.conclusion.iter().all(Check::ok)
        } else {
            self.notes
                .push("vacuous: hypothesis not satisfied, conclusion holds by implication".into());
            for c in self.hypothesis.iter().filter(|c| !c.ok()) {
                self.notes.push(format!(
                    "hypothesis {} = {:e} exceeds {:e}",
                    c.name, c.value, c.bound
                ));
            }
            for c in &self.conclusion {
                self.notes
                    .push(format!("unconditioned conclusion {} = {:e}", c.name, c.value));
            }
            true
        };
        VerificationReport {
            law_id: self.law_id.to_string(),
            hypothesis_satisfied,
            conclusion_holds,
            residuals,
            tolerance: self.tolerance,
            notes: self.notes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuous_reports_keep_residuals_below_tolerance() {
        let mut b = ReportBuilder::new("test", 1e-8);
        b.hypothesis("h", 0.5, 1e-8);
        b.conclusion("c", 0.25, 1e-8);
        let r = b.finish();
        assert!(r.is_vacuous());
        assert!(r.conclusion_holds);
        assert!(!r.passed());
        assert!(r.residuals.is_empty());
        assert!(r.notes.iter().any(|n| n.starts_with("vacuous")));
    }

    #[test]
    fn conclusion_holds_implies_small_residuals() {
        let mut b = ReportBuilder::new("test", 1e-8);
        b.hypothesis("h", 1e-12, 1e-8);
        b.conclusion("c", 1e-10, 1e-8);
        b.conclusion_flag("f", true);
        let r = b.finish();
        assert!(r.passed());
        assert!(r.residuals.values().all(|&v| v <= r.tolerance));
        assert_eq!(r.residuals.len(), 3);
    }
}

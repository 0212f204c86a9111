//! Pass/fail records for uncertainty relations and formula cross-checks.

use serde::{Deserialize, Serialize};

use crate::states::QuantumState;

/// Tolerance applied to audit margins unless the caller overrides it.
pub const DEFAULT_AUDIT_TOL: f64 = 1e-6;

/// One evaluated relation: `pass` holds iff `margin ≥ −tolerance`.
///
/// For inequalities the margin is `left − bound`; for equalities against a
/// reference value it is `−|left − reference|` (or its relative form), so a
/// failing equality always shows the size of the discrepancy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub relation: String,
    pub state: Option<QuantumState>,
    pub left: f64,
    pub bound_or_reference: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Why the relation could not be evaluated, if it could not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl AuditRecord {
    fn build(relation: impl Into<String>, state: Option<QuantumState>, left: f64, reference: f64, margin: f64) -> Self {
        Self {
            relation: relation.into(),
            state,
            left,
            bound_or_reference: reference,
            margin,
            tolerance: DEFAULT_AUDIT_TOL,
            pass: margin >= -DEFAULT_AUDIT_TOL,
            error: None,
        }
    }

    /// A row whose evaluation failed; it never passes.
    pub fn failed(relation: impl Into<String>, state: Option<QuantumState>, error: &crate::Error) -> Self {
        Self {
            error: Some(format!("{}: {error}", error.kind())),
            ..Self::build(relation, state, f64::NAN, f64::NAN, f64::NAN)
        }
    }

    /// An inequality `left ≥ bound`.
    pub fn lower_bound(relation: impl Into<String>, state: Option<QuantumState>, left: f64, bound: f64) -> Self {
        Self::build(relation, state, left, bound, left - bound)
    }

    /// An equality `left = reference`, absolute margin.
    pub fn equality(relation: impl Into<String>, state: Option<QuantumState>, left: f64, reference: f64) -> Self {
        Self::build(relation, state, left, reference, -(left - reference).abs())
    }

    /// An equality `left = reference`, margin relative to |reference|.
    pub fn relative_equality(
        relation: impl Into<String>,
        state: Option<QuantumState>,
        left: f64,
        reference: f64,
    ) -> Self {
        let scale = reference.abs().max(f64::MIN_POSITIVE);
        Self::build(relation, state, left, reference, -(left - reference).abs() / scale)
    }

    /// Re-evaluate `pass` under another tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self.pass = self.margin >= -tol;
        self
    }
}

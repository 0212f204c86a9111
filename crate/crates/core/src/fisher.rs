//! Fisher information in both spaces.

use crate::audit::AuditRecord;
use crate::error::Result;
use crate::moments::{p_moment, r_moment, AsymptoticValue, Remainder};
use crate::quadrature::Tolerance;
use crate::states::{QuantumState, Space};

/// I[ρ] = (4Z²/n³)(n − |m|).
pub fn fisher_position(state: &QuantumState) -> f64 {
    let n = state.n() as f64;
    let z = state.z();
    4.0 * z * z / n.powi(3) * (n - state.m_abs() as f64)
}

/// I[γ] = (2n²/Z²)[5n² − 3l(l+1) − |m|(8n − 6l − 3) + 1].
pub fn fisher_momentum(state: &QuantumState) -> f64 {
    let n = state.n() as f64;
    let l = state.l() as f64;
    let m = state.m_abs() as f64;
    let z = state.z();
    2.0 * n * n / (z * z) * (5.0 * n * n - 3.0 * l * (l + 1.0) - m * (8.0 * n - 6.0 * l - 3.0) + 1.0)
}

pub fn fisher(state: &QuantumState, space: Space) -> f64 {
    match space {
        Space::Position => fisher_position(state),
        Space::Momentum => fisher_momentum(state),
    }
}

/// Checks I[ρ] = 4⟨p²⟩ − 2|m|(2l+1)⟨r⁻²⟩ and I[γ] = 4⟨r²⟩ − 2|m|(2l+1)⟨p⁻²⟩,
/// with every right-side moment integrated numerically.
///
/// Returns the position record followed by the momentum record; margins are
/// relative differences.
pub fn fisher_relation_check(state: &QuantumState, tol: impl Into<Tolerance>) -> Result<[AuditRecord; 2]> {
    let tol = tol.into();
    let c = 2.0 * state.m_abs() as f64 * (2 * state.l() + 1) as f64;
    let (r_inv2, p_inv2) = if c == 0.0 {
        (0.0, 0.0)
    } else {
        (r_moment(state, -2.0, tol)?.value, p_moment(state, -2.0, tol)?.value)
    };
    let pos = 4.0 * p_moment(state, 2.0, tol)?.value - c * r_inv2;
    let mom = 4.0 * r_moment(state, 2.0, tol)?.value - c * p_inv2;
    Ok([
        AuditRecord::relative_equality("fisher-relation-position", Some(*state), fisher_position(state), pos),
        AuditRecord::relative_equality("fisher-relation-momentum", Some(*state), fisher_momentum(state), mom),
    ])
}

/// Leading terms (2Z/n)² and 10n⁴/Z².
pub fn fisher_asymptotic(space: Space, n: u32, z: f64) -> AsymptoticValue {
    let n = n as f64;
    match space {
        Space::Position => AsymptoticValue::new((2.0 * z / n).powi(2), Remainder::BigOInvN3),
        Space::Momentum => AsymptoticValue::new(10.0 * n.powi(4) / (z * z), Remainder::BigON3),
    }
}

/// I[ρ]·I[γ] ≥ 36.
pub fn fisher_product_audit(state: &QuantumState) -> AuditRecord {
    AuditRecord::lower_bound(
        "fisher-product",
        Some(*state),
        fisher_position(state) * fisher_momentum(state),
        36.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn st(n: u32, l: u32, m: i32, z: f64) -> QuantumState {
        QuantumState::new(n, l, m, z).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(fisher_position(&st(1, 0, 0, 1.0)), 4.0);
        assert_eq!(fisher_momentum(&st(1, 0, 0, 1.0)), 12.0);
        assert_eq!(fisher_position(&st(2, 1, 1, 1.0)), 0.5);
        assert_eq!(fisher_momentum(&st(2, 1, 1, 1.0)), 64.0);
        assert_relative_eq!(fisher_position(&st(5, 3, 2, 3.0)), 9.0 * fisher_position(&st(5, 3, 2, 1.0)));
        assert_relative_eq!(fisher_momentum(&st(5, 3, 2, 3.0)), fisher_momentum(&st(5, 3, 2, 1.0)) / 9.0);
    }

    #[test]
    fn relations_by_quadrature() {
        for s in [st(1, 0, 0, 1.0), st(3, 2, 2, 1.0), st(7, 4, -3, 2.0), st(12, 1, 0, 10.0)] {
            for rec in fisher_relation_check(&s, 1e-12).unwrap() {
                assert!(rec.margin > -1e-8, "{rec:?}");
            }
        }
    }

    #[test]
    fn products() {
        let a = fisher_product_audit(&st(1, 0, 0, 1.0));
        assert!(a.pass && a.left == 48.0);
        let b = fisher_product_audit(&st(2, 1, 1, 1.0));
        assert!(!b.pass && b.left == 32.0);
        for z in [2.0, 10.0] {
            assert_relative_eq!(
                fisher_product_audit(&st(9, 4, 3, z)).left,
                fisher_product_audit(&st(9, 4, 3, 1.0)).left,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn leading_terms() {
        assert_relative_eq!(fisher_asymptotic(Space::Position, 10, 1.0).value, 0.04, epsilon = 1e-15);
        assert_relative_eq!(fisher_asymptotic(Space::Momentum, 10, 1.0).value, 1e5);
        let p = fisher_asymptotic(Space::Position, 13, 2.0).value * fisher_asymptotic(Space::Momentum, 13, 2.0).value;
        assert_relative_eq!(p, 40.0 * 169.0, max_relative = 1e-13);
    }
}

//! Crámer–Rao, Fisher–Shannon and LMC complexities.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::entropy::{angular_entropy, shannon};
use crate::error::{Error, Result};
use crate::fisher::fisher;
use crate::moments::{p2_exact, r2_exact, AsymptoticValue, Remainder};
use crate::quadrature::{QuadResult, Tolerance};
use crate::specfun::gamma::{lgamma, ln_binomial, ln_factorial, ln_pochhammer};
use crate::specfun::wigner::wigner3j_int;
use crate::states::{QuantumState, Space};

/// How a reported number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Quadrature,
    Asymptotic,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Quadrature => "quadrature",
            Method::Asymptotic => "asymptotic",
        }
    }
}

/// A value tagged with its error estimate and provenance method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tagged {
    pub value: f64,
    pub abs_err: f64,
    pub method: Method,
}

impl Tagged {
    pub fn exact(value: f64) -> Self {
        Self { value, abs_err: 0.0, method: Method::Exact }
    }
    pub fn quadrature(q: &QuadResult) -> Self {
        Self { value: q.value, abs_err: q.abs_err, method: Method::Quadrature }
    }
}

/// The three complexities of one density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityTriple {
    pub cramer_rao: Tagged,
    pub fisher_shannon: Tagged,
    pub lmc: Tagged,
}

/// V = ⟨r²⟩ or ⟨p²⟩ (the centroids vanish by parity).
pub fn variance(state: &QuantumState, space: Space) -> f64 {
    match space {
        Space::Position => r2_exact(state),
        Space::Momentum => p2_exact(state),
    }
}

/// C_CR = V·I, in the simplified Z-free form.
pub fn cramer_rao(state: &QuantumState, space: Space) -> f64 {
    let n = state.n() as f64;
    let l = state.l() as f64;
    let m = state.m_abs() as f64;
    let q = 5.0 * n * n - 3.0 * l * (l + 1.0);
    match space {
        Space::Position => 2.0 / n * (q + 1.0) * (n - m),
        Space::Momentum => 2.0 * (q - m * (8.0 * n - 6.0 * l - 3.0) + 1.0),
    }
}

/// C_FS = I·e^{2S/3}/(2πe).
pub fn fisher_shannon(state: &QuantumState, space: Space, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let s = shannon(state, space, tol)?;
    let value = fisher(state, space) * (2.0 * s.value / 3.0).exp() / (2.0 * PI * 1f64.exp());
    Ok(QuadResult { value, abs_err: value * 2.0 / 3.0 * s.abs_err, evaluations: s.evaluations, warning: s.warning })
}

/// Rydberg leading term of C_FS at fixed (l, m).
pub fn fisher_shannon_asymptotic(space: Space, l: u32, m: i32, n: u32, tol: impl Into<Tolerance>) -> Result<AsymptoticValue> {
    let s_y = angular_entropy(l, m, tol)?.value;
    Ok(AsymptoticValue::new(fisher_shannon_coefficient(space, s_y) * (n as f64).powi(2), Remainder::LittleON2))
}

/// n² coefficient of C_FS for a given S(Y_{l,m}).
pub fn fisher_shannon_coefficient(space: Space, s_y: f64) -> f64 {
    match space {
        Space::Position => (2.0 / PI).cbrt() * (-1.0 + 2.0 * s_y / 3.0).exp(),
        Space::Momentum => 20.0 * PI.powf(-1.0 / 3.0) * (-13.0 / 3.0 + 2.0 * s_y / 3.0).exp(),
    }
}

/// The ns-state (l = m = 0) coefficients exactly as printed.
///
/// The momentum constant is a quarter of the generic coefficient evaluated at
/// S(Y₀₀) = ln 4π; both are kept so the difference stays visible.
pub fn fisher_shannon_ns_printed(space: Space) -> f64 {
    match space {
        Space::Position => (32.0 * PI).cbrt() / 1f64.exp(),
        Space::Momentum => 5.0 * (16.0 * PI).cbrt() * (-13.0f64 / 3.0).exp(),
    }
}

/// D = ∫ density² by quadrature of the separated factors.
pub fn disequilibrium(state: &QuantumState, space: Space, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let tol = tol.into();
    let radial = match space {
        Space::Position => {
            // the radial factor is O(n⁻⁶); lift it to O(1) so the absolute
            // tolerance stays meaningful for large n
            let lift = 6.0 * (state.n() as f64).ln();
            let rad = state.position_radial();
            rad.integrate(|x, lm| (lm + rad.ln_density(x) + lift).exp(), tol.scaled(0.5))?
                .scale((3.0 * state.z().ln() - lift).exp())
        }
        Space::Momentum => {
            let rad = state.momentum_radial();
            rad.integrate(|t, lm| (lm + rad.ln_density(t)).exp(), tol.scaled(0.5))?
                .scale(state.z().powi(-3))
        }
    };
    let ang = state.angular();
    let angular = ang.integrate(|x, lm| (lm + ang.ln_density(x)).exp(), tol.scaled(0.5))?;
    Ok(radial.product(&angular))
}

/// Σ_{L=0}^{2l} (2L+1) (l l L; 0 0 0)² (l l L; m m −2m)².
pub fn wigner_gaunt_sum(l: u32, m_abs: u32) -> f64 {
    let m = m_abs as i32;
    (2 * m_abs..=2 * l)
        .map(|big| {
            let a = wigner3j_int(l, l, big, 0, 0, 0);
            let b = wigner3j_int(l, l, big, m, m, -2 * m);
            (2 * big + 1) as f64 * a * a * b * b
        })
        .sum()
}

/// Exact position disequilibrium from the finite binomial/gamma sum, with
/// the Z³ scaling of the density restored.
pub fn disequilibrium_exact(state: &QuantumState) -> Result<f64> {
    let n = state.n();
    let l = state.l();
    let nr = (n - l - 1) as u64;
    let lf = l as f64;
    let terms: Vec<f64> = (0..=nr)
        .map(|k| {
            let kf = k as f64;
            2.0 * ln_binomial(2 * nr - 2 * k, nr - k) + ln_pochhammer(kf + 1.0, k) - ln_factorial(k)
                + lgamma(4.0 * lf + 2.0 * kf + 3.0)
                - 2.0 * lgamma(2.0 * lf + kf + 2.0)
        })
        .collect();
    if terms.iter().any(|t| !t.is_finite()) {
        return Err(Error::Overflow(format!("log-space term left the double range at n = {n}")));
    }
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_sum = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
    let nf = n as f64;
    let ln_pref = 2.0 * (2.0 * lf + 1.0).ln() - 4.0 * nf * LN_2 - PI.ln() - 5.0 * nf.ln() + 3.0 * state.z().ln();
    let w = wigner_gaunt_sum(l, state.m_abs());
    let value = (ln_pref + ln_sum).exp() * w;
    if !value.is_finite() {
        return Err(Error::Overflow(format!("disequilibrium overflow at n = {n}")));
    }
    Ok(value)
}

/// C_LMC = D·e^S.
pub fn lmc(state: &QuantumState, space: Space, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let tol = tol.into();
    let d = disequilibrium(state, space, tol)?;
    let s = shannon(state, space, tol)?;
    let value = d.value * s.value.exp();
    let rel = d.abs_err / d.value.abs() + s.abs_err;
    Ok(QuadResult {
        value,
        abs_err: value * rel,
        evaluations: d.evaluations + s.evaluations,
        warning: d.warning.or(s.warning),
    })
}

/// All three complexities of one density.
pub fn complexity_triple(state: &QuantumState, space: Space, tol: impl Into<Tolerance>) -> Result<ComplexityTriple> {
    let tol = tol.into();
    Ok(ComplexityTriple {
        cramer_rao: Tagged::exact(cramer_rao(state, space)),
        fisher_shannon: Tagged::quadrature(&fisher_shannon(state, space, tol)?),
        lmc: Tagged::quadrature(&lmc(state, space, tol)?),
    })
}

/// Empirical large-n behaviour of n⁶·D[ρ] at fixed (l, m).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub ns: Vec<u32>,
    /// n⁶·D[ρ]/Z³ at each n.
    pub scaled: Vec<f64>,
    /// Fitted slope a and intercept b of n⁶D ≈ a ln n + b, from the last two points.
    pub log_slope: f64,
    pub intercept: f64,
    /// Change of the slope between the first and last pair of points.
    pub uncertainty: f64,
}

/// Fits n⁶D[ρ] ≈ a ln n + b over increasing n and reports the drift of the
/// fitted slope as its uncertainty. The growth is logarithmic, so no finite
/// limit of n⁶D is asserted.
pub fn disequilibrium_limit_estimate(l: u32, m: i32, ns: &[u32]) -> Result<LimitEstimate> {
    if ns.len() < 3 {
        return Err(Error::Domain("need at least three n values".into()));
    }
    let mut scaled = Vec::with_capacity(ns.len());
    for &n in ns {
        let s = QuantumState::with_max_n(n, l, m, 1.0, u32::MAX)?;
        scaled.push(disequilibrium_exact(&s)? * (n as f64).powi(6));
    }
    let slope = |i: usize| (scaled[i + 1] - scaled[i]) / ((ns[i + 1] as f64).ln() - (ns[i] as f64).ln());
    let last = ns.len() - 2;
    let a = slope(last);
    let b = scaled[last + 1] - a * (ns[last + 1] as f64).ln();
    let uncertainty = (a - slope(0)).abs();
    Ok(LimitEstimate { ns: ns.to_vec(), scaled, log_slope: a, intercept: b, uncertainty })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TOL: f64 = 1e-12;

    fn st(n: u32, l: u32, m: i32, z: f64) -> QuantumState {
        QuantumState::new(n, l, m, z).unwrap()
    }

    #[test]
    fn ground_state() {
        let s = st(1, 0, 0, 1.0);
        assert_eq!(variance(&s, Space::Position), 3.0);
        assert_eq!(cramer_rao(&s, Space::Position), 12.0);
        assert_eq!(cramer_rao(&s, Space::Momentum), 12.0);
        let fs = fisher_shannon(&s, Space::Position, TOL).unwrap().value;
        assert_relative_eq!(fs, 2.0 / PI.cbrt() * 1f64.exp(), epsilon = 1e-9);
        for space in [Space::Position, Space::Momentum] {
            let d = disequilibrium(&s, space, TOL).unwrap().value;
            let expect = if space == Space::Position { 1.0 / (8.0 * PI) } else { 33.0 / (16.0 * PI * PI) };
            assert_relative_eq!(d, expect, epsilon = 1e-10);
        }
        assert_relative_eq!(disequilibrium_exact(&s).unwrap(), 1.0 / (8.0 * PI), epsilon = 1e-14);
        assert_relative_eq!(lmc(&s, Space::Position, TOL).unwrap().value, 3f64.exp() / 8.0, epsilon = 1e-9);
    }

    #[test]
    fn cramer_rao_is_variance_times_fisher() {
        for (n, l, m) in [(2u32, 0u32, 0i32), (5, 3, 2), (11, 6, -6), (30, 2, 1)] {
            for z in [1.0, 2.0, 10.0] {
                let s = st(n, l, m, z);
                for space in [Space::Position, Space::Momentum] {
                    assert_relative_eq!(
                        cramer_rao(&s, space),
                        variance(&s, space) * fisher(&s, space),
                        max_relative = 1e-12
                    );
                }
            }
        }
        assert_eq!(cramer_rao(&st(2, 0, 0, 1.0), Space::Position), 42.0);
        assert_eq!(cramer_rao(&st(2, 0, 0, 1.0), Space::Momentum), 42.0);
    }

    #[test]
    fn exact_sum_matches_quadrature() {
        for (n, l, m) in [(2u32, 0u32, 0i32), (2, 1, 1), (3, 2, 0), (6, 3, 2), (9, 8, 8), (15, 4, -1)] {
            let s = st(n, l, m, 1.0);
            let q = disequilibrium(&s, Space::Position, TOL).unwrap().value;
            assert_relative_eq!(disequilibrium_exact(&s).unwrap(), q, max_relative = 1e-10);
        }
    }

    #[test]
    fn z_scalings() {
        let a = st(4, 2, 1, 1.0);
        let b = st(4, 2, 1, 2.0);
        let dp = |s: &QuantumState, sp| disequilibrium(s, sp, TOL).unwrap().value;
        assert_relative_eq!(dp(&b, Space::Position), 8.0 * dp(&a, Space::Position), max_relative = 1e-11);
        assert_relative_eq!(dp(&b, Space::Momentum), dp(&a, Space::Momentum) / 8.0, max_relative = 1e-11);
        assert_relative_eq!(disequilibrium_exact(&b).unwrap(), 8.0 * disequilibrium_exact(&a).unwrap(), max_relative = 1e-13);
        for space in [Space::Position, Space::Momentum] {
            let c1 = lmc(&a, space, TOL).unwrap().value;
            let c2 = lmc(&b, space, TOL).unwrap().value;
            assert_relative_eq!(c1, c2, max_relative = 1e-9);
            assert!(c1 >= 1.0);
            let f1 = fisher_shannon(&a, space, TOL).unwrap().value;
            let f2 = fisher_shannon(&b, space, TOL).unwrap().value;
            assert_relative_eq!(f1, f2, max_relative = 1e-9);
        }
    }

    #[test]
    fn printed_fs_coefficients() {
        let s_y = (4.0 * PI).ln();
        let e = 1f64.exp();
        assert_relative_eq!(fisher_shannon_coefficient(Space::Position, s_y), (32.0 * PI).cbrt() / e, max_relative = 1e-14);
        assert_relative_eq!(fisher_shannon_coefficient(Space::Position, s_y), 1.710_562, epsilon = 1e-6);
        assert_relative_eq!(
            fisher_shannon_coefficient(Space::Position, s_y),
            fisher_shannon_ns_printed(Space::Position),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            fisher_shannon_coefficient(Space::Momentum, s_y),
            4.0 * fisher_shannon_ns_printed(Space::Momentum),
            max_relative = 1e-14
        );
        let r0 = fisher_shannon_coefficient(Space::Position, 1.0) / fisher_shannon_coefficient(Space::Momentum, 1.0);
        let r1 = fisher_shannon_coefficient(Space::Position, 2.3) / fisher_shannon_coefficient(Space::Momentum, 2.3);
        assert_relative_eq!(r0, r1, max_relative = 1e-14);
    }

    #[test]
    fn gaunt_selection() {
        assert_relative_eq!(wigner_gaunt_sum(0, 0), 1.0);
        // (1 1 L; 0 0 0)² is 1/3 and 2/15 for L = 0, 2; (1 1 L; 1 1 -2)² is 1/5 for L = 2 only
        assert_relative_eq!(wigner_gaunt_sum(1, 1), 5.0 * 2.0 / 15.0 * 0.2, max_relative = 1e-14);
    }
}

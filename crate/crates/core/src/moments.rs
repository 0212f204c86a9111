//! Radial and logarithmic expectation values in both spaces.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::audit::AuditRecord;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_finite, Panelization, QuadResult, Tolerance};
use crate::specfun::gamma::{lgamma, psi, LN_SQRT_PI};
use crate::states::{QuantumState, Space};

/// Declared remainder class of an asymptotic formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Remainder {
    /// Leading term only: the ratio exact/asymptotic tends to 1.
    #[serde(rename = "leading")]
    Leading,
    #[serde(rename = "o1")]
    LittleO1,
    #[serde(rename = "O_inv_n")]
    BigOInvN,
    #[serde(rename = "O_inv_n2")]
    BigOInvN2,
    #[serde(rename = "O_inv_n3")]
    BigOInvN3,
    #[serde(rename = "O_inv_n32")]
    BigOInvN32,
    #[serde(rename = "O_inv_n23")]
    BigOInvN23,
    #[serde(rename = "o_n13")]
    LittleON13,
    #[serde(rename = "O_n")]
    BigON,
    #[serde(rename = "o_n")]
    LittleON,
    #[serde(rename = "o_n2")]
    LittleON2,
    #[serde(rename = "O_n3")]
    BigON3,
    /// O(1/l) in the orbital number rather than n.
    #[serde(rename = "O_inv_l")]
    BigOInvL,
}

impl Remainder {
    pub fn as_str(&self) -> &'static str {
        match self {
            Remainder::Leading => "leading",
            Remainder::LittleO1 => "o1",
            Remainder::BigOInvN => "O_inv_n",
            Remainder::BigOInvN2 => "O_inv_n2",
            Remainder::BigOInvN3 => "O_inv_n3",
            Remainder::BigOInvN32 => "O_inv_n32",
            Remainder::BigOInvN23 => "O_inv_n23",
            Remainder::LittleON13 => "o_n13",
            Remainder::BigON => "O_n",
            Remainder::LittleON => "o_n",
            Remainder::LittleON2 => "o_n2",
            Remainder::BigON3 => "O_n3",
            Remainder::BigOInvL => "O_inv_l",
        }
    }

    /// Power p such that (exact − asymptotic)·n^p is expected to stay bounded.
    pub fn scaling_power(&self) -> f64 {
        match self {
            Remainder::Leading | Remainder::LittleO1 | Remainder::BigOInvL => 0.0,
            Remainder::BigOInvN => 1.0,
            Remainder::BigOInvN2 => 2.0,
            Remainder::BigOInvN3 => 3.0,
            Remainder::BigOInvN32 => 1.5,
            Remainder::BigOInvN23 => 2.0 / 3.0,
            Remainder::LittleON13 => -1.0 / 3.0,
            Remainder::BigON | Remainder::LittleON => -1.0,
            Remainder::LittleON2 => -2.0,
            Remainder::BigON3 => -3.0,
        }
    }
}

/// A leading-term (Rydberg) approximation with its remainder class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticValue {
    pub value: f64,
    pub remainder: Remainder,
}

impl AsymptoticValue {
    pub fn new(value: f64, remainder: Remainder) -> Self {
        Self { value, remainder }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("exponent {alpha} must be finite")))
    }
}

/// ⟨r^α⟩ by quadrature of the reduced radial integral.
pub fn r_moment(state: &QuantumState, alpha: f64, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    check_alpha(alpha)?;
    let edge = -(2.0 * state.l() as f64) - 3.0;
    if alpha <= edge {
        return Err(Error::Divergent(format!("<r^{alpha}> requires alpha > {edge} for l = {}", state.l())));
    }
    let rad = state.position_radial();
    // normalise by ⟨x⟩^α so small moments keep their relative accuracy
    let (n, l) = (state.n() as f64, state.l() as f64);
    let lift = -alpha * ((3.0 * n * n - l * (l + 1.0)) / n).ln();
    let raw = rad.integrate(
        |x, lm| if lm == f64::NEG_INFINITY { 0.0 } else { (lm + alpha * x.ln() + lift).exp() },
        tol.into(),
    )?;
    let scale = (alpha * (n / (2.0 * state.z())).ln() - lift).exp();
    Ok(raw.scale(scale))
}

/// ⟨p^α⟩ by quadrature of the Gegenbauer-variable integral on [−1, 1].
pub fn p_moment(state: &QuantumState, alpha: f64, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    check_alpha(alpha)?;
    let l2 = 2.0 * state.l() as f64;
    if alpha <= -l2 - 3.0 || alpha >= l2 + 5.0 {
        return Err(Error::Divergent(format!(
            "<p^{alpha}> requires {} < alpha < {} for l = {}",
            -l2 - 3.0,
            l2 + 5.0,
            state.l()
        )));
    }
    let rad = state.momentum_radial();
    let l = state.l() as f64;
    let half = 0.5 * alpha;
    let tol = tol.into().scaled(0.5);
    // Each half of [−1, 1] is integrated in the distance u to its endpoint,
    // u = w^k with k chosen to cancel the endpoint power u^e. Working in u
    // rather than t keeps full precision where the mass concentrates; at the
    // edges of the admissible α range e → −1 and t-panels cannot resolve it.
    let side = |sign: f64, e_near: f64, e_far: f64| -> Result<QuadResult> {
        let k = if e_near < 0.0 { 1.0 / (e_near + 1.0) } else { 1.0 };
        let jac = k * (e_near + 1.0) - 1.0;
        let f = |w: f64| {
            if w == 0.0 && jac != 0.0 {
                return 0.0;
            }
            let u = w.powf(k);
            let t = sign * (u - 1.0);
            // w^{k(e+1)−1} carries both the Jacobian and u^e
            let powers = if jac == 0.0 { 0.0 } else { jac * w.ln() };
            let v = (k.ln() + powers + e_far * (2.0 - u).ln() + rad.fam.ln_sq(t)).exp();
            if v.is_nan() {
                0.0
            } else {
                v
            }
        };
        let pts = rad.roots.iter().map(|&t| (1.0 + sign * t).max(0.0).powf(1.0 / k)).filter(|&w| w > 0.0 && w < 1.0);
        integrate_finite(f, 0.0, 1.0, &Panelization::new(pts).with_end_grading(0.0, 1.0, 6), tol)
    };
    let (e_minus, e_plus) = (l + 1.5 - half, l + 0.5 + half);
    let raw = side(1.0, e_minus, e_plus)?.combine(1.0, &side(-1.0, e_plus, e_minus)?, 1.0);
    Ok(raw.scale((state.z() / state.n() as f64).powf(alpha)))
}

/// ⟨ln r⟩ by quadrature.
pub fn log_r_moment(state: &QuantumState, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let rad = state.position_radial();
    let raw = rad.integrate(|x, lm| if lm == f64::NEG_INFINITY { 0.0 } else { lm.exp() * x.ln() }, tol.into())?;
    Ok(raw.shift((state.n() as f64 / (2.0 * state.z())).ln()))
}

/// ⟨ln p⟩ by quadrature.
pub fn log_p_moment(state: &QuantumState, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let rad = state.momentum_radial();
    let raw = rad.integrate(
        |t, lm| {
            if lm == f64::NEG_INFINITY {
                0.0
            } else {
                lm.exp() * 0.5 * ((-t).ln_1p() - t.ln_1p())
            }
        },
        tol.into(),
    )?;
    Ok(raw.shift((state.z() / state.n() as f64).ln()))
}

/// Closed form ⟨r²⟩ = (n²/2Z²)[5n² − 3l(l+1) + 1].
pub fn r2_exact(state: &QuantumState) -> f64 {
    let n = state.n() as f64;
    let l = state.l() as f64;
    n * n / (2.0 * state.z() * state.z()) * (5.0 * n * n - 3.0 * l * (l + 1.0) + 1.0)
}

/// Closed form ⟨p²⟩ = Z²/n².
pub fn p2_exact(state: &QuantumState) -> f64 {
    let n = state.n() as f64;
    state.z() * state.z() / (n * n)
}

fn validate_nl(n: u32, l: u32, z: f64) -> Result<()> {
    QuantumState::with_max_n(n, l, 0, z, u32::MAX).map(|_| ())
}

/// Rydberg leading term of ⟨r^α⟩ at fixed l.
pub fn r_moment_asymptotic(z: f64, n: u32, l: u32, alpha: f64) -> Result<AsymptoticValue> {
    check_alpha(alpha)?;
    validate_nl(n, l, z)?;
    let nf = n as f64;
    let lf = l as f64;
    if alpha <= -2.0 * lf - 3.0 {
        return Err(Error::Divergent(format!("<r^{alpha}> diverges for l = {l}")));
    }
    if alpha == -1.5 {
        return Err(Error::OpenProblem("the leading term of <r^(-3/2)> is not known".into()));
    }
    let value = if alpha > -1.5 {
        let ln_c = (alpha + 1.0) * LN_2 + lgamma(alpha + 1.5) - LN_SQRT_PI - lgamma(alpha + 2.0);
        ((2.0 * nf.ln() - z.ln()) * alpha + ln_c).exp()
    } else {
        let ln_c = lgamma(2.0 * lf + 3.0 + alpha) - lgamma(2.0 * lf - alpha) - (3.0 * alpha + 5.0) * LN_2
            + lgamma(-alpha - 1.5)
            - LN_SQRT_PI
            - lgamma(-alpha - 1.0);
        (-alpha * z.ln() - 3.0 * nf.ln() + ln_c).exp()
    };
    Ok(AsymptoticValue::new(value, Remainder::Leading))
}

/// Rydberg leading term of ⟨p^α⟩, −1 < α < 3.
pub fn p_moment_asymptotic(z: f64, n: u32, alpha: f64) -> Result<AsymptoticValue> {
    check_alpha(alpha)?;
    validate_nl(n, 0, z)?;
    if !(alpha > -1.0 && alpha < 3.0) {
        return Err(Error::OpenProblem(format!(
            "the leading term of <p^{alpha}> is known only for -1 < alpha < 3"
        )));
    }
    let coeff = if alpha == 1.0 {
        2.0 / PI
    } else {
        2.0 / PI * (lgamma(0.5 * (alpha + 1.0)) + lgamma(0.5 * (3.0 - alpha))).exp()
    };
    Ok(AsymptoticValue::new((z / n as f64).powf(alpha) * coeff, Remainder::Leading))
}

/// Which logarithmic expectation value an asymptotic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogMomentKind {
    Position,
    Momentum,
    Sum,
}

impl From<Space> for LogMomentKind {
    fn from(s: Space) -> Self {
        match s {
            Space::Position => LogMomentKind::Position,
            Space::Momentum => LogMomentKind::Momentum,
        }
    }
}

/// Expansions of ⟨ln r⟩, ⟨ln p⟩ and their sum to O(n⁻²).
pub fn log_moment_asymptotic(z: f64, n: u32, l: u32, kind: LogMomentKind) -> Result<AsymptoticValue> {
    validate_nl(n, l, z)?;
    let nf = n as f64;
    let lf = l as f64;
    let value = match kind {
        LogMomentKind::Position => 2.0 * nf.ln() + 1.0 - LN_2 - z.ln(),
        LogMomentKind::Momentum => -nf.ln() - 1.0 + (lf + 0.5) / nf + z.ln(),
        LogMomentKind::Sum => nf.ln() - LN_2 + (lf + 0.5) / nf,
    };
    Ok(AsymptoticValue::new(value, Remainder::BigOInvN2))
}

/// n² coefficient of ⟨r^α⟩^{2/α} ⟨p^β⟩^{2/β} times n², for Z-free fixed l.
pub fn heisenberg_product_asymptotic(alpha: f64, beta: f64, n: u32) -> Result<AsymptoticValue> {
    check_alpha(alpha)?;
    check_alpha(beta)?;
    if !(alpha > -1.5) {
        return Err(Error::Domain(format!("alpha = {alpha} must exceed -3/2 for the product form")));
    }
    if alpha == 0.0 || beta == 0.0 {
        return Err(Error::Domain("the product form needs nonzero exponents".into()));
    }
    let r = r_moment_asymptotic(1.0, 1, 0, alpha)?.value;
    let p = p_moment_asymptotic(1.0, 1, beta)?.value;
    let nf = n as f64;
    let coeff = r.powf(2.0 / alpha) * p.powf(2.0 / beta);
    Ok(AsymptoticValue::new(coeff * nf * nf, Remainder::Leading))
}

/// ⟨ln r⟩ + ⟨ln p⟩ against the central-potential bound ψ((2l+3)/4) + ln 2.
pub fn log_uncertainty_audit(state: &QuantumState, tol: impl Into<Tolerance>) -> Result<AuditRecord> {
    let tol = tol.into();
    let left = log_r_moment(state, tol)?.value + log_p_moment(state, tol)?.value;
    let bound = psi((2.0 * state.l() as f64 + 3.0) / 4.0) + LN_2;
    Ok(AuditRecord::lower_bound("log-sum-central", Some(*state), left, bound))
}

/// ⟨ln r⟩ + ⟨ln p⟩ against the general three-dimensional bound ψ(3/4) + ln 2.
pub fn log_sum_audit(state: &QuantumState, tol: impl Into<Tolerance>) -> Result<AuditRecord> {
    let tol = tol.into();
    let left = log_r_moment(state, tol)?.value + log_p_moment(state, tol)?.value;
    Ok(AuditRecord::lower_bound("log-sum", Some(*state), left, psi(0.75) + LN_2))
}

/// ⟨r²⟩⟨p²⟩ ≥ 9/4 with the closed-form second moments.
pub fn heisenberg_audit(state: &QuantumState) -> AuditRecord {
    AuditRecord::lower_bound("heisenberg", Some(*state), r2_exact(state) * p2_exact(state), 2.25)
}

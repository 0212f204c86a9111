//! Shannon entropies: direct quadrature, the exact polynomial decomposition,
//! and the Rydberg leading terms.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{LazyLock, Mutex};

use serde::{Deserialize, Serialize};

use crate::audit::AuditRecord;
use crate::error::{Error, Result};
use crate::moments::{AsymptoticValue, Remainder};
use crate::quadrature::{integrate_finite, integrate_semiinf, Panelization, QuadResult, Tolerance};
use crate::radial::{entropy_term, Angular};
use crate::specfun::gamma::{lgamma, psi, EULER_GAMMA, LN_SQRT_PI};
use crate::specfun::orthopoly::{PolyFamily, PolyKind};
use crate::states::{QuantumState, Space};

/// The entropic uncertainty bound 3(1 + ln π).
pub fn entropic_bound() -> f64 {
    3.0 * (1.0 + PI.ln())
}

type Key = (u32, u32, u8, u64, u64);

fn key(a: u32, b: u32, tag: u8, tol: Tolerance) -> Key {
    (a, b, tag, tol.abs.to_bits(), tol.rel.to_bits())
}

// Results depend only on the key, so racing writers store identical values.
static RADIAL_CACHE: LazyLock<Mutex<HashMap<Key, QuadResult>>> = LazyLock::new(Default::default);
static ANGULAR_CACHE: LazyLock<Mutex<HashMap<Key, QuadResult>>> = LazyLock::new(Default::default);

fn cached(cache: &Mutex<HashMap<Key, QuadResult>>, k: Key, f: impl FnOnce() -> Result<QuadResult>) -> Result<QuadResult> {
    if let Some(v) = cache.lock().expect("entropy cache poisoned").get(&k) {
        return Ok(v.clone());
    }
    let v = f()?;
    cache.lock().expect("entropy cache poisoned").insert(k, v.clone());
    Ok(v)
}

/// −∫ R ln R over the radial coordinate at Z = 1.
fn radial_entropy(state: &QuantumState, space: Space, tol: Tolerance) -> Result<QuadResult> {
    let tag = match space {
        Space::Position => 0,
        Space::Momentum => 1,
    };
    cached(&RADIAL_CACHE, key(state.n(), state.l(), tag, tol), || match space {
        Space::Position => {
            let rad = state.position_radial();
            rad.integrate(|x, lm| entropy_term(lm, rad.ln_density(x)), tol)
        }
        Space::Momentum => {
            let rad = state.momentum_radial();
            rad.integrate(|t, lm| entropy_term(lm, rad.ln_density(t)), tol)
        }
    })
}

/// S[ρ] or S[γ] by quadrature of the separated radial and polar factors.
pub fn shannon(state: &QuantumState, space: Space, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let tol = tol.into();
    let radial = radial_entropy(state, space, tol.scaled(0.5))?;
    let angular = angular_entropy(state.l(), state.m(), tol.scaled(0.5))?;
    Ok(radial.combine(1.0, &angular, 1.0).shift(z_term(state, space)))
}

fn z_term(state: &QuantumState, space: Space) -> f64 {
    match space {
        Space::Position => -3.0 * state.z().ln(),
        Space::Momentum => 3.0 * state.z().ln(),
    }
}

/// Constant A_{n,l} of the position decomposition.
#[allow(non_snake_case)]
pub fn A_coeff(n: u32, l: u32) -> f64 {
    let nf = n as f64;
    let lf = l as f64;
    -(4.0 / nf.powi(4)).ln() + (3.0 * nf * nf - lf * (lf + 1.0)) / nf
        - 2.0 * lf * ((2.0 * nf - 2.0 * lf - 1.0) / (2.0 * nf) + psi(nf + lf + 1.0))
}

/// Constant B_{n,l} of the momentum decomposition.
#[allow(non_snake_case)]
pub fn B_coeff(n: u32, l: u32) -> f64 {
    let nf = n as f64;
    let lf = l as f64;
    -(3.0 * nf.ln() - (2.0 * lf + 4.0) * LN_2) - (2.0 * lf + 4.0) * (psi(nf + lf + 1.0) - psi(nf))
        + (lf + 2.0) / nf
        - 4.0 * (1.0 - 2.0 * nf * (2.0 * lf + 1.0) / (4.0 * nf * nf - 1.0))
}

/// Power of x in an entropic integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntropicExponent {
    E0,
    E1,
}

impl EntropicExponent {
    fn power(&self) -> i32 {
        match self {
            EntropicExponent::E0 => 0,
            EntropicExponent::E1 => 1,
        }
    }
}

fn check_pairing(kind: PolyKind, k: EntropicExponent) -> Result<()> {
    match (kind, k) {
        (PolyKind::LaguerreOrthonormal, EntropicExponent::E1)
        | (PolyKind::GegenbauerOrthonormal, EntropicExponent::E0) => Ok(()),
        _ => Err(Error::Unsupported(format!("{k:?} is only defined here for the matching family, got {kind:?}"))),
    }
}

/// E_k[ỹ] = −∫ x^k ω(x) ỹ²(x) ln ỹ²(x) dx.
pub fn entropic_integral(family: &PolyFamily, k: EntropicExponent, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    check_pairing(family.kind, k)?;
    let roots = family.roots();
    let p = k.power() as f64;
    let f = |x: f64| {
        let lsq = family.ln_sq(x);
        let ln_mu = family.ln_weight(x) + lsq + if p == 0.0 { 0.0 } else { p * x.ln() };
        entropy_term(ln_mu, lsq)
    };
    match family.kind {
        PolyKind::LaguerreOrthonormal => {
            let a = family.parameter;
            let largest = roots.last().copied().unwrap_or(0.0);
            let mode = a + p + 1.0;
            let trunc = 2.0 * largest.max(mode) + 60.0;
            let panels = Panelization::new(roots.iter().copied().chain([mode, trunc]));
            integrate_semiinf(f, &panels, 1.0, tol)
        }
        PolyKind::GegenbauerOrthonormal => {
            let panels = Panelization::new(roots.iter().copied().chain([0.0])).with_end_grading(-1.0, 1.0, 6);
            integrate_finite(f, -1.0, 1.0, &panels, tol)
        }
    }
}

/// Leading terms of the entropic integrals for large degree n.
pub fn entropic_integral_asymptotic(
    kind: PolyKind,
    k: EntropicExponent,
    n: u32,
    alpha: f64,
) -> Result<AsymptoticValue> {
    check_pairing(kind, k)?;
    let nf = n as f64;
    Ok(match kind {
        PolyKind::LaguerreOrthonormal => AsymptoticValue::new(
            -6.0 * nf * nf + 2.0 * (alpha + 1.0) * nf * nf.ln() + 2.0 * nf * ((2.0 * PI).ln() - 2.0 * alpha - 4.0),
            Remainder::LittleON,
        ),
        PolyKind::GegenbauerOrthonormal => {
            AsymptoticValue::new(PI.ln() + (1.0 - 2.0 * alpha) * LN_2 - 1.0, Remainder::LittleO1)
        }
    })
}

fn check_lm(l: u32, m: i32) -> Result<u32> {
    let m_abs = m.unsigned_abs();
    if m_abs > l {
        return Err(Error::InvalidState(format!("|m| = {m_abs} exceeds l = {l}")));
    }
    Ok(m_abs)
}

/// D_{l,|m|}: the analytic part of the polar entropy.
pub fn angular_constant(l: u32, m_abs: u32) -> f64 {
    let lf = l as f64;
    let m = m_abs as f64;
    (2.0 * PI).ln() - 2.0 * m * (psi(lf + m + 1.0) - psi(lf + 0.5) - LN_2 - 1.0 / (2.0 * lf + 1.0))
}

/// S(Y_{l,m}) = D_{l,|m|} + E₀[C̃_{l−|m|}^{|m|+1/2}], cached per (l, |m|).
pub fn angular_entropy(l: u32, m: i32, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let m_abs = check_lm(l, m)?;
    let tol = tol.into();
    cached(&ANGULAR_CACHE, key(l, m_abs, 0, tol), || {
        let fam = PolyFamily::gegenbauer((l - m_abs) as usize, m_abs as f64 + 0.5)?;
        Ok(entropic_integral(&fam, EntropicExponent::E0, tol)?.shift(angular_constant(l, m_abs)))
    })
}

/// −∮ |Y|² ln |Y|² dΩ integrated directly, without the decomposition.
pub fn angular_entropy_direct(l: u32, m: i32, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let m_abs = check_lm(l, m)?;
    let ang = Angular::new(l, m_abs);
    ang.integrate(|x, lm| entropy_term(lm, ang.ln_density(x)), tol.into())
}

/// Closed forms of S(Y_{l,m}) for |m| = l and |m| = l − 1.
pub fn angular_entropy_closed(l: u32, m: i32) -> Result<f64> {
    let m_abs = check_lm(l, m)?;
    let lf = l as f64;
    if m_abs == l {
        Ok((2.0 * lf + 1.0) * LN_2 + 3.0 * LN_SQRT_PI + lgamma(lf + 1.0) - lgamma(lf + 1.5)
            - 2.0 * lf * (psi(2.0 * lf + 1.0) - psi(lf + 0.5) - 1.0 / (2.0 * lf + 1.0)))
    } else if m_abs + 1 == l {
        Ok(2.0 * lf * LN_2 + 3.0 * LN_SQRT_PI + lgamma(lf) - lgamma(lf + 1.5) - 2.0
            + EULER_GAMMA
            + psi(lf + 1.5)
            - 2.0 * (lf - 1.0) * (psi(2.0 * lf) - psi(lf + 0.5) - 1.0 / (2.0 * lf + 1.0)))
    } else {
        Err(Error::Unsupported(format!("no closed form for S(Y_{{{l},{m}}}); only |m| = l or l-1")))
    }
}

/// Families of large-l angular entropy expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngularKind {
    MEqL,
    MEqLMinus1,
    MEq0,
}

/// Large-l expansions of S(Y_{l,l}), S(Y_{l,l−1}) and S(Y_{l,0}).
pub fn angular_entropy_asymptotic(kind: AngularKind, l: u32) -> Result<AsymptoticValue> {
    if l == 0 {
        return Err(Error::Domain("angular expansions need l >= 1".into()));
    }
    let ln_l = (l as f64).ln();
    let ln_pi = PI.ln();
    Ok(match kind {
        AngularKind::MEqL => AsymptoticValue::new(LN_2 + 1.5 * ln_pi + 0.5 - 0.5 * ln_l, Remainder::BigOInvL),
        AngularKind::MEqLMinus1 => {
            AsymptoticValue::new(2.0 * LN_2 + 1.5 * ln_pi + EULER_GAMMA - 0.5 - 0.5 * ln_l, Remainder::BigOInvL)
        }
        AngularKind::MEq0 => AsymptoticValue::new(LN_2 + 2.0 * ln_pi - 1.0, Remainder::LittleO1),
    })
}

/// Rydberg leading terms of S[ρ] and S[γ] at fixed (l, m).
pub fn shannon_asymptotic(state: &QuantumState, space: Space, tol: impl Into<Tolerance>) -> Result<AsymptoticValue> {
    let s_y = angular_entropy(state.l(), state.m(), tol)?.value;
    Ok(AsymptoticValue::new(shannon_asymptotic_with(state.n(), state.z(), space, s_y), Remainder::LittleO1))
}

/// The same leading terms for a given S(Y_{l,m}).
pub fn shannon_asymptotic_with(n: u32, z: f64, space: Space, s_y: f64) -> f64 {
    let ln_n = (n as f64).ln();
    match space {
        Space::Position => 6.0 * ln_n - LN_2 + PI.ln() - 3.0 * z.ln() + s_y,
        Space::Momentum => -3.0 * ln_n + 3.0 * LN_2 + PI.ln() - 5.0 + 3.0 * z.ln() + s_y,
    }
}

/// The four parts of the exact entropy decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyBreakdown {
    /// A_{n,l} or B_{n,l}.
    pub coefficient: f64,
    /// E₁[L̃]/(2n) or E₀[C̃].
    pub polynomial_term: f64,
    pub angular: f64,
    pub z_term: f64,
    pub total: f64,
    pub abs_err: f64,
}

/// S = coefficient + polynomial term + S(Y) ∓ 3 ln Z.
pub fn shannon_breakdown(state: &QuantumState, space: Space, tol: impl Into<Tolerance>) -> Result<EntropyBreakdown> {
    let tol = tol.into();
    let (n, l) = (state.n(), state.l());
    let k = (n - l - 1) as usize;
    let (coefficient, poly) = match space {
        Space::Position => {
            let fam = PolyFamily::laguerre(k, (2 * l + 1) as f64)?;
            let e1 = entropic_integral(&fam, EntropicExponent::E1, tol.scaled(0.5 / n as f64))?;
            (A_coeff(n, l), e1.scale(1.0 / (2.0 * n as f64)))
        }
        Space::Momentum => {
            let fam = PolyFamily::gegenbauer(k, (l + 1) as f64)?;
            (B_coeff(n, l), entropic_integral(&fam, EntropicExponent::E0, tol.scaled(0.5))?)
        }
    };
    let angular = angular_entropy(l, state.m(), tol.scaled(0.5))?;
    let z = z_term(state, space);
    Ok(EntropyBreakdown {
        coefficient,
        polynomial_term: poly.value,
        angular: angular.value,
        z_term: z,
        total: coefficient + poly.value + angular.value + z,
        abs_err: poly.abs_err + angular.abs_err,
    })
}

/// S[ρ] + S[γ] ≥ 3(1 + ln π).
pub fn entropic_sum_audit(state: &QuantumState, tol: impl Into<Tolerance>) -> Result<AuditRecord> {
    let tol = tol.into();
    let left = shannon(state, Space::Position, tol)?.value + shannon(state, Space::Momentum, tol)?.value;
    Ok(AuditRecord::lower_bound("entropic-sum", Some(*state), left, entropic_bound()))
}
